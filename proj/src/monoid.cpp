#include "puiseux/monoid.hpp"

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>

#include "puiseux/error.hpp"
#include "puiseux/primes.hpp"

namespace puiseux {

namespace detail {

// Terms of a prime rule, generated on demand and cached. The cache only
// grows, under a mutex, so concurrent readers see identical prefixes.
class PrimeSequence {
 public:
  static constexpr std::size_t kMaxLength = 1'000'000;

  explicit PrimeSequence(PrimeRule rule) : rule_(std::move(rule)) {
    if (const auto* list = std::get_if<ExplicitList>(&rule_)) cache_ = list->primes;
  }

  std::optional<std::size_t> length() const {
    if (const auto* list = std::get_if<ExplicitList>(&rule_)) return list->primes.size();
    return std::nullopt;
  }

  std::uint64_t at(Position position) const {
    if (position == 0) throw DomainError("atom positions start at 1");
    if (auto len = length(); len && position > *len) {
      throw DomainError("position " + std::to_string(position) + " beyond the " +
                        std::to_string(*len) + "-term prime list");
    }
    std::lock_guard lock(mutex_);
    extend_locked([&] { return cache_.size() >= position; });
    return cache_[position - 1];
  }

  std::optional<Position> position_of(std::uint64_t p) const {
    if (!is_prime(p)) return std::nullopt;
    if (std::holds_alternative<OddPrimesAscending>(rule_) && p == 2) return std::nullopt;
    if (const auto* above = std::get_if<PrimesAbove>(&rule_); above && p <= above->bound) {
      return std::nullopt;
    }
    std::lock_guard lock(mutex_);
    if (std::holds_alternative<ExplicitList>(rule_)) {
      auto it = std::find(cache_.begin(), cache_.end(), p);
      if (it == cache_.end()) return std::nullopt;
      return static_cast<Position>(it - cache_.begin()) + 1;
    }
    extend_locked([&] { return !cache_.empty() && cache_.back() >= p; });
    auto it = std::lower_bound(cache_.begin(), cache_.end(), p);
    return static_cast<Position>(it - cache_.begin()) + 1;
  }

 private:
  template <typename Done>
  void extend_locked(Done done) const {
    while (!done()) {
      if (cache_.size() >= kMaxLength) {
        throw PrefixTooSmall("prime sequence cache limit of " + std::to_string(kMaxLength) +
                             " terms reached");
      }
      cache_.push_back(cache_.empty() ? first_term() : next_prime_after(cache_.back()));
    }
  }

  std::uint64_t first_term() const {
    return std::visit(
        [](const auto& r) -> std::uint64_t {
          using R = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<R, AllPrimesAscending>) return 2;
          else if constexpr (std::is_same_v<R, OddPrimesAscending>) return 3;
          else if constexpr (std::is_same_v<R, PrimesAbove>) return next_prime_after(r.bound);
          else throw DomainError("explicit prime list exhausted");
        },
        rule_);
  }

  PrimeRule rule_;
  mutable std::mutex mutex_;
  mutable std::vector<std::uint64_t> cache_;
};

}  // namespace detail

namespace {

Integer gcd_int(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

PosRational base_value_of(const BaseFamily& base, Position position) {
  if (const auto* cyc = std::get_if<CyclicList>(&base)) {
    return cyc->values[(position - 1) % cyc->values.size()];
  }
  const auto& ufg = std::get<UnitFractionGeometric>(base);
  Integer den;
  mpz_pow_ui(den.get_mpz_t(), to_integer(ufg.m).get_mpz_t(), position - 1);
  return PosRational(Integer(1), den);
}

Integer base_denominator_lcm(const BaseFamily& base) {
  if (const auto* cyc = std::get_if<CyclicList>(&base)) {
    Integer l = 1;
    for (const auto& v : cyc->values) {
      const Integer d = v.den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    return l;
  }
  return to_integer(std::get<UnitFractionGeometric>(base).m);
}

std::vector<PosRational> distinct_values(const CyclicList& cyc) {
  std::vector<PosRational> out = cyc.values;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Whether every prime factor of n divides m.
bool radical_divides(Integer n, const Integer& m) {
  for (;;) {
    const Integer g = gcd_int(n, m);
    if (g == 1) return n == 1;
    n /= g;
  }
}

void validate_fg(const FinitelyGeneratedPayload& fg) {
  if (fg.atoms.empty()) throw ValidationError("finitely generated spec needs at least one atom");
  std::vector<PosRational> atoms = fg.atoms;
  std::sort(atoms.begin(), atoms.end());
  if (atoms.front().is_zero()) throw ValidationError("atoms must be positive; got 0");
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    if (atoms[i] == atoms[i - 1]) {
      throw ValidationError("duplicate generator " + atoms[i].to_string());
    }
  }
  for (std::size_t i = 0; i < atoms.size() && atoms.size() > 1; ++i) {
    std::vector<PosRational> others;
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      if (j != i) others.push_back(atoms[j]);
    }
    if (ScaledGenerators(others).contains(atoms[i])) {
      throw ValidationError("generating set is not minimal: " + atoms[i].to_string() +
                            " is a sum of the other generators");
    }
  }
}

}  // namespace

FinitelyGeneratedPayload reduce_generators(std::vector<PosRational> gens) {
  if (gens.empty()) throw ValidationError("finitely generated spec needs at least one generator");
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  if (gens.front().is_zero()) throw ValidationError("generators must be positive; got 0");
  FinitelyGeneratedPayload out;
  for (const auto& g : gens) {
    if (!out.atoms.empty() && ScaledGenerators(out.atoms).contains(g)) out.dropped.push_back(g);
    else out.atoms.push_back(g);
  }
  return out;
}

namespace {

void validate_geometric(const GeometricPayload& g) {
  if (g.q.is_zero() || g.q.num() < 2 || g.q.den() < 2) {
    throw ValidationError("geometric ratio " + g.q.to_string() +
                          " must be a non-integer with non-integral inverse");
  }
}

void validate_atomized(const AtomizedPayload& a, std::size_t prefix) {
  if (const auto* cyc = std::get_if<CyclicList>(&a.base)) {
    if (cyc->values.empty()) throw ValidationError("cyclic base needs at least one value");
    for (const auto& v : cyc->values) {
      if (v.is_zero()) throw ValidationError("base values must be positive");
    }
  } else if (std::get<UnitFractionGeometric>(a.base).m < 2) {
    throw ValidationError("unit fraction base needs m >= 2");
  }
  std::size_t count = prefix;
  if (const auto* list = std::get_if<ExplicitList>(&a.primes)) {
    if (list->primes.empty()) throw ValidationError("explicit prime list is empty");
    for (std::size_t i = 0; i < list->primes.size(); ++i) {
      if (!is_prime(list->primes[i])) {
        throw ValidationError("explicit list entry " + std::to_string(list->primes[i]) +
                              " is not prime");
      }
      if (i > 0 && list->primes[i] <= list->primes[i - 1]) {
        throw ValidationError("explicit prime list must be strictly increasing (" +
                              std::to_string(list->primes[i - 1]) + ", " +
                              std::to_string(list->primes[i]) + ")");
      }
    }
    count = std::min(count, list->primes.size());
  } else if (const auto* above = std::get_if<PrimesAbove>(&a.primes); above && above->bound < 1) {
    throw ValidationError("primes_above needs a positive bound");
  }

  detail::PrimeSequence seq(a.primes);
  std::vector<std::uint64_t> primes;
  for (Position i = 1; i <= count; ++i) primes.push_back(seq.at(i));
  for (Position i = 1; i <= count; ++i) {
    const std::uint64_t p = primes[i - 1];
    const Integer pz = to_integer(p);
    const PosRational qi = base_value_of(a.base, i);
    if (gcd_int(pz, qi.num()) != 1) {
      std::ostringstream os;
      os << "gcd(p_" << i << ", n(q_" << i << ")) = " << gcd_int(pz, qi.num()) << " != 1 (p_"
         << i << " = " << p << ", q_" << i << " = " << qi << ")";
      throw ValidationError(os.str());
    }
    for (Position j = 1; j <= count; ++j) {
      const PosRational qj = base_value_of(a.base, j);
      if (gcd_int(pz, qj.den()) != 1) {
        std::ostringstream os;
        os << "gcd(p_" << i << ", d(q_" << j << ")) = " << gcd_int(pz, qj.den()) << " != 1 (p_"
           << i << " = " << p << ", q_" << j << " = " << qj << ")";
        throw ValidationError(os.str());
      }
    }
  }
}

}  // namespace

std::string to_string(Tristate t) {
  switch (t) {
    case Tristate::False: return "false";
    case Tristate::True: return "true";
    case Tristate::Unknown: break;
  }
  return "unknown";
}

void validate(const MonoidSpec& spec, std::size_t prefix) {
  if (spec.index_origin != 0 && spec.index_origin != 1) {
    throw ValidationError("index_origin must be 0 or 1");
  }
  std::visit(
      [&](const auto& payload) {
        using P = std::decay_t<decltype(payload)>;
        if constexpr (std::is_same_v<P, FinitelyGeneratedPayload>) validate_fg(payload);
        else if constexpr (std::is_same_v<P, GeometricPayload>) validate_geometric(payload);
        else validate_atomized(payload, prefix);
      },
      spec.payload);
}

Monoid::Monoid(MonoidSpec spec, std::size_t prefix) : spec_(std::move(spec)) {
  validate(spec_, prefix);
  if (auto* fg = std::get_if<FinitelyGeneratedPayload>(&spec_.payload)) {
    std::sort(fg->atoms.begin(), fg->atoms.end());
    fg_ = std::make_shared<const ScaledGenerators>(fg->atoms);
  } else if (const auto* at = std::get_if<AtomizedPayload>(&spec_.payload)) {
    primes_ = std::make_shared<detail::PrimeSequence>(at->primes);
    base_den_lcm_ = puiseux::base_denominator_lcm(at->base);
    if (const auto* cyc = std::get_if<CyclicList>(&at->base)) {
      cyclic_base_ = std::make_shared<const ScaledGenerators>(distinct_values(*cyc));
    }
  }
}

std::optional<std::size_t> Monoid::atom_count() const {
  switch (kind()) {
    case MonoidKind::FinitelyGenerated: return generators().size();
    case MonoidKind::Atomized: return primes_->length();
    case MonoidKind::Geometric: break;
  }
  return std::nullopt;
}

PosRational Monoid::atom(Position position) const {
  if (position == 0) throw DomainError("atom positions start at 1");
  switch (kind()) {
    case MonoidKind::FinitelyGenerated: {
      const auto& gens = generators();
      if (position > gens.size()) {
        throw DomainError("atom position " + std::to_string(position) + " out of range (" +
                          std::to_string(gens.size()) + " atoms)");
      }
      return gens[position - 1];
    }
    case MonoidKind::Atomized:
      return base_value(position).div_nat(to_integer(prime(position)));
    case MonoidKind::Geometric: {
      const PosRational& q = ratio();
      Integer n, d;
      mpz_pow_ui(n.get_mpz_t(), q.num().get_mpz_t(), position - 1);
      mpz_pow_ui(d.get_mpz_t(), q.den().get_mpz_t(), position - 1);
      return PosRational(n, d);
    }
  }
  throw DomainError("unknown monoid kind");
}

const std::vector<PosRational>& Monoid::generators() const {
  const auto* fg = std::get_if<FinitelyGeneratedPayload>(&spec_.payload);
  if (!fg) throw DomainError("operation needs a finitely generated monoid");
  return fg->atoms;
}

const ScaledGenerators& Monoid::scaled_generators() const {
  if (!fg_) throw DomainError("operation needs a finitely generated monoid");
  return *fg_;
}

const AtomizedPayload& Monoid::atomized() const {
  const auto* at = std::get_if<AtomizedPayload>(&spec_.payload);
  if (!at) throw DomainError("operation needs an atomized monoid");
  return *at;
}

PosRational Monoid::base_value(Position position) const {
  if (position == 0) throw DomainError("atom positions start at 1");
  return base_value_of(atomized().base, position);
}

std::uint64_t Monoid::prime(Position position) const {
  atomized();
  const std::uint64_t p = primes_->at(position);
  check_position(position, p);
  return p;
}

void Monoid::check_position(Position position, std::uint64_t p) const {
  const Integer pz = to_integer(p);
  const PosRational q = base_value(position);
  if (gcd_int(pz, q.num()) != 1 || gcd_int(pz, base_den_lcm_) != 1) {
    std::ostringstream os;
    os << "prime p_" << position << " = " << p << " violates the atomization gcd conditions"
       << " against q_" << position << " = " << q;
    throw ValidationError(os.str());
  }
}

std::optional<Position> Monoid::position_of_prime(std::uint64_t p) const {
  atomized();
  return primes_->position_of(p);
}

const PosRational& Monoid::ratio() const {
  const auto* g = std::get_if<GeometricPayload>(&spec_.payload);
  if (!g) throw DomainError("operation needs a geometric monoid");
  return g->q;
}

PosRational atom(const Monoid& monoid, Position n) { return monoid.atom(n); }

std::vector<WindowAtom> atoms_up_to_value(const Monoid& monoid, const PosRational& bound,
                                          std::size_t truncation) {
  std::size_t count = truncation;
  if (monoid.kind() == MonoidKind::FinitelyGenerated) {
    count = monoid.generators().size();
  } else if (auto n = monoid.atom_count()) {
    count = std::min(count, *n);
  }
  std::vector<WindowAtom> out;
  out.reserve(count);
  for (Position i = 1; i <= count; ++i) {
    PosRational a = monoid.atom(i);
    const bool exceeds = a > bound;
    out.push_back({i, std::move(a), exceeds});
  }
  return out;
}

bool base_member(const Monoid& monoid, const PosRational& x) {
  const auto& at = monoid.atomized();
  if (x.is_zero()) return true;
  if (const auto* base = monoid.cyclic_base()) return base->contains(x);
  return radical_divides(x.den(), to_integer(std::get<UnitFractionGeometric>(at.base).m));
}

BaseProperties base_properties(const Monoid& monoid) {
  const auto& at = monoid.atomized();
  if (std::holds_alternative<UnitFractionGeometric>(at.base)) {
    // q_n = m * q_{n+1}: no atoms, and any two elements differ by an
    // element whose denominator divides a power of m.
    return {Tristate::True, Tristate::True};
  }
  const auto values = distinct_values(std::get<CyclicList>(at.base));
  BaseProperties props{Tristate::False, Tristate::True};
  for (std::size_t i = 0; i < values.size() && props.valuation == Tristate::True; ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      // values[i] < values[j], so only values[i] | values[j] is possible.
      if (!base_member(monoid, *sub_checked(values[j], values[i]))) {
        props.valuation = Tristate::False;
        break;
      }
    }
  }
  return props;
}

std::optional<Position> base_position_of_value(const Monoid& monoid, const PosRational& q) {
  const auto& at = monoid.atomized();
  std::optional<Position> pos;
  if (const auto* cyc = std::get_if<CyclicList>(&at.base)) {
    auto it = std::find(cyc->values.begin(), cyc->values.end(), q);
    if (it != cyc->values.end()) pos = static_cast<Position>(it - cyc->values.begin()) + 1;
  } else if (!q.is_zero() && q.num() == 1) {
    const Integer m = to_integer(std::get<UnitFractionGeometric>(at.base).m);
    Integer d = q.den();
    Position k = 1;
    while (mpz_divisible_p(d.get_mpz_t(), m.get_mpz_t())) {
      d /= m;
      ++k;
    }
    if (d == 1) pos = k;
  }
  if (pos) {
    if (auto n = monoid.atom_count(); n && *pos > *n) return std::nullopt;
  }
  return pos;
}

std::optional<Position> next_position_with_same_value(const Monoid& monoid, Position j) {
  const auto& at = monoid.atomized();
  const auto* cyc = std::get_if<CyclicList>(&at.base);
  if (!cyc) return std::nullopt;
  const PosRational q = monoid.base_value(j);
  for (Position k = j + 1; k <= j + cyc->values.size(); ++k) {
    if (auto n = monoid.atom_count(); n && k > *n) return std::nullopt;
    if (monoid.base_value(k) == q) return k;
  }
  return std::nullopt;
}

MonoidSpec construct_prop44(std::uint64_t b) {
  if (b < 1) throw DomainError("construct_prop44 needs b >= 1");
  CyclicList base;
  for (std::uint64_t r = 1; r <= b; ++r) base.values.emplace_back(r);
  MonoidSpec spec{AtomizedPayload{std::move(base), PrimesAbove{b}}, 1};
  validate(spec, kDefaultPrefix);
  return spec;
}

MonoidSpec construct_grams() {
  MonoidSpec spec{AtomizedPayload{UnitFractionGeometric{2}, OddPrimesAscending{}}, 0};
  validate(spec, kDefaultPrefix);
  return spec;
}

MonoidSpec construct_reciprocal() {
  MonoidSpec spec{AtomizedPayload{CyclicList{{PosRational(1)}}, AllPrimesAscending{}}, 1};
  validate(spec, kDefaultPrefix);
  return spec;
}

MonoidSpec construct_geometric(const PosRational& q) {
  MonoidSpec spec{GeometricPayload{q}, 0};
  try {
    validate(spec, kDefaultPrefix);
  } catch (const ValidationError& e) {
    throw DomainError(e.what());
  }
  return spec;
}

}  // namespace puiseux
