#include "puiseux/factorization.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "puiseux/error.hpp"
#include "puiseux/primes.hpp"

namespace puiseux {

namespace {

Multiplicity to_multiplicity(const Integer& n) {
  if (sgn(n) < 0 || !mpz_fits_ulong_p(n.get_mpz_t())) {
    throw DomainError("multiplicity " + n.get_str() + " exceeds the enumeration range");
  }
  return mpz_get_ui(n.get_mpz_t());
}

bool divides(const Integer& d, const Integer& n) {
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

// The unique c in [0, p) with v_p(target - c * q/p) >= 0, given v_p(target)
// = -1. Writing target = A/(p B') and q = u/w, this is
// c = A w (u B')^{-1} mod p.
Multiplicity clearing_residue(const PosRational& target, const PosRational& base_value,
                              std::uint64_t p) {
  const Integer pz = to_integer(p);
  const Integer a = target.num();
  const Integer b_rest = target.den() / pz;
  Integer lhs = (a * base_value.den()) % pz;
  Integer rhs = (base_value.num() * b_rest) % pz;
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), rhs.get_mpz_t(), pz.get_mpz_t()) == 0) {
    throw DomainError("atomization gcd conditions violated at prime " + std::to_string(p));
  }
  Integer c = (lhs * inv) % pz;
  if (sgn(c) < 0) c += pz;
  return mpz_get_ui(c.get_mpz_t());
}

// Solutions of sum c_k q^k = target over powers 0..top, deepest power
// first. After fixing the coefficients of powers > e the residual must have
// denominator dividing d(q)^e, which is the only pruning needed.
class GeometricSearch {
 public:
  GeometricSearch(const PosRational& q, std::size_t powers) : atoms_(powers), den_pow_(powers) {
    Integer n = 1, d = 1;
    for (std::size_t k = 0; k < powers; ++k) {
      atoms_[k] = PosRational(n, d);
      den_pow_[k] = d;
      n *= q.num();
      d *= q.den();
    }
  }

  // Visits each solution; stops early when visit returns false.
  void run(const PosRational& target, const std::function<bool(const Factorization&)>& visit) {
    visit_ = &visit;
    stop_ = false;
    coeffs_.assign(atoms_.size(), 0);
    if (atoms_.empty()) return;
    if (!divides(target.den(), den_pow_.back())) return;
    descend(atoms_.size() - 1, target);
  }

 private:
  void descend(std::size_t power, const PosRational& residual) {
    if (stop_) return;
    if (power == 0) {
      if (!residual.is_integer()) return;
      coeffs_[0] = to_multiplicity(residual.num());
      emit();
      coeffs_[0] = 0;
      return;
    }
    const Integer top = floor_div(residual, atoms_[power]);
    const Multiplicity limit = to_multiplicity(top);
    for (Multiplicity c = 0; c <= limit && !stop_; ++c) {
      const auto rest = sub_checked(residual, atoms_[power].mul_nat(to_integer(c)));
      if (!rest) break;
      if (!divides(rest->den(), den_pow_[power - 1])) continue;
      coeffs_[power] = c;
      descend(power - 1, *rest);
    }
    coeffs_[power] = 0;
  }

  void emit() {
    std::vector<Factorization::Term> terms;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (coeffs_[k] != 0) terms.emplace_back(k + 1, coeffs_[k]);
    }
    if (!(*visit_)(Factorization(std::move(terms)))) stop_ = true;
  }

  std::vector<PosRational> atoms_;
  std::vector<Integer> den_pow_;
  std::vector<Multiplicity> coeffs_;
  const std::function<bool(const Factorization&)>* visit_ = nullptr;
  bool stop_ = false;
};

// Number of powers q^k (k >= 0) not exceeding target, for q > 1.
std::size_t powers_up_to(const PosRational& q, const PosRational& target) {
  std::size_t count = 0;
  PosRational power(1);
  while (power <= target) {
    ++count;
    power = power * q;
  }
  return count;
}

FactorizationSet single_zero(const Monoid& monoid, std::size_t truncation) {
  return FactorizationSet(monoid, PosRational(), {Factorization()}, Completeness::Exact,
                          truncation);
}

}  // namespace

Factorization::Factorization(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end());
  for (const auto& [pos, mult] : terms) {
    if (pos == 0) throw DomainError("atom positions start at 1");
    if (mult == 0) continue;
    if (!terms_.empty() && terms_.back().first == pos) {
      terms_.back().second += mult;
    } else {
      terms_.emplace_back(pos, mult);
    }
  }
}

Factorization Factorization::single(Position position, Multiplicity count) {
  return Factorization({{position, count}});
}

Multiplicity Factorization::multiplicity(Position position) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), position,
                             [](const Term& t, Position p) { return t.first < p; });
  return it != terms_.end() && it->first == position ? it->second : 0;
}

Multiplicity Factorization::length() const {
  return std::accumulate(terms_.begin(), terms_.end(), Multiplicity{0},
                         [](Multiplicity acc, const Term& t) { return acc + t.second; });
}

Factorization Factorization::operator+(const Factorization& other) const {
  std::vector<Term> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return Factorization(std::move(all));
}

std::optional<Factorization> Factorization::minus(const Factorization& other) const {
  std::vector<Term> out = terms_;
  for (const auto& [pos, mult] : other.terms_) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Term& t) { return t.first == pos; });
    if (it == out.end() || it->second < mult) return std::nullopt;
    it->second -= mult;
  }
  return Factorization(std::move(out));
}

Factorization gcd_fact(const Factorization& a, const Factorization& b) {
  std::vector<Factorization::Term> out;
  auto ia = a.terms().begin(), ib = b.terms().begin();
  while (ia != a.terms().end() && ib != b.terms().end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      out.emplace_back(ia->first, std::min(ia->second, ib->second));
      ++ia;
      ++ib;
    }
  }
  return Factorization(std::move(out));
}

bool shares_atom(const Factorization& a, const Factorization& b) {
  auto ia = a.terms().begin(), ib = b.terms().begin();
  while (ia != a.terms().end() && ib != b.terms().end()) {
    if (ia->first == ib->first) return true;
    if (ia->first < ib->first) ++ia;
    else ++ib;
  }
  return false;
}

Multiplicity distance(const Factorization& a, const Factorization& b) {
  const Multiplicity common = gcd_fact(a, b).length();
  return std::max(a.length() - common, b.length() - common);
}

PosRational evaluate(const Monoid& monoid, const Factorization& z) {
  PosRational total;
  for (const auto& [pos, mult] : z.terms()) total += monoid.atom(pos).mul_nat(to_integer(mult));
  return total;
}

std::string to_string(Completeness c) {
  return c == Completeness::Exact ? "exact" : "up_to_truncation";
}

FactorizationSet::FactorizationSet(const Monoid& monoid, PosRational element,
                                   std::vector<Factorization> members, Completeness completeness,
                                   std::size_t truncation)
    : element_(std::move(element)),
      members_(std::move(members)),
      completeness_(completeness),
      truncation_(truncation) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw std::logic_error("duplicate factorization in set of " + element_.to_string());
  }
  for (const auto& z : members_) {
    if (evaluate(monoid, z) != element_) {
      throw std::logic_error("factorization does not evaluate to " + element_.to_string());
    }
  }
}

PosRational CanonicalDecomposition::reassemble(const Monoid& monoid) const {
  PosRational total = n_q;
  for (const auto& [pos, c] : fractional) total += monoid.atom(pos).mul_nat(to_integer(c));
  return total;
}

FactorizationSet enumerate_fg(const Monoid& monoid, const PosRational& target) {
  const auto& scaled = monoid.scaled_generators();
  const std::size_t count = monoid.generators().size();
  if (target.is_zero()) return single_zero(monoid, count);
  std::vector<Factorization> members;
  if (const auto n = scaled.to_scaled(target)) {
    for (const auto& coeffs : scaled.knapsack().solutions(*n)) {
      std::vector<Factorization::Term> terms;
      for (std::size_t i = 0; i < coeffs.size(); ++i) terms.emplace_back(i + 1, coeffs[i]);
      members.emplace_back(std::move(terms));
    }
  }
  return FactorizationSet(monoid, target, std::move(members), Completeness::Exact, count);
}

FactorizationSet enumerate_atomized(const Monoid& monoid, const PosRational& target,
                                    std::size_t truncation) {
  monoid.atomized();
  if (target.is_zero()) return single_zero(monoid, truncation);
  std::size_t count = truncation;
  const auto finite = monoid.atom_count();
  if (finite) count = std::min(count, *finite);

  for (const auto& [p, e] : factor_denominator(target)) {
    if (const auto pos = monoid.position_of_prime(p); pos && *pos > count) {
      throw TruncationTooSmall("atom at position " + std::to_string(*pos) + " (prime " +
                               std::to_string(p) + ") is forced in every factorization of " +
                               target.to_string() + " but lies beyond truncation " +
                               std::to_string(count));
    }
  }

  struct Slot {
    PosRational atom;
    Multiplicity prime;
    Multiplicity residue;
  };
  std::vector<Slot> slots;
  bool infeasible = false;
  for (Position pos = 1; pos <= count; ++pos) {
    const std::uint64_t p = monoid.prime(pos);
    const Valuation v = valuation(target, p);
    Multiplicity residue = 0;
    if (v.value < -1) {
      infeasible = true;  // every atom has p-adic valuation >= -1
    } else if (v.value == -1) {
      residue = clearing_residue(target, monoid.base_value(pos), p);
    }
    slots.push_back({monoid.atom(pos), p, residue});
  }

  Completeness completeness = Completeness::UpToTruncation;
  if (finite && count >= *finite) {
    completeness = Completeness::Exact;
  } else if (const auto* cyc = std::get_if<CyclicList>(&monoid.atomized().base)) {
    // Beyond the window only multiples of p_n copies can occur, each
    // contributing at least q_n; exact when every later q_n exceeds target.
    const std::size_t last = finite ? *finite : count + cyc->values.size();
    bool all_exceed = true;
    for (Position pos = count + 1; pos <= last; ++pos) {
      if (monoid.base_value(pos) <= target) all_exceed = false;
    }
    if (all_exceed) completeness = Completeness::Exact;
  }

  std::vector<Factorization> members;
  if (!infeasible) {
    std::vector<PosRational> mandatory(count + 1);
    std::vector<Integer> den_lcm(count + 1, Integer(1));
    for (std::size_t i = count; i-- > 0;) {
      mandatory[i] = mandatory[i + 1] + slots[i].atom.mul_nat(to_integer(slots[i].residue));
      const Integer d = slots[i].atom.den();
      mpz_lcm(den_lcm[i].get_mpz_t(), den_lcm[i + 1].get_mpz_t(), d.get_mpz_t());
    }
    std::vector<Multiplicity> coeffs(count, 0);
    std::function<void(std::size_t, const PosRational&)> descend =
        [&](std::size_t level, const PosRational& residual) {
          if (level == count) {
            if (!residual.is_zero()) return;
            std::vector<Factorization::Term> terms;
            for (std::size_t i = 0; i < count; ++i) terms.emplace_back(i + 1, coeffs[i]);
            members.emplace_back(std::move(terms));
            return;
          }
          if (residual < mandatory[level] || !divides(residual.den(), den_lcm[level])) return;
          const Slot& s = slots[level];
          const Multiplicity limit = to_multiplicity(floor_div(residual, s.atom));
          for (Multiplicity c = s.residue; c <= limit; c += s.prime) {
            auto rest = sub_checked(residual, s.atom.mul_nat(to_integer(c)));
            if (!rest || *rest < mandatory[level + 1]) break;
            coeffs[level] = c;
            descend(level + 1, *rest);
          }
          coeffs[level] = 0;
        };
    descend(0, target);
  }
  return FactorizationSet(monoid, target, std::move(members), completeness, count);
}

FactorizationSet enumerate_geometric(const Monoid& monoid, const PosRational& target,
                                     std::size_t truncation) {
  const PosRational& q = monoid.ratio();
  if (target.is_zero()) return single_zero(monoid, truncation);
  const bool above_one = q > PosRational(1);
  const std::size_t powers = above_one ? powers_up_to(q, target) : truncation;
  std::vector<Factorization> members;
  GeometricSearch search(q, powers);
  search.run(target, [&](const Factorization& z) {
    members.push_back(z);
    return true;
  });
  return FactorizationSet(monoid, target, std::move(members),
                          above_one ? Completeness::Exact : Completeness::UpToTruncation,
                          powers);
}

FactorizationSet enumerate(const Monoid& monoid, const PosRational& target,
                           std::size_t truncation) {
  switch (monoid.kind()) {
    case MonoidKind::FinitelyGenerated: return enumerate_fg(monoid, target);
    case MonoidKind::Atomized: return enumerate_atomized(monoid, target, truncation);
    case MonoidKind::Geometric: return enumerate_geometric(monoid, target, truncation);
  }
  throw DomainError("unknown monoid kind");
}

std::optional<CanonicalDecomposition> canonical_decomposition(const Monoid& monoid,
                                                              const PosRational& q) {
  monoid.atomized();
  CanonicalDecomposition out;
  if (q.is_zero()) return out;
  PosRational rest = q;
  for (const auto& [p, e] : factor_denominator(q)) {
    const auto pos = monoid.position_of_prime(p);
    if (!pos) continue;
    if (e > 1) return std::nullopt;
    const Multiplicity c = clearing_residue(q, monoid.base_value(*pos), p);
    auto next = sub_checked(rest, monoid.atom(*pos).mul_nat(to_integer(c)));
    if (!next) return std::nullopt;
    rest = std::move(*next);
    out.fractional.emplace_back(*pos, c);
  }
  std::sort(out.fractional.begin(), out.fractional.end());
  if (!rest.is_zero()) {
    for (const auto& [p, e] : factor_denominator(rest)) {
      if (monoid.position_of_prime(p)) return std::nullopt;
    }
  }
  if (!base_member(monoid, rest)) return std::nullopt;
  out.n_q = std::move(rest);
  return out;
}

bool member(const Monoid& monoid, const PosRational& q) {
  if (q.is_zero()) return true;
  switch (monoid.kind()) {
    case MonoidKind::FinitelyGenerated:
      return monoid.scaled_generators().contains(q);
    case MonoidKind::Atomized:
      return canonical_decomposition(monoid, q).has_value();
    case MonoidKind::Geometric:
      break;
  }
  const PosRational& ratio = monoid.ratio();
  if (ratio > PosRational(1)) {
    bool found = false;
    GeometricSearch search(ratio, powers_up_to(ratio, q));
    search.run(q, [&](const Factorization&) {
      found = true;
      return false;
    });
    return found;
  }
  // For q = a/b < 1, b copies of q^(k+1) trade for a copies of q^k, so
  // every member has a unique representation with c_k < b for k >= 1. Its
  // top power K is the least k with d(x) | b^k, and reducing
  // x * b^K mod b determines each digit from the top down.
  const Integer a = ratio.num(), b = ratio.den();
  {
    Integer d = q.den();
    for (Integer g = b; g != 1;) {
      mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), b.get_mpz_t());
      d /= g;
    }
    if (d != 1) return false;
  }
  Integer scaled_den = 1;
  std::size_t top = 0;
  while (!divides(q.den(), scaled_den)) {
    scaled_den *= b;
    ++top;
  }
  Integer x = q.num() * (scaled_den / q.den());
  for (std::size_t k = top; k >= 1; --k) {
    Integer ak;
    mpz_pow_ui(ak.get_mpz_t(), a.get_mpz_t(), k);
    Integer inv;
    Integer ak_mod = ak % b;
    mpz_invert(inv.get_mpz_t(), ak_mod.get_mpz_t(), b.get_mpz_t());
    Integer digit = (x % b) * inv % b;
    x -= digit * ak;
    if (sgn(x) < 0) return false;
    x /= b;
  }
  return true;
}

}  // namespace puiseux
