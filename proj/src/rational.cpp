#include "puiseux/rational.hpp"

#include <algorithm>

#include "puiseux/error.hpp"
#include "puiseux/primes.hpp"

namespace puiseux {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

Integer to_integer(std::uint64_t n) {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(n), 0, 0, &n);
  return z;
}

std::uint64_t to_u64(const Integer& n) {
  if (sgn(n) < 0 || mpz_sizeinbase(n.get_mpz_t(), 2) > 64) {
    throw DomainError("integer " + n.get_str() + " does not fit in 64 bits");
  }
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, n.get_mpz_t());
  return out;
}

PosRational::PosRational(const Integer& num, const Integer& den) {
  if (sgn(den) == 0) throw DomainError("rational with zero denominator");
  if (sgn(num) < 0 || sgn(den) < 0) {
    throw DomainError("negative values are not elements of a Puiseux monoid");
  }
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

PosRational::PosRational(std::uint64_t n) : value_(to_integer(n)) {}

PosRational PosRational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num_text = text.substr(0, slash);
  const std::string_view den_text =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!all_digits(num_text) || !all_digits(den_text)) {
    throw DomainError("malformed rational '" + std::string(text) + "'");
  }
  return PosRational(Integer(std::string(num_text), 10),
                     Integer(std::string(den_text), 10));
}

std::string PosRational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

PosRational PosRational::mul_nat(const Integer& k) const {
  if (sgn(k) < 0) throw DomainError("mul_nat by a negative integer");
  mpq_class r = value_ * mpq_class(k);
  r.canonicalize();
  return PosRational(std::move(r));
}

PosRational PosRational::div_nat(const Integer& k) const {
  if (sgn(k) <= 0) throw DomainError("div_nat by a nonpositive integer");
  mpq_class r = value_ / mpq_class(k);
  r.canonicalize();
  return PosRational(std::move(r));
}

PosRational operator+(const PosRational& a, const PosRational& b) {
  mpq_class r = a.value_ + b.value_;
  r.canonicalize();
  return PosRational(std::move(r));
}

PosRational operator*(const PosRational& a, const PosRational& b) {
  mpq_class r = a.value_ * b.value_;
  r.canonicalize();
  return PosRational(std::move(r));
}

PosRational& PosRational::operator+=(const PosRational& other) {
  value_ += other.value_;
  value_.canonicalize();
  return *this;
}

std::ostream& operator<<(std::ostream& os, const PosRational& q) {
  return os << q.to_string();
}

PosRational make_rational(const Integer& num, const Integer& den) {
  return PosRational(num, den);
}

PosRational add(const PosRational& a, const PosRational& b) { return a + b; }

std::optional<PosRational> sub_checked(const PosRational& a, const PosRational& b) {
  if (a < b) return std::nullopt;
  mpq_class r = a.value_ - b.value_;
  r.canonicalize();
  return PosRational(std::move(r));
}

PosRational mul_nat(const PosRational& a, const Integer& k) { return a.mul_nat(k); }

std::strong_ordering compare(const PosRational& a, const PosRational& b) { return a <=> b; }

Integer floor_div(const PosRational& a, const PosRational& b) {
  if (b.is_zero()) throw DomainError("floor_div by zero");
  Integer n = a.num() * b.den();
  Integer d = a.den() * b.num();
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

std::string Valuation::to_string() const {
  return infinite ? std::string("inf") : std::to_string(value);
}

std::int64_t valuation(const Integer& n, std::uint64_t p) {
  if (sgn(n) <= 0) throw DomainError("valuation of a nonpositive integer");
  const Integer prime = to_integer(p);
  Integer rest;
  return static_cast<std::int64_t>(
      mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

Valuation valuation(const PosRational& q, std::uint64_t p) {
  if (!is_prime(p)) throw DomainError("v_p requires a prime, got " + std::to_string(p));
  if (q.is_zero()) return Valuation::infinity();
  return Valuation::of(valuation(q.num(), p) - valuation(q.den(), p));
}

}  // namespace puiseux

std::size_t std::hash<puiseux::PosRational>::operator()(
    const puiseux::PosRational& q) const noexcept {
  const std::size_t h1 = mpz_get_ui(q.value().get_num_mpz_t());
  const std::size_t h2 = mpz_get_ui(q.value().get_den_mpz_t());
  return h1 * 0x9e3779b97f4a7c15ULL ^ (h2 + (h1 << 6) + (h1 >> 2));
}
