#include "steiner/qpoly.hpp"

#include <algorithm>
#include <utility>

#include "steiner/errors.hpp"

namespace steiner::polycert {

QPoly::QPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  canonicalize();
}

void QPoly::canonicalize() {
  for (auto& c : coeffs_) c.canonicalize();
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();

  denominator_lcm_ = 1;
  for (const auto& c : coeffs_) mpz_lcm(denominator_lcm_.get_mpz_t(), denominator_lcm_.get_mpz_t(), c.get_den_mpz_t());
  cleared_.clear();
  cleared_.reserve(coeffs_.size());
  for (const auto& c : coeffs_) cleared_.push_back(c.get_num() * (denominator_lcm_ / c.get_den()));
}

QPoly QPoly::constant(const Rational& c) { return QPoly(std::vector<Rational>{c}); }

QPoly QPoly::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> coeffs(degree + 1, Rational(0));
  coeffs[degree] = c;
  return QPoly(std::move(coeffs));
}

QPoly QPoly::indeterminate() { return monomial(1, 1); }

Rational QPoly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

const Rational& QPoly::leading() const {
  if (coeffs_.empty()) throw PreconditionError("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

QPoly QPoly::pow(unsigned exponent) const {
  QPoly result = constant(1);
  QPoly base = *this;
  while (exponent) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

QPoly QPoly::operator-() const {
  std::vector<Rational> out(coeffs_);
  for (auto& c : out) c = -c;
  return QPoly(std::move(out));
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<Rational> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
  return QPoly(std::move(out));
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + (-b); }

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return QPoly(std::move(out));
}

QPoly operator*(const Rational& c, const QPoly& p) {
  std::vector<Rational> out(p.coeffs_);
  for (auto& x : out) x *= c;
  return QPoly(std::move(out));
}

bool operator==(const QPoly& a, const QPoly& b) { return a.coeffs_ == b.coeffs_; }

DivMod divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  if (a.degree() < b.degree()) return {QPoly{}, a};

  std::vector<Rational> rem(a.coeffs());
  const int db = b.degree();
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  const Rational lead_inv = 1 / b.leading();
  for (int i = a.degree(); i >= db; --i) {
    const Rational factor = rem[i] * lead_inv;
    if (factor == 0) continue;
    quo[i - db] = factor;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= factor * b.coeffs()[j];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

Rational poly_eval(const QPoly& p, const Integer& x) {
  const auto& c = p.cleared_coeffs();
  Integer acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  Rational out(acc, p.denominator_lcm());
  out.canonicalize();
  return out;
}

Integer poly_eval_integer(const QPoly& p, const Integer& x) {
  const auto& c = p.cleared_coeffs();
  Integer acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  if (p.denominator_lcm() == 1) return acc;
  if (!mpz_divisible_p(acc.get_mpz_t(), p.denominator_lcm().get_mpz_t()))
    throw PreconditionError("polynomial value is not an integer");
  Integer out;
  mpz_divexact(out.get_mpz_t(), acc.get_mpz_t(), p.denominator_lcm().get_mpz_t());
  return out;
}

Integer poly_cauchy_root_bound(const QPoly& p) {
  if (p.is_zero()) throw PreconditionError("root bound of the zero polynomial");
  Rational max_ratio = 0;
  const Rational lead = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = abs(p.coeffs()[i]) / lead;
    if (r > max_ratio) max_ratio = r;
  }
  Rational bound = 1 + max_ratio;
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
  return out;
}

namespace {

QPoly derivative(const QPoly& p) {
  if (p.degree() < 1) return {};
  std::vector<Rational> out(static_cast<std::size_t>(p.degree()));
  for (int i = 1; i <= p.degree(); ++i) out[i - 1] = p.coeffs()[i] * i;
  return QPoly(std::move(out));
}

int sign_at(const QPoly& p, const Integer& x) {
  const auto& c = p.cleared_coeffs();
  Integer acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return sgn(acc);
}

std::size_t sign_changes(const std::vector<int>& signs) {
  std::size_t changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

std::vector<QPoly> sturm_sequence(const QPoly& p) {
  std::vector<QPoly> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p);
  QPoly next = derivative(p);
  while (!next.is_zero()) {
    seq.push_back(next);
    QPoly rem = divmod(seq[seq.size() - 2], seq.back()).remainder;
    next = -rem;
  }
  return seq;
}

std::size_t count_roots_above(const std::vector<QPoly>& sturm, const Integer& x) {
  if (sturm.empty()) throw PreconditionError("Sturm chain of the zero polynomial");
  std::vector<int> at_x, at_inf;
  at_x.reserve(sturm.size());
  at_inf.reserve(sturm.size());
  for (const auto& s : sturm) {
    at_x.push_back(sign_at(s, x));
    at_inf.push_back(sgn(s.leading()));
  }
  if (at_x.front() == 0) throw PreconditionError("Sturm count at a root");
  return sign_changes(at_x) - sign_changes(at_inf);
}

}  // namespace steiner::polycert
