#include <bit>

#include "steiner/errors.hpp"
#include "steiner/suzuki.hpp"

namespace steiner::suzuki {

namespace {

int degree_of(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

std::uint64_t gf2_mod(std::uint64_t a, std::uint64_t m) {
  const int dm = degree_of(m);
  for (int da = degree_of(a); da >= dm; da = degree_of(a)) a ^= m << (da - dm);
  return a;
}

std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t modulus, unsigned e) {
  std::uint64_t acc = 0;
  for (unsigned i = 0; i < e; ++i)
    if ((b >> i) & 1) acc ^= static_cast<std::uint64_t>(a) << i;
  return static_cast<std::uint32_t>(gf2_mod(acc, modulus));
}

}  // namespace

bool gf2_irreducible(std::uint32_t poly) {
  const int d = degree_of(poly);
  if (d < 1) return false;
  // Trial division by every polynomial of degree 1..d/2.
  for (std::uint64_t g = 2; degree_of(g) <= d / 2; ++g)
    if (gf2_mod(poly, g) == 0) return false;
  return true;
}

GF2e::GF2e(unsigned e) : e_(e) {
  if (e < 1 || e > 20) throw PreconditionError("field exponent must be in 1..20");
  q_ = Elt{1} << e;
  modulus_ = 0;
  for (std::uint32_t m = q_; m < 2 * q_; ++m) {
    if (gf2_irreducible(m)) {
      modulus_ = m;
      break;
    }
  }
  if (modulus_ == 0) throw SelfCheckFailure("no irreducible polynomial of degree " + std::to_string(e));

  const Elt n = q_ - 1;
  exp_.assign(2 * static_cast<std::size_t>(n), 0);
  log_.assign(q_, 0);
  for (Elt g = (q_ == 2 ? 1 : 2); g < q_; ++g) {
    Elt x = 1;
    std::uint32_t ord = 0;
    do {
      exp_[ord] = x;
      x = mul_mod(x, g, modulus_, e_);
      ++ord;
    } while (x != 1 && ord < n);
    if (x == 1 && ord == n) break;
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    exp_[i + n] = exp_[i];
    log_[exp_[i]] = i;
  }
  // Every nonzero element must occur once among the powers.
  for (Elt a = 1; a < q_; ++a)
    if (exp_[log_[a]] != a) throw SelfCheckFailure("no primitive element found");
}

GF2e::Elt GF2e::mul(Elt a, Elt b) const noexcept {
  if (a == 0 || b == 0) return 0;
  return exp_[log_[a] + log_[b]];
}

GF2e::Elt GF2e::inv(Elt a) const {
  if (a == 0) throw PreconditionError("zero has no inverse");
  const std::uint32_t n = q_ - 1;
  return exp_[(n - log_[a]) % n];
}

GF2e::Elt GF2e::pow(Elt a, std::uint64_t n) const noexcept {
  if (n == 0) return 1;
  if (a == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (n % (q_ - 1))) % (q_ - 1)];
}

GF2e::Elt GF2e::frobenius(Elt a, unsigned j) const noexcept {
  for (unsigned i = 0; i < j % e_; ++i) a = mul(a, a);
  return a;
}

}  // namespace steiner::suzuki
