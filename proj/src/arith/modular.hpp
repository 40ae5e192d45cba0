#pragma once

// Internal helpers shared by the factoring kernels.

#include <cstdint>
#include <utility>

#include "steiner/arith.hpp"
#include "steiner/errors.hpp"

namespace steiner::arith::detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Iteration budget shared by every factoring kernel in one factorize() call.
class WorkBudget {
 public:
  explicit WorkBudget(u64 limit) : remaining_(limit) {}
  void spend(u64 steps) {
    if (steps > remaining_) throw FactorBudgetExceeded("factorization iteration budget exhausted");
    remaining_ -= steps;
  }

 private:
  u64 remaining_;
};

// Montgomery arithmetic modulo an odd n < 2^128 with R = 2^128.
class Mont128 {
 public:
  explicit Mont128(u128 n) : n_(n) {
    u128 inv = n;
    for (int i = 0; i < 7; ++i) inv *= 2 - n * inv;
    neg_inv_ = -inv;
    // R mod n, then doubled 128 times to R^2 mod n.
    r2_ = (-n) % n;
    for (int i = 0; i < 128; ++i) r2_ = add(r2_, r2_);
  }

  u128 modulus() const { return n_; }

  /// x * R mod n.
  u128 to_mont(u128 x) const { return mul(x % n_, r2_); }

  u128 add(u128 a, u128 b) const {
    u128 s = a + b;
    return (s < a || s >= n_) ? s - n_ : s;
  }

  u128 sub(u128 a, u128 b) const { return a >= b ? a - b : a + (n_ - b); }

  u128 mul(u128 a, u128 b) const {
    u128 hi, lo;
    mul_full(a, b, hi, lo);
    const u128 m = lo * neg_inv_;
    u128 mhi, mlo;
    mul_full(m, n_, mhi, mlo);
    // (a*b + m*n) / R < 2n; a carry out of 256 bits means t >= R > n.
    const u128 sum_lo = lo + mlo;
    const u128 t1 = hi + mhi;
    const u128 t = t1 + (sum_lo < lo ? 1 : 0);
    const bool carry = t1 < hi || t < t1;
    return (carry || t >= n_) ? t - n_ : t;
  }

 private:
  static void mul_full(u128 a, u128 b, u128& hi, u128& lo) {
    const u64 a0 = static_cast<u64>(a), a1 = static_cast<u64>(a >> 64);
    const u64 b0 = static_cast<u64>(b), b1 = static_cast<u64>(b >> 64);
    const u128 p00 = static_cast<u128>(a0) * b0, p01 = static_cast<u128>(a0) * b1;
    const u128 p10 = static_cast<u128>(a1) * b0, p11 = static_cast<u128>(a1) * b1;
    const u128 mid = (p00 >> 64) + static_cast<u64>(p01) + static_cast<u64>(p10);
    lo = static_cast<u64>(p00) | (mid << 64);
    hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
  }

  u128 n_;
  u128 neg_inv_;
  u128 r2_ = 0;
};

inline u128 gcd_u128(u128 a, u128 b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

inline Integer to_integer(u128 v) {
  Integer out(static_cast<unsigned long>(v >> 64));
  out <<= 64;
  out += static_cast<unsigned long>(v & ~u64{0});
  return out;
}

inline u128 to_u128(const Integer& v) {
  Integer hi = v >> 64;
  Integer lo = v - (hi << 64);
  return (static_cast<u128>(hi.get_ui()) << 64) | lo.get_ui();
}

/// Elliptic-curve factoring on Montgomery curves; returns a proper divisor of
/// the odd composite n (not a perfect power), or throws once the budget is spent.
Integer ecm_find_factor(const Integer& n, WorkBudget& budget);

}  // namespace steiner::arith::detail
