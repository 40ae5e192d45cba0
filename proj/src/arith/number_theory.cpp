#include <algorithm>
#include <cassert>

#include "steiner/arith.hpp"
#include "steiner/errors.hpp"

namespace steiner::arith {

namespace {

Integer powmod(const Integer& base, const Integer& exp, const Integer& mod) {
  Integer out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return out;
}

std::vector<unsigned> prime_factors_small(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// r prime, r | q^n - 1: the order of q mod r is exactly n iff no q^(n/s) == 1.
bool has_order_exactly(const Integer& q, unsigned n, const Integer& r, const std::vector<unsigned>& n_primes) {
  if (powmod(q, Integer(n), r) != 1) return false;
  for (unsigned s : n_primes)
    if (powmod(q, Integer(n / s), r) == 1) return false;
  return true;
}

}  // namespace

std::vector<PrimePower> prime_powers_upto(std::uint64_t limit) {
  if (limit < 2) throw PreconditionError("prime_powers_upto requires limit >= 2");
  std::vector<bool> composite(limit + 1, false);
  std::vector<PrimePower> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    std::uint64_t q = i;
    for (unsigned e = 1;; ++e) {
      out.push_back({i, e, Integer(static_cast<unsigned long>(q))});
      if (q > limit / i) break;
      q *= i;
    }
  }
  std::sort(out.begin(), out.end(), [](const PrimePower& a, const PrimePower& b) { return a.q < b.q; });
  return out;
}

std::optional<PrimePower> as_prime_power(const Integer& q) {
  if (q < 2) return std::nullopt;
  Factorization f = factorize(q);
  if (f.pairs.size() != 1 || !mpz_fits_ulong_p(f.pairs[0].first.get_mpz_t())) return std::nullopt;
  return PrimePower{f.pairs[0].first.get_ui(), f.pairs[0].second, q};
}

Integer multiplicative_order(const Integer& a, const Integer& r) {
  Integer order = r - 1;
  for (const auto& [s, m] : factorize(order).pairs) {
    for (unsigned i = 0; i < m; ++i) {
      Integer candidate = order / s;
      if (powmod(a, candidate, r) != 1) break;
      order = candidate;
    }
  }
  return order;
}

std::optional<Integer> zsigmondy_ppd(const Integer& q, unsigned n, const PpdOptions& options) {
  if (n < 3) throw PreconditionError("zsigmondy_ppd requires n >= 3");
  if (!as_prime_power(q)) throw PreconditionError("zsigmondy_ppd requires q to be a prime power");

  Integer value;
  mpz_pow_ui(value.get_mpz_t(), q.get_mpz_t(), n);
  value -= 1;
  const std::vector<unsigned> n_primes = prime_factors_small(n);

  try {
    for (const auto& [r, m] : factorize(value, options.factor).pairs)
      if (has_order_exactly(q, n, r, n_primes)) return r;
    return std::nullopt;
  } catch (const FactorBudgetExceeded&) {
    // Every primitive prime divisor is 1 mod n, so scanning that progression
    // in increasing order still yields the smallest one.
    for (std::uint64_t r = n + 1; r <= options.scan_bound; r += n) {
      Integer rr(static_cast<unsigned long>(r));
      if (mpz_divisible_p(value.get_mpz_t(), rr.get_mpz_t()) && is_prime(rr) && has_order_exactly(q, n, rr, n_primes))
        return rr;
    }
    throw;
  }
}

bool divides_exp_minus_one(const Integer& r, std::uint64_t a, std::uint64_t b) {
  if (r < 2 || a < 1 || b < 1) throw PreconditionError("divides_exp_minus_one requires r >= 2 and a, b >= 1");
  const bool result = b % a == 0;
#ifndef NDEBUG
  if (b <= 4096) {
    Integer ra, rb;
    mpz_pow_ui(ra.get_mpz_t(), r.get_mpz_t(), a);
    mpz_pow_ui(rb.get_mpz_t(), r.get_mpz_t(), b);
    ra -= 1;
    rb -= 1;
    assert(static_cast<bool>(mpz_divisible_p(rb.get_mpz_t(), ra.get_mpz_t())) == result);
  }
#endif
  return result;
}

bool is_large(const Integer& sub_order, const Integer& group_order) {
  if (sub_order < 1 || group_order < 1 || sub_order > group_order)
    throw PreconditionError("is_large requires 1 <= sub_order <= group_order");
  Integer cube;
  mpz_pow_ui(cube.get_mpz_t(), sub_order.get_mpz_t(), 3);
  return cube >= group_order;
}

Integer isqrt(const Integer& n) {
  if (n < 0) throw PreconditionError("isqrt of a negative number");
  return sqrt(n);
}

bool exceeds_sqrt_minus_two(const Integer& x, const Integer& v) {
  if (v < 0) throw PreconditionError("square root of a negative number");
  const Integer shifted = x + 2;
  return shifted > 0 && shifted * shifted > v;
}

}  // namespace steiner::arith
