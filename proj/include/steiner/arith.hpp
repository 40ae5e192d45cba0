#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "steiner/qpoly.hpp"

namespace steiner::arith {

/// q = p^e with p prime and e >= 1.
struct PrimePower {
  std::uint64_t p = 0;
  unsigned e = 0;
  Integer q;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Sorted (prime, multiplicity) pairs with strictly increasing primes.
struct Factorization {
  std::vector<std::pair<Integer, unsigned>> pairs;

  Integer value() const;
};

struct FactorOptions {
  /// Iteration budget per factorize() call, shared by Pollard rho and the
  /// elliptic-curve fallback (one unit per curve step).
  std::uint64_t rho_budget = std::uint64_t{1} << 32;
};

/// Deterministic Miller-Rabin below 3.3e24, otherwise 64 rounds with bases
/// drawn from a generator seeded by (primality_seed(), n).
bool is_prime(const Integer& n);

void set_primality_seed(std::uint64_t seed);
std::uint64_t primality_seed();
inline constexpr std::uint64_t kDefaultPrimalitySeed = 0x5eed'2b2f'4e6c'0001ULL;

/// Primes below 10^5, ascending. Built once; read-only.
const std::vector<std::uint32_t>& small_primes();

/// Trial division by small_primes(), then Pollard rho with Brent's cycle
/// detection; composites that survive a short rho pass are split by ECM.
/// Throws FactorBudgetExceeded when the budget runs out.
Factorization factorize(const Integer& n, const FactorOptions& options = {});

/// All positive divisors, ascending.
std::vector<Integer> divisors(const Integer& n, const FactorOptions& options = {});
std::vector<Integer> divisors(const Factorization& f);

/// Every prime power q <= limit, ascending in q.
std::vector<PrimePower> prime_powers_upto(std::uint64_t limit);

/// Decomposes q as p^e if q is a prime power.
std::optional<PrimePower> as_prime_power(const Integer& q);

struct PpdOptions {
  FactorOptions factor;
  /// Upper limit for the r = 1 (mod n) scan used when factoring q^n-1
  /// exceeds the factor budget.
  std::uint64_t scan_bound = 100'000'000;
};

/// Smallest primitive prime divisor of q^n - 1, or nullopt exactly for
/// (q, n) = (2, 6). Preconditions: q >= 2 a prime power, n >= 3.
std::optional<Integer> zsigmondy_ppd(const Integer& q, unsigned n, const PpdOptions& options = {});

/// Multiplicative order of a modulo prime r (a coprime to r).
Integer multiplicative_order(const Integer& a, const Integer& r);

/// Whether r^a - 1 divides r^b - 1; equivalent to a | b for r >= 2.
bool divides_exp_minus_one(const Integer& r, std::uint64_t a, std::uint64_t b);

/// sub_order^3 >= group_order.
bool is_large(const Integer& sub_order, const Integer& group_order);

Integer isqrt(const Integer& n);

/// Exact test of x > sqrt(v) - 2 for v >= 0.
bool exceeds_sqrt_minus_two(const Integer& x, const Integer& v);

}  // namespace steiner::arith
