#include <algorithm>
#include <map>
#include <numeric>

#include "steiner/arith.hpp"
#include "steiner/errors.hpp"
#include "modular.hpp"

namespace steiner::arith {

namespace {

using namespace detail;

constexpr std::uint32_t kTrialLimit = 100000;

u64 absdiff(u64 a, u64 b) { return a > b ? a - b : b - a; }

// Brent's variant with batched gcds; returns a nontrivial factor or n on failure.
u64 brent_u64(u64 n, u64 c, WorkBudget& budget) {
  auto f = [&](u64 x) { return static_cast<u64>((static_cast<u128>(x) * x + c) % n); };
  constexpr u64 kBatch = 128;
  u64 y = 2, x = 2, ys = 2, q = 1, g = 1;
  for (u64 r = 1; g == 1; r <<= 1) {
    x = y;
    budget.spend(r);
    for (u64 i = 0; i < r; ++i) y = f(y);
    for (u64 k = 0; k < r && g == 1; k += kBatch) {
      ys = y;
      const u64 steps = std::min(kBatch, r - k);
      budget.spend(steps);
      for (u64 i = 0; i < steps; ++i) {
        y = f(y);
        q = static_cast<u64>(static_cast<u128>(q) * absdiff(x, y) % n);
      }
      g = std::gcd(q, n);
    }
  }
  if (g == n) {
    do {
      budget.spend(1);
      ys = f(ys);
      g = std::gcd(absdiff(x, ys), n);
    } while (g == 1);
  }
  return g;
}

u128 brent_u128(u128 n, u64 c, WorkBudget& budget) {
  const Mont128 mont(n);
  // Any fixed constant works for the map; it need not be c in Montgomery form.
  const u128 cc = c;
  auto f = [&](u128 x) {
    return mont.add(mont.mul(x, x), cc);
  };
  auto absdiff128 = [](u128 a, u128 b) { return a > b ? a - b : b - a; };
  constexpr u64 kBatch = 128;
  u128 y = 2, x = 2, ys = 2, q = 1, g = 1;
  for (u64 r = 1; g == 1; r <<= 1) {
    x = y;
    budget.spend(r);
    for (u64 i = 0; i < r; ++i) y = f(y);
    for (u64 k = 0; k < r && g == 1; k += kBatch) {
      ys = y;
      const u64 steps = std::min(kBatch, r - k);
      budget.spend(steps);
      for (u64 i = 0; i < steps; ++i) {
        y = f(y);
        q = mont.mul(q, absdiff128(x, y));
      }
      g = gcd_u128(q, n);
    }
  }
  if (g == n) {
    do {
      budget.spend(1);
      ys = f(ys);
      g = gcd_u128(absdiff128(x, ys), n);
    } while (g == 1);
  }
  return g;
}

Integer brent(const Integer& n, unsigned long c, WorkBudget& budget) {
  mpz_srcptr mod = n.get_mpz_t();
  auto f = [&](Integer& x) {
    mpz_mul(x.get_mpz_t(), x.get_mpz_t(), x.get_mpz_t());
    mpz_add_ui(x.get_mpz_t(), x.get_mpz_t(), c);
    mpz_mod(x.get_mpz_t(), x.get_mpz_t(), mod);
  };
  constexpr u64 kBatch = 128;
  Integer y = 2, x = 2, ys = 2, q = 1, g = 1, diff;
  for (u64 r = 1; g == 1; r <<= 1) {
    x = y;
    budget.spend(r);
    for (u64 i = 0; i < r; ++i) f(y);
    for (u64 k = 0; k < r && g == 1; k += kBatch) {
      ys = y;
      const u64 steps = std::min(kBatch, r - k);
      budget.spend(steps);
      for (u64 i = 0; i < steps; ++i) {
        f(y);
        mpz_sub(diff.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        mpz_mul(q.get_mpz_t(), q.get_mpz_t(), diff.get_mpz_t());
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), mod);
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), mod);
    }
  }
  if (g == n) {
    do {
      budget.spend(1);
      f(ys);
      mpz_sub(diff.get_mpz_t(), x.get_mpz_t(), ys.get_mpz_t());
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), mod);
    } while (g == 1);
  }
  return g;
}

// Rho gets a short first pass; composites it cannot split quickly (two large
// prime factors) go to ECM, whose cost grows with the smaller factor only
// subexponentially.
constexpr u64 kRhoFirstPass = u64{1} << 18;

Integer find_factor(const Integer& n, WorkBudget& budget) {
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    Integer root;
    for (unsigned long k = 2;; ++k)
      if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) return root;
  }
  if (mpz_fits_ulong_p(n.get_mpz_t())) {
    for (u64 c = 1;; ++c) {
      u64 g = brent_u64(n.get_ui(), c, budget);
      if (g != n.get_ui()) return Integer(static_cast<unsigned long>(g));
    }
  }
  WorkBudget first_pass(kRhoFirstPass);
  try {
    if (mpz_odd_p(n.get_mpz_t()) && mpz_sizeinbase(n.get_mpz_t(), 2) <= 128) {
      u128 g = brent_u128(to_u128(n), 1, first_pass);
      if (g != to_u128(n)) return to_integer(g);
    } else {
      Integer g = brent(n, 1, first_pass);
      if (g != n) return g;
    }
  } catch (const FactorBudgetExceeded&) {
  }
  budget.spend(kRhoFirstPass);
  if (mpz_even_p(n.get_mpz_t())) return Integer(2);
  return ecm_find_factor(n, budget);
}

void split(const Integer& n, std::map<Integer, unsigned>& out, WorkBudget& budget) {
  if (n == 1) return;
  // n has no prime factor below kTrialLimit here.
  if (n < Integer(kTrialLimit) * kTrialLimit || is_prime(n)) {
    ++out[n];
    return;
  }
  Integer d = find_factor(n, budget);
  split(d, out, budget);
  split(n / d, out, budget);
}

}  // namespace

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialLimit, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i < kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j < kTrialLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

Integer Factorization::value() const {
  Integer v = 1;
  for (const auto& [p, m] : pairs) {
    Integer pm;
    mpz_pow_ui(pm.get_mpz_t(), p.get_mpz_t(), m);
    v *= pm;
  }
  return v;
}

Factorization factorize(const Integer& n, const FactorOptions& options) {
  if (n < 1) throw PreconditionError("factorize requires n >= 1");
  std::map<Integer, unsigned> found;
  Integer rest = n;
  for (std::uint32_t p : small_primes()) {
    if (Integer(p) * p > rest) break;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++found[Integer(p)];
    }
  }
  WorkBudget budget(options.rho_budget);
  split(rest, found, budget);

  Factorization f;
  f.pairs.assign(found.begin(), found.end());
  return f;
}

std::vector<Integer> divisors(const Factorization& f) {
  std::vector<Integer> out{Integer(1)};
  for (const auto& [p, m] : f.pairs) {
    const std::size_t base = out.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= m; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Integer> divisors(const Integer& n, const FactorOptions& options) {
  return divisors(factorize(n, options));
}

}  // namespace steiner::arith
