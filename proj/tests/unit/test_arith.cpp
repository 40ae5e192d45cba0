#include <doctest.h>

#include "arith/modular.hpp"
#include "generators.hpp"
#include "steiner/arith.hpp"
#include "steiner/errors.hpp"

using namespace steiner;
using namespace steiner::arith;

namespace {

bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<Integer, unsigned>> pairs(std::initializer_list<std::pair<long, unsigned>> l) {
  std::vector<std::pair<Integer, unsigned>> out;
  for (auto [p, m] : l) out.emplace_back(Integer(p), m);
  return out;
}

Integer ipow(const Integer& b, unsigned e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

}  // namespace

TEST_SUITE("arith") {
  TEST_CASE("primality examples") {
    CHECK(is_prime(757));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1023));
    CHECK(is_prime(Integer("170141183460469231731687303715884105727")));  // 2^127 - 1
    CHECK_FALSE(is_prime(Integer("340282366920938463463374607431768211457")));  // 2^128 + 1
  }

  TEST_CASE("primality agrees with trial division below 20000") {
    for (std::uint64_t n = 0; n < 20000; ++n) {
      CAPTURE(n);
      CHECK(is_prime(Integer(static_cast<unsigned long>(n))) == trial_prime(n));
    }
  }

  TEST_CASE("factorize examples") {
    CHECK(factorize(1023).pairs == pairs({{3, 1}, {11, 1}, {31, 1}}));
    CHECK(factorize(64).pairs == pairs({{2, 6}}));
    CHECK(factorize(19682).pairs == pairs({{2, 1}, {13, 1}, {757, 1}}));
    CHECK(factorize(1).pairs.empty());
    // 2^128 + 1 = 59649589127497217 * 5704689200685129054721
    const auto f = factorize(Integer("340282366920938463463374607431768211457"));
    CHECK(f.pairs == std::vector<std::pair<Integer, unsigned>>{{Integer("59649589127497217"), 1},
                                                               {Integer("5704689200685129054721"), 1}});
  }

  TEST_CASE("factorization round-trip on random integers up to 128 bits") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 60; ++i) {
      const Integer n = testgen::random_bits(rng, static_cast<unsigned>(testgen::uniform(rng, 2, 128)));
      const Factorization f = factorize(n);
      CHECK(f.value() == n);
      for (std::size_t j = 0; j < f.pairs.size(); ++j) {
        CHECK(is_prime(f.pairs[j].first));
        if (j) CHECK(f.pairs[j - 1].first < f.pairs[j].first);
      }
    }
  }

  TEST_CASE("a tiny budget fails loudly") {
    const Integer semiprime = Integer("1000000000000000003") * Integer("1000000000000000009");
    FactorOptions tiny;
    tiny.rho_budget = 1000;
    CHECK_THROWS_AS(factorize(semiprime, tiny), FactorBudgetExceeded);
  }

  TEST_CASE("Montgomery kernel matches mpz near 2^128") {
    using detail::u128;
    std::mt19937_64 rng(22);
    for (int i = 0; i < 2000; ++i) {
      u128 n = (static_cast<u128>(rng()) << 64) | rng();
      if (i % 2 == 0) n |= static_cast<u128>(1) << 127;  // exercise the carry path
      n |= 1;
      if (n < 3) n = 3;
      const detail::Mont128 m(n);
      const u128 x = ((static_cast<u128>(rng()) << 64) | rng()) % n;
      const u128 y = ((static_cast<u128>(rng()) << 64) | rng()) % n;
      const u128 prod = m.mul(m.mul(m.to_mont(x), m.to_mont(y)), 1);
      const Integer N = detail::to_integer(n);
      CHECK(detail::to_integer(prod) == detail::to_integer(x) * detail::to_integer(y) % N);
      const u128 sum = m.add(x, y);
      CHECK(detail::to_integer(sum) == (detail::to_integer(x) + detail::to_integer(y)) % N);
      const u128 diff = m.sub(x, y);
      Integer expect = (detail::to_integer(x) - detail::to_integer(y)) % N;
      if (expect < 0) expect += N;
      CHECK(detail::to_integer(diff) == expect);
      CHECK(detail::to_u128(N) == n);
    }
  }

  TEST_CASE("divisors") {
    auto ints = [](std::initializer_list<long> l) { return std::vector<Integer>(l.begin(), l.end()); };
    CHECK(divisors(63) == ints({1, 3, 7, 9, 21, 63}));
    CHECK(divisors(1) == ints({1}));
    CHECK(divisors(1023) == ints({1, 3, 11, 31, 33, 93, 341, 1023}));
  }

  TEST_CASE("divisors are closed under complement and complete") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
      const long n = static_cast<long>(testgen::uniform(rng, 1, 50000));
      const auto d = divisors(n);
      std::vector<Integer> brute;
      for (long x = 1; x <= n; ++x)
        if (n % x == 0) brute.push_back(x);
      CHECK(d == brute);
      CHECK(d.front() == 1);
      CHECK(d.back() == n);
      for (const Integer& x : d) CHECK(std::binary_search(d.begin(), d.end(), Integer(n / x)));
    }
  }

  TEST_CASE("prime powers") {
    const auto upto10 = prime_powers_upto(10);
    std::vector<std::tuple<std::uint64_t, unsigned, long>> got;
    for (const auto& pp : upto10) got.emplace_back(pp.p, pp.e, pp.q.get_si());
    CHECK(got == std::vector<std::tuple<std::uint64_t, unsigned, long>>{
                     {2, 1, 2}, {3, 1, 3}, {2, 2, 4}, {5, 1, 5}, {7, 1, 7}, {2, 3, 8}, {3, 2, 9}});
    CHECK(prime_powers_upto(2).size() == 1);
    const auto upto40 = prime_powers_upto(40);
    auto has = [&](long q) {
      return std::any_of(upto40.begin(), upto40.end(), [&](const PrimePower& pp) { return pp.q == q; });
    };
    CHECK(has(32));
    CHECK_FALSE(has(33));
    CHECK_FALSE(has(36));
    for (const auto& pp : prime_powers_upto(5000)) {
      CHECK(ipow(Integer(static_cast<unsigned long>(pp.p)), pp.e) == pp.q);
      CHECK(trial_prime(pp.p));
    }
    CHECK(as_prime_power(2187)->e == 7);
    CHECK_FALSE(as_prime_power(36).has_value());
  }

  TEST_CASE("primitive prime divisors") {
    CHECK_FALSE(zsigmondy_ppd(2, 6).has_value());
    CHECK(*zsigmondy_ppd(3, 9) == 757);
    CHECK(*zsigmondy_ppd(2, 10) == 11);
    CHECK_THROWS_AS(zsigmondy_ppd(6, 3), PreconditionError);
    CHECK_THROWS_AS(zsigmondy_ppd(2, 2), PreconditionError);
  }

  TEST_CASE("primitive prime divisors are 1 mod n and primitive") {
    for (long q = 2; q <= 20; ++q) {
      if (!as_prime_power(q)) continue;
      for (unsigned n = 3; n <= 20; ++n) {
        CAPTURE(q);
        CAPTURE(n);
        const auto r = zsigmondy_ppd(q, n);
        if (q == 2 && n == 6) {
          CHECK_FALSE(r.has_value());
          continue;
        }
        REQUIRE(r.has_value());
        CHECK(*r % n == 1);
        CHECK((ipow(q, n) - 1) % *r == 0);
        for (unsigned i = 1; i < n; ++i) CHECK((ipow(q, i) - 1) % *r != 0);
        // Smallest: no smaller prime is primitive.
        for (long s = 2; s < r->get_si() && s < 5000; ++s) {
          if (!trial_prime(static_cast<std::uint64_t>(s)) || (ipow(q, n) - 1) % s != 0) continue;
          bool primitive = true;
          for (unsigned i = 1; i < n && primitive; ++i)
            if ((ipow(q, i) - 1) % s == 0) primitive = false;
          CHECK_FALSE(primitive);
        }
      }
    }
  }

  TEST_CASE("exponent divisibility agrees with big-integer division") {
    CHECK(divides_exp_minus_one(3, 3, 9));
    CHECK_FALSE(divides_exp_minus_one(2, 4, 10));
    CHECK(divides_exp_minus_one(5, 2, 6));
    for (long r = 2; r <= 7; ++r)
      for (std::uint64_t a = 1; a <= 40; ++a)
        for (std::uint64_t b = 1; b <= 40; ++b) {
          const bool direct = (ipow(r, static_cast<unsigned>(b)) - 1) % (ipow(r, static_cast<unsigned>(a)) - 1) == 0;
          CHECK(divides_exp_minus_one(r, a, b) == direct);
          CHECK(direct == (b % a == 0));
        }
  }

  TEST_CASE("largeness") {
    CHECK(is_large(29120, 29120));
    CHECK_FALSE(is_large(20, 29120));
    CHECK(is_large(448, 29120));
  }

  TEST_CASE("exact square-root comparison") {
    CHECK(isqrt(Integer("1000000000000000000000000")) == Integer("1000000000000"));
    // x > sqrt(v) - 2 iff (x + 2)^2 > v for x + 2 > 0.
    for (long v = 0; v < 400; ++v)
      for (long x = -4; x < 25; ++x) CHECK(exceeds_sqrt_minus_two(x, v) == (x + 2 > 0 && (x + 2) * (x + 2) > v));
  }
}
