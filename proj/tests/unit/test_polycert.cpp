#include <doctest.h>

#include "generators.hpp"
#include "steiner/errors.hpp"
#include "steiner/gcd_cert.hpp"
#include "steiner/qpoly.hpp"

using namespace steiner;
using namespace steiner::polycert;

namespace {

QPoly ints(std::vector<long> c) {
  std::vector<Rational> r;
  for (long x : c) r.emplace_back(x);
  return QPoly(std::move(r));
}

QPoly g2_vpoly() { return poly_parse("q^5+q^4+q^3+q^2+q+1"); }

}  // namespace

TEST_SUITE("polycert") {
  TEST_CASE("parse expands factored orders") {
    CHECK(poly_parse("q^2*(q^2+1)*(q-1)") == ints({0, 0, -1, 1, -1, 1}));
    CHECK(poly_parse("0").is_zero());
    const QPoly g2 = poly_parse("q^6*(q^6-1)*(q^2-1)");
    CHECK(g2.degree() == 14);
    CHECK(g2.leading() == 1);
    CHECK(poly_parse(" - q ^ 2 + 3 ") == ints({3, 0, -1}));
  }

  TEST_CASE("parse rejects text outside the grammar") {
    for (const char* bad : {"", "q+", "(q", "q^-1", "2q", "q^q", "q**2", "x", "q^2)"}) {
      CAPTURE(bad);
      CHECK_THROWS_AS(poly_parse(bad), ParseError);
    }
    try {
      poly_parse("q+*2");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.position() == 2);
    }
  }

  TEST_CASE("print is canonical and parses back") {
    CHECK(poly_print(ints({0, 0, -1, 1, -1, 1})) == "q^5 - q^4 + q^3 - q^2");
    CHECK(poly_print(QPoly()) == "0");
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
      const QPoly p = testgen::random_qpoly(rng, 8, true);
      CHECK(poly_parse(poly_print(p)) == p);
    }
  }

  TEST_CASE("evaluation") {
    CHECK(poly_eval(poly_parse("q^2*(q^2+1)*(q-1)"), 8) == 29120);
    CHECK(poly_eval(QPoly(), Integer("1000000000")) == 0);
    const QPoly v = g2_vpoly();
    const QPoly vv = (v - QPoly::constant(1)) * (v - QPoly::constant(2));
    const Integer v2 = poly_eval_integer(v, 2);
    CHECK(v2 == 63);
    CHECK(poly_eval_integer(vv, 2) == (v2 - 1) * (v2 - 2));
    CHECK(poly_eval_integer(vv, 2) == 3782);
    CHECK_THROWS_AS(poly_eval_integer(QPoly(std::vector<Rational>{Rational(1, 2)}), 3), PreconditionError);
  }

  TEST_CASE("evaluation agrees with the power sum") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 300; ++i) {
      const QPoly p = testgen::random_qpoly(rng, 10);
      const Integer x = testgen::uniform(rng, -50, 50);
      Rational naive = 0;
      Integer power = 1;
      for (const Rational& c : p.coeffs()) {
        naive += c * Rational(power);
        power *= x;
      }
      CHECK(poly_eval(p, x) == naive);
    }
  }

  TEST_CASE("Cauchy root bound") {
    CHECK(poly_cauchy_root_bound(ints({-5, 1})) == 6);
    CHECK(poly_cauchy_root_bound(ints({-4, 0, 1})) == 5);
    CHECK(poly_cauchy_root_bound(ints({-10, 8, 0, 2})) == 6);
    CHECK_THROWS_AS(poly_cauchy_root_bound(QPoly()), PreconditionError);
  }

  TEST_CASE("divmod reconstructs the dividend") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 200; ++i) {
      const QPoly a = testgen::random_qpoly(rng, 9);
      const QPoly b = testgen::random_qpoly(rng, 5);
      const DivMod d = divmod(a, b);
      CHECK(d.quotient * b + d.remainder == a);
      CHECK(d.remainder.degree() < b.degree());
    }
    CHECK_THROWS_AS(divmod(ints({1}), QPoly()), PreconditionError);
  }

  TEST_CASE("Sturm counts integer roots above a point") {
    std::mt19937_64 rng(14);
    for (int i = 0; i < 100; ++i) {
      std::vector<long> roots;
      QPoly p = QPoly::constant(1);
      const int n = static_cast<int>(testgen::uniform(rng, 1, 6));
      for (int j = 0; j < n; ++j) {
        roots.push_back(static_cast<long>(testgen::uniform(rng, -20, 20)));
        p = p * ints({-roots.back(), 1});
      }
      std::sort(roots.begin(), roots.end());
      roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
      const auto chain = sturm_sequence(p);
      for (long x = -25; x <= 25; ++x) {
        if (std::binary_search(roots.begin(), roots.end(), x)) continue;
        const auto above = static_cast<std::size_t>(std::count_if(roots.begin(), roots.end(), [&](long r) { return r > x; }));
        CHECK(count_roots_above(chain, x) == above);
      }
    }
  }

  TEST_CASE("certificate for the G2 parabolic pair is 160q") {
    const QPoly stab = poly_parse("q^6*(q^2-1)*(q-1)");
    const QPoly v = g2_vpoly();
    const QPoly vv = (v - QPoly::constant(1)) * (v - QPoly::constant(2));
    const GcdCertificate c = poly_xgcd_cert(stab, vv);
    CHECK(c.holds());
    CHECK(c.r1 == ints({0, 160}));
    CHECK(c.p1 * stab + c.q1 * vv == c.r1);
  }

  TEST_CASE("certificate small cases") {
    const QPoly q = QPoly::indeterminate();
    const GcdCertificate same = poly_xgcd_cert(q, q);
    CHECK(same.r1 == q);
    CHECK(same.holds());
    CHECK(same.p1 * q + same.q1 * q == q);

    const GcdCertificate c = poly_xgcd_cert(ints({-1, 0, 1}), ints({-1, 0, 0, 1}));
    CHECK(c.holds());
    REQUIRE(c.r1.degree() == 1);
    CHECK(c.r1.coeff(1) > 0);
    CHECK(c.r1.coeff(0) == -c.r1.coeff(1));

    CHECK_THROWS_AS(poly_xgcd_cert(QPoly(), QPoly()), PreconditionError);
  }

  TEST_CASE("certificate identity on random pairs") {
    std::mt19937_64 rng(15);
    for (int i = 0; i < 200; ++i) {
      const QPoly a = testgen::random_qpoly(rng, 7);
      const QPoly b = testgen::random_qpoly(rng, 7);
      const GcdCertificate c = poly_xgcd_cert(a, b);
      CHECK(c.p1 * a + c.q1 * b == c.r1);
      CHECK(c.r1.has_integer_coeffs());
      CHECK(c.p1.has_integer_coeffs());
      CHECK(c.q1.has_integer_coeffs());
      CHECK(!c.r1.is_zero());
      CHECK(c.r1.leading() > 0);
    }
  }

  TEST_CASE("gcd of values divides r1 at integer points") {
    std::mt19937_64 rng(16);
    for (int i = 0; i < 15; ++i) {
      const QPoly a = testgen::random_qpoly(rng, 5, true);
      const QPoly b = testgen::random_qpoly(rng, 5, true);
      const GcdCertificate c = poly_xgcd_cert(a, b);
      for (long n = 2; n <= 1000; ++n) {
        const Integer g = gcd(poly_eval_integer(a, n), poly_eval_integer(b, n));
        const Integer r = poly_eval_integer(c.r1, n);
        if (g == 0) continue;
        CHECK(r % g == 0);
      }
    }
  }
}
