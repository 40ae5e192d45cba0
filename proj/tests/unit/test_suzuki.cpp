#include <doctest.h>

#include <cstdlib>
#include <set>

#include "steiner/designs.hpp"
#include "steiner/errors.hpp"
#include "steiner/permgrp.hpp"
#include "steiner/suzuki.hpp"

using namespace steiner;
using namespace steiner::suzuki;
using permgrp::Perm;
using permgrp::PermGroup;
using permgrp::Point;

namespace {

// Schoolbook product of bit polynomials reduced by the modulus.
std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, std::uint32_t modulus, unsigned e) {
  std::uint64_t acc = 0;
  for (unsigned i = 0; i < 32; ++i)
    if ((b >> i) & 1) acc ^= static_cast<std::uint64_t>(a) << i;
  for (int d = 63; d >= static_cast<int>(e); --d)
    if ((acc >> d) & 1) acc ^= static_cast<std::uint64_t>(modulus) << (d - static_cast<int>(e));
  return static_cast<std::uint32_t>(acc);
}

bool long_tests() { return std::getenv("STEINER_LONG") != nullptr; }

}  // namespace

TEST_SUITE("suzuki") {
  TEST_CASE("small fields") {
    const GF2e f1(1);
    CHECK(f1.size() == 2);
    CHECK(f1.mul(1, 1) == 1);
    CHECK(f1.add(1, 1) == 0);

    const GF2e f3(3);
    CHECK(f3.size() == 8);
    CHECK(f3.modulus() == 0b1011);
    const GF2e::Elt x = 0b010;
    CHECK(f3.mul(f3.mul(x, x), x) == 0b011);  // x^3 = x + 1
    for (GF2e::Elt z = 1; z < 8; ++z) CHECK(f3.pow(z, 7) == 1);
    CHECK_THROWS_AS(GF2e(0), PreconditionError);
    CHECK_THROWS_AS(f3.inv(0), PreconditionError);
  }

  TEST_CASE("field arithmetic against schoolbook multiplication") {
    for (unsigned e : {2u, 3u, 5u, 7u}) {
      const GF2e f(e);
      CHECK(gf2_irreducible(f.modulus()));
      for (std::uint32_t m = 1u << e; m < f.modulus(); ++m) CHECK_FALSE(gf2_irreducible(m));
      std::set<GF2e::Elt> powers;
      for (std::uint64_t i = 0; i + 1 < f.size(); ++i) powers.insert(f.pow(f.generator(), i));
      CHECK(powers.size() == f.size() - 1);
      for (GF2e::Elt a = 0; a < f.size(); ++a) {
        for (GF2e::Elt b = 0; b < f.size(); ++b) CHECK(f.mul(a, b) == slow_mul(a, b, f.modulus(), e));
        if (a) CHECK(f.mul(a, f.inv(a)) == 1);
        CHECK(f.frobenius(a, 1) == f.mul(a, a));
        CHECK(f.frobenius(a, e) == a);
      }
    }
    CHECK_FALSE(gf2_irreducible(0b101));
    CHECK(gf2_irreducible(0b111));
  }

  TEST_CASE("the twist squares to the Frobenius") {
    for (unsigned e : {3u, 5u, 7u}) {
      const GF2e f(e);
      for (GF2e::Elt z = 0; z < f.size(); ++z) CHECK(sigma(f, sigma(f, z)) == f.mul(z, z));
    }
  }

  TEST_CASE("ovoid") {
    CHECK(build_ovoid(3).size() == 65);
    CHECK(build_ovoid(5).size() == 1025);
    CHECK_THROWS_AS(build_ovoid(2), PreconditionError);
    CHECK_THROWS_AS(build_ovoid(1), PreconditionError);
    const GF2e f(3);
    const auto pts = build_ovoid(3);
    for (std::uint32_t i = 0; i < pts.size(); ++i) {
      CHECK(point_index(f, pts[i]) == i);
      CHECK(point_at(f, i) == pts[i]);
    }
    CHECK_THROWS_AS(point_at(f, 65), PreconditionError);
    CHECK(projective_point(f, pts[0]) == std::array<GF2e::Elt, 4>{1, 0, 0, 0});
    std::set<std::array<GF2e::Elt, 4>> distinct;
    for (const auto& p : pts) distinct.insert(projective_point(f, p));
    CHECK(distinct.size() == 65);
  }

  TEST_CASE("Sz(8) generators") {
    const PermGroup g = suzuki_group(3);
    CHECK(g.generators().size() == 4);
    CHECK(suzuki_generators(3) == g.generators());
    CHECK(g.degree() == 65);
    CHECK(g.order() == 29120);
    CHECK(g.orbits().size() == 1);
    const PermGroup st = permgrp::setwise_stabilizer(g, {0});
    CHECK(st.order() == 448);
    CHECK(st.orbits().size() == 2);
    CHECK(st.orbits()[1].size() == 64);
    CHECK_THROWS_AS(suzuki_group(4), PreconditionError);
    CHECK_THROWS_AS(suzuki_group(7), PreconditionError);
    CHECK(frobenius_perm(3) * frobenius_perm(3) * frobenius_perm(3) == Perm::identity(65));
    CHECK(suzuki_group_with_frobenius(3).order() == 87360);
  }

  TEST_CASE("Sz(8) is 2-transitive") {
    const PermGroup g = suzuki_group(3);
    const std::size_t n = g.degree();
    std::vector<char> seen(n * n, 0);
    std::vector<std::pair<Point, Point>> queue{{0, 1}};
    seen[1] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (const Perm& x : g.generators()) {
        const Point a = x(queue[i].first), b = x(queue[i].second);
        if (!seen[a * n + b]) {
          seen[a * n + b] = 1;
          queue.emplace_back(a, b);
        }
      }
    CHECK(queue.size() == 65 * 64);
  }

  TEST_CASE("circles meet in at most two points") {
    const designs::DesignInstance d = build_inversive_plane(3);
    CHECK(d.b() == 520);
    std::size_t worst = 0;
    for (std::size_t i = 0; i < d.b(); ++i)
      for (std::size_t j = i + 1; j < d.b(); ++j) {
        const auto& a = d.blocks()[i];
        const auto& b = d.blocks()[j];
        std::vector<Point> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
        worst = std::max(worst, common.size());
      }
    CHECK(worst == 2);
    CHECK(d.find_block(seed_circle(3)).has_value());
  }

  TEST_CASE("Sz(32) on 1025 points") {
    const PermGroup g = suzuki_group(5);
    CHECK(g.order() == Integer(1024) * 1025 * 31);
    CHECK(seed_circle(5).size() == 33);
  }

  TEST_CASE("inversive plane of order 32" * doctest::skip(!long_tests())) {
    const designs::DesignInstance d = build_inversive_plane(5);
    CHECK(d.v() == 1025);
    CHECK(d.k() == 33);
    CHECK(d.b() == 32800);
    CHECK(designs::verify_3design(d).pass);
  }
}
