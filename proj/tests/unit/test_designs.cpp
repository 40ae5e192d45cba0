#include <doctest.h>

#include <map>
#include <set>
#include <sstream>

#include "generators.hpp"
#include "steiner/designs.hpp"
#include "steiner/errors.hpp"
#include "steiner/sieve.hpp"
#include "steiner/suzuki.hpp"

using namespace steiner;
using namespace steiner::designs;
using permgrp::Perm;
using permgrp::PermGroup;

namespace {

// The 14 affine planes of AG(3,2): 4-sets of vectors in GF(2)^3 summing to 0.
DesignInstance ag32() {
  std::vector<Block> blocks;
  for (Point a = 0; a < 8; ++a)
    for (Point b = a + 1; b < 8; ++b)
      for (Point c = b + 1; c < 8; ++c)
        for (Point d = c + 1; d < 8; ++d)
          if ((a ^ b ^ c ^ d) == 0) blocks.push_back({a, b, c, d});
  return DesignInstance(8, 4, std::move(blocks));
}

Perm linear_map(std::function<Point(Point)> f) {
  std::vector<Point> images(8);
  for (Point x = 0; x < 8; ++x) images[x] = f(x);
  return Perm(std::move(images));
}

// AGL(3,2): a translation, the coordinate cycle and a transvection.
PermGroup agl32() {
  return PermGroup(8, {linear_map([](Point x) { return x ^ 1u; }),
                       linear_map([](Point x) { return ((x << 1) | (x >> 2)) & 7u; }),
                       linear_map([](Point x) { return x ^ ((x & 1u) << 1); })});
}

const DesignInstance& plane8() {
  static const DesignInstance d = suzuki::build_inversive_plane(3);
  return d;
}

// Independent oracle: every triple's multiplicity by explicit enumeration.
std::map<Triple, int> triple_counts(const DesignInstance& d) {
  std::map<Triple, int> counts;
  for (const Block& b : d.blocks())
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j)
        for (std::size_t l = j + 1; l < b.size(); ++l) ++counts[{b[i], b[j], b[l]}];
  return counts;
}

// Lexicographically least triple covered zero or several times, by brute force.
std::optional<Triple> least_bad_triple(const DesignInstance& d) {
  const auto counts = triple_counts(d);
  const auto v = static_cast<Point>(d.v());
  for (Point a = 0; a < v; ++a)
    for (Point b = a + 1; b < v; ++b)
      for (Point c = b + 1; c < v; ++c) {
        auto it = counts.find({a, b, c});
        if (it == counts.end() || it->second != 1) return Triple{a, b, c};
      }
  return std::nullopt;
}

DesignInstance mutate(const DesignInstance& d, std::mt19937_64& rng) {
  std::vector<Block> blocks = d.blocks();
  Block& b = blocks[rng() % blocks.size()];
  const std::size_t slot = rng() % b.size();
  Point fresh;
  do fresh = static_cast<Point>(rng() % d.v());
  while (std::find(b.begin(), b.end(), fresh) != b.end());
  b[slot] = fresh;
  std::sort(b.begin(), b.end());
  return DesignInstance(d.v(), d.k(), std::move(blocks));
}

DesignInstance random_instance(std::mt19937_64& rng) {
  const std::size_t v = static_cast<std::size_t>(testgen::uniform(rng, 4, 9));
  const std::size_t k = static_cast<std::size_t>(testgen::uniform(rng, 3, static_cast<std::int64_t>(v)));
  const std::size_t b = static_cast<std::size_t>(testgen::uniform(rng, 1, 12));
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < b; ++i) {
    const Perm p = testgen::random_perm(rng, v);
    Block blk(p.images().begin(), p.images().begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(blk.begin(), blk.end());
    blocks.push_back(blk);
  }
  return DesignInstance(v, k, std::move(blocks));
}

}  // namespace

TEST_SUITE("designs") {
  TEST_CASE("instance construction") {
    const DesignInstance d(5, 3, {{2, 1, 0}, {0, 1, 2}, {4, 3, 2}});
    CHECK(d.b() == 2);
    CHECK(d.blocks()[0] == Block{0, 1, 2});
    CHECK(d.find_block({2, 3, 4}) == std::size_t{1});
    CHECK_FALSE(d.find_block({0, 1, 3}).has_value());
    CHECK_THROWS_AS(DesignInstance(5, 3, {{0, 1}}), ValidationError);
    CHECK_THROWS_AS(DesignInstance(5, 3, {{0, 1, 1}}), ValidationError);
    CHECK_THROWS_AS(DesignInstance(5, 3, {{0, 1, 5}}), ValidationError);
    CHECK_THROWS_AS(DesignInstance(3, 4, {}), ValidationError);
  }

  TEST_CASE("triple ranking") {
    CHECK(choose3(65) == 43680);
    CHECK(triple_rank(0, 1, 2) == 0);
    CHECK(triple_rank(0, 1, 3) == 1);
    CHECK(triple_rank(1, 2, 3) == 3);
    std::set<std::uint64_t> seen;
    for (Point c = 2; c < 20; ++c)
      for (Point b = 1; b < c; ++b)
        for (Point a = 0; a < b; ++a) seen.insert(triple_rank(a, b, c));
    CHECK(seen.size() == choose3(20));
    CHECK(*seen.rbegin() == choose3(20) - 1);
  }

  TEST_CASE("affine space AG(3,2)") {
    const DesignInstance d = ag32();
    CHECK(d.b() == 14);
    CHECK(verify_3design(d).pass);
    CHECK(verify_3design_serial(d).pass);
    const Counts c = check_counts(d);
    CHECK(c.constant_point_count() == std::uint64_t{7});
    CHECK(c.constant_pair_count() == std::uint64_t{3});
    const PermGroup g = agl32();
    CHECK(g.order() == 1344);
    CHECK(is_block_transitive(d, g));
    CHECK(is_flag_transitive(d, g));
    CHECK(flag_orbit_size(d, g) == 14 * 4);
  }

  TEST_CASE("inversive plane of order 8") {
    const DesignInstance& d = plane8();
    CHECK(d.v() == 65);
    CHECK(d.k() == 9);
    CHECK(d.b() == 520);
    CHECK(verify_3design(d).pass);
    const Counts c = check_counts(d);
    CHECK(c.constant_point_count() == std::uint64_t{72});
    CHECK(c.constant_pair_count() == std::uint64_t{9});
    const auto params = sieve::design_params(65, 9);
    CHECK(params.lambda1 == Rational(*c.constant_point_count()));
    CHECK(params.lambda2 == Rational(*c.constant_pair_count()));

    const PermGroup sz = suzuki::suzuki_group(3);
    CHECK(block_orbit_size(d, sz) == 520);
    CHECK(is_block_transitive(d, sz));
    CHECK_FALSE(is_flag_transitive(d, sz));
    CHECK_FALSE(is_block_transitive(d, PermGroup::trivial(65)));
    const PermGroup sz3 = suzuki::suzuki_group_with_frobenius(3);
    CHECK(flag_orbit_size(d, sz3) < 4680);
    CHECK_FALSE(is_flag_transitive(d, sz3));
    CHECK_THROWS_AS(block_orbit_size(d, PermGroup::trivial(64)), PreconditionError);
  }

  TEST_CASE("single block") {
    const DesignInstance d(5, 5, {{0, 1, 2, 3, 4}});
    CHECK(verify_3design(d).pass);
    CHECK(check_counts(d).constant_point_count() == std::uint64_t{1});
    CHECK(check_counts(d).constant_pair_count() == std::uint64_t{1});
  }

  TEST_CASE("non-automorphisms are reported") {
    const DesignInstance d = ag32();
    const PermGroup bad(8, {Perm::from_cycles(8, {{0, 1}})});
    CHECK_THROWS_AS(is_block_transitive(d, bad), NotAnAutomorphism);
    CHECK_THROWS_AS(flag_orbit_size(d, bad), NotAnAutomorphism);
  }

  TEST_CASE("block orbit outcomes") {
    const PermGroup sz = suzuki::suzuki_group(3);
    auto ok = block_orbit_design(sz, suzuki::seed_circle(3), 520);
    REQUIRE(std::holds_alternative<IsDesign>(ok));
    CHECK(std::get<IsDesign>(ok).design.blocks() == plane8().blocks());

    auto wrong = block_orbit_design(PermGroup::trivial(65), {0, 1, 2, 3, 4}, 4368);
    REQUIRE(std::holds_alternative<WrongOrbitSize>(wrong));
    CHECK(std::get<WrongOrbitSize>(wrong).got == 1);

    const PermGroup sz3 = suzuki::suzuki_group_with_frobenius(3);
    const PermGroup c = permgrp::centralizer_of(sz3, suzuki::frobenius_perm(3));
    REQUIRE(c.order() == 60);
    const Block seed = c.orbits()[0];
    REQUIRE(seed.size() == 5);
    auto five = block_orbit_design(sz3, seed, 4368);
    REQUIRE(std::holds_alternative<WrongOrbitSize>(five));
    const std::uint64_t got = std::get<WrongOrbitSize>(five).got;
    CHECK(got == 87360 / permgrp::setwise_stabilizer(sz3, seed).order());
    auto fails = block_orbit_design(sz3, seed, got);
    REQUIRE(std::holds_alternative<FailsTripleCoverage>(fails));
    CHECK(std::get<FailsTripleCoverage>(fails).fault == TripleFault::Uncovered);

    CHECK_THROWS_AS(block_orbit_design(sz, {0, 0, 1}, 1), PreconditionError);
  }

  TEST_CASE("every single-point mutation of the plane is caught") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
      const DesignInstance m = mutate(plane8(), rng);
      const VerifyResult r = verify_3design(m);
      CHECK_FALSE(r.pass);
      REQUIRE(r.witness.has_value());
      const VerifyResult s = verify_3design_serial(m);
      CHECK(s.witness == r.witness);
      CHECK(s.fault == r.fault);
    }
  }

  TEST_CASE("verification agrees with the counting criterion") {
    std::mt19937_64 rng(99);
    std::vector<DesignInstance> cases{ag32(), DesignInstance(6, 6, {{0, 1, 2, 3, 4, 5}})};
    for (int i = 0; i < 300; ++i) cases.push_back(random_instance(rng));
    for (int i = 0; i < 20; ++i) cases.push_back(mutate(ag32(), rng));
    for (const DesignInstance& d : cases) {
      const auto counts = triple_counts(d);
      bool no_duplicate = true;
      for (const auto& [_, n] : counts) no_duplicate &= n == 1;
      const bool criterion = d.b() * choose3(d.k()) == choose3(d.v()) && no_duplicate;
      const VerifyResult r = verify_3design(d);
      CHECK(r.pass == criterion);
      CHECK(r.witness == least_bad_triple(d));
      if (r.witness) {
        auto it = counts.find(*r.witness);
        CHECK(r.fault == (it == counts.end() ? TripleFault::Uncovered : TripleFault::Duplicate));
      }
      const VerifyResult s = verify_3design_serial(d);
      CHECK(s.pass == r.pass);
      CHECK(s.witness == r.witness);
    }
  }

  TEST_CASE("verified designs have the predicted counts") {
    for (const DesignInstance* d : {&plane8()}) {
      const auto params = sieve::design_params(d->v(), d->k());
      const Counts c = check_counts(*d);
      CHECK(Rational(c.constant_point_count().value()) == params.lambda1);
      CHECK(Rational(c.constant_pair_count().value()) == params.lambda2);
    }
    const DesignInstance a = ag32();
    const auto params = sieve::design_params(8, 4);
    CHECK(Rational(check_counts(a).constant_point_count().value()) == params.lambda1);
    CHECK(params.blocks == Rational(a.b()));
  }

  TEST_CASE("flag transitivity implies block transitivity") {
    std::mt19937_64 rng(5);
    std::vector<std::pair<DesignInstance, PermGroup>> cases;
    cases.emplace_back(ag32(), agl32());
    cases.emplace_back(ag32(), PermGroup(8, {agl32().generators()[0]}));
    cases.emplace_back(ag32(), PermGroup(8, {agl32().generators()[1], agl32().generators()[2]}));
    cases.emplace_back(plane8(), suzuki::suzuki_group(3));
    cases.emplace_back(plane8(), suzuki::suzuki_group_with_frobenius(3));
    cases.emplace_back(plane8(), PermGroup::trivial(65));
    for (const auto& [d, g] : cases)
      if (is_flag_transitive(d, g)) CHECK(is_block_transitive(d, g));
  }

  TEST_CASE("design file round trip") {
    std::stringstream s;
    write_design(s, plane8());
    const std::string text = s.str();
    CHECK(text.rfind("65 9 520\n", 0) == 0);
    const DesignInstance back = read_design(s);
    CHECK(back.blocks() == plane8().blocks());
    std::stringstream again;
    write_design(again, back);
    CHECK(again.str() == text);
  }

  TEST_CASE("design file errors") {
    auto line_of = [](const std::string& text) -> std::size_t {
      std::istringstream in(text);
      try {
        read_design(in);
      } catch (const ParseError& e) {
        return e.position();
      }
      return 0;
    };
    CHECK(line_of("# c\n4 3 2\n0 1 2\n") == 2);      // b does not match the header
    CHECK(line_of("4 3 1\n0 1 2\n0 1 3\n") == 3);    // extra block
    CHECK(line_of("4 3 2\n0 1 2\n2 1 0\n") == 3);    // duplicate block
    CHECK(line_of("4 3 1\n0 1 1\n") == 2);           // repeated point
    CHECK(line_of("4 3 1\n0 1 4\n") == 2);           // out of range
    CHECK(line_of("4 3 1\n0 1\n") == 2);             // short block
    CHECK(line_of("4 3\n") == 1);
    CHECK(line_of("") == 1);
    std::istringstream fine("4 3 4\n0 1 2\n0 1 3\n0 2 3 # last two\n1 2 3\n");
    CHECK(verify_3design(read_design(fine)).pass);
  }
}
