#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

#include "steiner/permgrp.hpp"

namespace steiner::designs {

using permgrp::Point;
using Block = std::vector<Point>;
using Triple = std::array<Point, 3>;

/// Blocks of k points on {0..v-1}, each sorted, the list sorted and
/// deduplicated. The Steiner property is checked separately.
class DesignInstance {
 public:
  DesignInstance() = default;
  /// Throws ValidationError for a block of the wrong size, with repeated
  /// points or points out of range, or when k > v.
  DesignInstance(std::size_t v, std::size_t k, std::vector<Block> blocks);

  std::size_t v() const noexcept { return v_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t b() const noexcept { return blocks_.size(); }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  /// Index of a sorted block, or nullopt.
  std::optional<std::size_t> find_block(const Block& block) const;

 private:
  std::size_t v_ = 0;
  std::size_t k_ = 0;
  std::vector<Block> blocks_;
};

/// Colex rank of a < b < c; exact while C(v,3) < 2^63.
std::uint64_t triple_rank(Point a, Point b, Point c) noexcept;
std::uint64_t choose3(std::uint64_t n) noexcept;

enum class TripleFault { Uncovered, Duplicate };

struct VerifyResult {
  bool pass = false;
  /// Lexicographically least triple covered zero or several times.
  std::optional<Triple> witness;
  TripleFault fault = TripleFault::Uncovered;
};

/// Every 3-subset lies in exactly one block. Blocks are sharded over OpenMP
/// threads into an atomic bitmap of triple ranks. Throws PreconditionError
/// when the bitmap would exceed 1 GiB.
VerifyResult verify_3design(const DesignInstance& design);
/// Serial reference: a byte counter per triple.
VerifyResult verify_3design_serial(const DesignInstance& design);

struct Counts {
  /// Blocks through each point.
  std::vector<std::uint64_t> per_point;
  /// Blocks through each pair a < b, indexed by b(b-1)/2 + a.
  std::vector<std::uint64_t> per_pair;

  std::optional<std::uint64_t> constant_point_count() const;
  std::optional<std::uint64_t> constant_pair_count() const;
};

Counts check_counts(const DesignInstance& design);

/// Size of the orbit of blocks[0]. Throws NotAnAutomorphism when a generator
/// maps some block outside the block set, PreconditionError on degree mismatch.
std::uint64_t block_orbit_size(const DesignInstance& design, const permgrp::PermGroup& group);
/// Size of the orbit of the flag (blocks[0][0], blocks[0]); same errors.
std::uint64_t flag_orbit_size(const DesignInstance& design, const permgrp::PermGroup& group);

bool is_block_transitive(const DesignInstance& design, const permgrp::PermGroup& group);
bool is_flag_transitive(const DesignInstance& design, const permgrp::PermGroup& group);

/// Orbit of a point set under the group, sorted.
std::vector<Block> block_orbit(const permgrp::PermGroup& group, const Block& seed);

struct IsDesign {
  DesignInstance design;
};
struct WrongOrbitSize {
  std::uint64_t got;
};
struct FailsTripleCoverage {
  Triple witness;
  TripleFault fault;
};
using BlockOrbitOutcome = std::variant<IsDesign, WrongOrbitSize, FailsTripleCoverage>;

/// The orbit of seed under the group, checked for size expected_b and then
/// for the Steiner property. Preconditions: seed has distinct in-range points.
BlockOrbitOutcome block_orbit_design(const permgrp::PermGroup& group, const Block& seed, std::uint64_t expected_b);

/// First line "v k b", then b lines of k 0-based points; '#' starts a
/// comment. ParseError positions are 1-based line numbers.
DesignInstance read_design(std::istream& in);
void write_design(std::ostream& out, const DesignInstance& design);

}  // namespace steiner::designs
