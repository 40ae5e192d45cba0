#include <omp.h>

#include <algorithm>
#include <exception>
#include <set>

#include "steiner/designs.hpp"
#include "steiner/errors.hpp"

namespace steiner::designs {

using permgrp::Perm;
using permgrp::PermGroup;

namespace {

void require_automorphisms(const DesignInstance& design, const PermGroup& group) {
  if (group.degree() != design.v()) throw PreconditionError("group degree does not match the design");
  const auto& blocks = design.blocks();
  const auto n = static_cast<std::ptrdiff_t>(blocks.size());
  bool ok = true;
#pragma omp parallel for schedule(static) reduction(&& : ok)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    for (const Perm& g : group.generators())
      if (!design.find_block(permgrp::image_of_set(blocks[static_cast<std::size_t>(i)], g))) ok = false;
  }
  if (!ok) throw NotAnAutomorphism("a generator maps a block outside the block set");
}

std::size_t block_index(const DesignInstance& design, const Block& image) {
  auto idx = design.find_block(image);
  if (!idx) throw NotAnAutomorphism("a generator maps a block outside the block set");
  return *idx;
}

}  // namespace

std::uint64_t block_orbit_size(const DesignInstance& design, const PermGroup& group) {
  if (design.b() == 0) return 0;
  require_automorphisms(design, group);
  std::vector<bool> seen(design.b(), false);
  std::vector<std::size_t> queue{0};
  seen[0] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Block& blk = design.blocks()[queue[i]];
    for (const Perm& g : group.generators()) {
      const std::size_t j = block_index(design, permgrp::image_of_set(blk, g));
      if (!seen[j]) {
        seen[j] = true;
        queue.push_back(j);
      }
    }
  }
  return queue.size();
}

std::uint64_t flag_orbit_size(const DesignInstance& design, const PermGroup& group) {
  if (design.b() == 0 || design.k() == 0) return 0;
  require_automorphisms(design, group);
  const std::size_t v = design.v();
  auto key = [v](std::size_t point, std::size_t block) { return block * v + point; };
  std::vector<bool> seen(design.b() * v, false);
  std::vector<std::pair<Point, std::size_t>> queue{{design.blocks()[0][0], 0}};
  seen[key(queue[0].first, 0)] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const auto [p, bi] = queue[i];
    for (const Perm& g : group.generators()) {
      const std::size_t bj = block_index(design, permgrp::image_of_set(design.blocks()[bi], g));
      const Point q = g(p);
      if (!seen[key(q, bj)]) {
        seen[key(q, bj)] = true;
        queue.emplace_back(q, bj);
      }
    }
  }
  return queue.size();
}

bool is_block_transitive(const DesignInstance& design, const PermGroup& group) {
  return design.b() > 0 && block_orbit_size(design, group) == design.b();
}

bool is_flag_transitive(const DesignInstance& design, const PermGroup& group) {
  return design.b() > 0 && flag_orbit_size(design, group) == design.b() * design.k();
}

std::vector<Block> block_orbit(const PermGroup& group, const Block& seed) {
  Block start = seed;
  std::sort(start.begin(), start.end());
  if (std::adjacent_find(start.begin(), start.end()) != start.end())
    throw PreconditionError("seed block repeats a point");
  if (!start.empty() && start.back() >= group.degree()) throw PreconditionError("seed block point out of range");
  std::set<Block> seen{start};
  std::vector<const Block*> queue{&*seen.begin()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const Perm& g : group.generators()) {
      auto [it, inserted] = seen.insert(permgrp::image_of_set(*queue[i], g));
      if (inserted) queue.push_back(&*it);
    }
  }
  return {seen.begin(), seen.end()};
}

BlockOrbitOutcome block_orbit_design(const PermGroup& group, const Block& seed, std::uint64_t expected_b) {
  std::vector<Block> orbit = block_orbit(group, seed);
  if (orbit.size() != expected_b) return WrongOrbitSize{orbit.size()};
  DesignInstance design(group.degree(), seed.size(), std::move(orbit));
  VerifyResult r = verify_3design(design);
  if (!r.pass) return FailsTripleCoverage{*r.witness, r.fault};
  return IsDesign{std::move(design)};
}

}  // namespace steiner::designs
