#include <omp.h>

#include <algorithm>
#include <atomic>
#include <functional>

#include "steiner/designs.hpp"
#include "steiner/errors.hpp"

namespace steiner::designs {

namespace {

constexpr std::uint64_t kMaxBitmapBits = std::uint64_t{1} << 33;
constexpr std::uint64_t kMaxSerialTable = std::uint64_t{1} << 30;

void require_rankable(std::size_t v) {
  // C(v,3) < 2^63 for v <= 10^4 with a wide margin; guard the general case.
  if (v > 3'000'000) throw PreconditionError("v too large for triple ranking");
}

std::optional<Triple> first_uncovered(std::size_t v, const std::function<bool(std::uint64_t)>& covered) {
  for (Point a = 0; a < v; ++a)
    for (Point b = a + 1; b < v; ++b)
      for (Point c = b + 1; c < v; ++c)
        if (!covered(triple_rank(a, b, c))) return Triple{a, b, c};
  return std::nullopt;
}

VerifyResult pick_witness(std::optional<Triple> duplicate, std::optional<Triple> uncovered) {
  VerifyResult r;
  if (!duplicate && !uncovered) {
    r.pass = true;
    return r;
  }
  if (duplicate && (!uncovered || *duplicate < *uncovered)) {
    r.witness = duplicate;
    r.fault = TripleFault::Duplicate;
  } else {
    r.witness = uncovered;
    r.fault = TripleFault::Uncovered;
  }
  return r;
}

}  // namespace

DesignInstance::DesignInstance(std::size_t v, std::size_t k, std::vector<Block> blocks) : v_(v), k_(k) {
  if (k > v) throw ValidationError("block size exceeds point count");
  for (Block& block : blocks) {
    if (block.size() != k) throw ValidationError("block of size " + std::to_string(block.size()) + ", expected " +
                                                 std::to_string(k));
    std::sort(block.begin(), block.end());
    if (std::adjacent_find(block.begin(), block.end()) != block.end())
      throw ValidationError("block repeats a point");
    if (!block.empty() && block.back() >= v) throw ValidationError("block point out of range");
  }
  std::sort(blocks.begin(), blocks.end());
  blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
  blocks_ = std::move(blocks);
}

std::optional<std::size_t> DesignInstance::find_block(const Block& block) const {
  auto it = std::lower_bound(blocks_.begin(), blocks_.end(), block);
  if (it == blocks_.end() || *it != block) return std::nullopt;
  return static_cast<std::size_t>(it - blocks_.begin());
}

std::uint64_t choose3(std::uint64_t n) noexcept {
  if (n < 3) return 0;
  return n * (n - 1) / 2 * (n - 2) / 3;
}

std::uint64_t triple_rank(Point a, Point b, Point c) noexcept {
  const std::uint64_t cc = c, bb = b;
  return choose3(cc) + bb * (bb - 1) / 2 + a;
}

VerifyResult verify_3design(const DesignInstance& design) {
  require_rankable(design.v());
  const std::uint64_t total = choose3(design.v());
  if (total > kMaxBitmapBits) throw PreconditionError("triple bitmap would exceed 1 GiB");
  std::vector<std::atomic<std::uint64_t>> bitmap((total + 63) / 64);
  std::optional<Triple> duplicate;
  std::uint64_t duplicate_hits = 0;

  const auto& blocks = design.blocks();
  const auto nblocks = static_cast<std::ptrdiff_t>(blocks.size());
  const std::size_t k = design.k();
#pragma omp parallel
  {
    std::optional<Triple> local_dup;
#pragma omp for schedule(static) reduction(+ : duplicate_hits)
    for (std::ptrdiff_t bi = 0; bi < nblocks; ++bi) {
      const Block& blk = blocks[static_cast<std::size_t>(bi)];
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
          for (std::size_t l = j + 1; l < k; ++l) {
            const std::uint64_t r = triple_rank(blk[i], blk[j], blk[l]);
            const std::uint64_t mask = std::uint64_t{1} << (r & 63);
            if (bitmap[r >> 6].fetch_or(mask, std::memory_order_relaxed) & mask) {
              ++duplicate_hits;
              Triple t{blk[i], blk[j], blk[l]};
              if (!local_dup || t < *local_dup) local_dup = t;
            }
          }
    }
#pragma omp critical(steiner_verify_merge)
    if (local_dup && (!duplicate || *local_dup < *duplicate)) duplicate = local_dup;
  }

  const std::uint64_t distinct = blocks.size() * choose3(k) - duplicate_hits;
  if (distinct == total) return pick_witness(duplicate, std::nullopt);
  auto covered = [&](std::uint64_t r) {
    return ((bitmap[r >> 6].load(std::memory_order_relaxed) >> (r & 63)) & 1) != 0;
  };
  return pick_witness(duplicate, first_uncovered(design.v(), covered));
}

VerifyResult verify_3design_serial(const DesignInstance& design) {
  require_rankable(design.v());
  const std::uint64_t total = choose3(design.v());
  if (total > kMaxSerialTable) throw PreconditionError("triple table would exceed 1 GiB");
  std::vector<std::uint8_t> count(total, 0);
  for (const Block& blk : design.blocks())
    for (std::size_t i = 0; i < blk.size(); ++i)
      for (std::size_t j = i + 1; j < blk.size(); ++j)
        for (std::size_t l = j + 1; l < blk.size(); ++l) {
          std::uint8_t& c = count[triple_rank(blk[i], blk[j], blk[l])];
          if (c < 2) ++c;
        }
  std::optional<Triple> duplicate, uncovered;
  for (Point a = 0; a < design.v() && !duplicate && !uncovered; ++a)
    for (Point b = a + 1; b < design.v() && !duplicate && !uncovered; ++b)
      for (Point c = b + 1; c < design.v(); ++c) {
        const std::uint8_t n = count[triple_rank(a, b, c)];
        if (n == 1) continue;
        (n == 0 ? uncovered : duplicate) = Triple{a, b, c};
        break;
      }
  return pick_witness(duplicate, uncovered);
}

std::optional<std::uint64_t> Counts::constant_point_count() const {
  if (per_point.empty() || !std::all_of(per_point.begin(), per_point.end(), [&](auto c) { return c == per_point[0]; }))
    return std::nullopt;
  return per_point[0];
}

std::optional<std::uint64_t> Counts::constant_pair_count() const {
  if (per_pair.empty() || !std::all_of(per_pair.begin(), per_pair.end(), [&](auto c) { return c == per_pair[0]; }))
    return std::nullopt;
  return per_pair[0];
}

Counts check_counts(const DesignInstance& design) {
  Counts out;
  const std::uint64_t v = design.v();
  out.per_point.assign(v, 0);
  out.per_pair.assign(v * (v - (v > 0)) / 2, 0);
  for (const Block& blk : design.blocks()) {
    for (std::size_t i = 0; i < blk.size(); ++i) {
      ++out.per_point[blk[i]];
      for (std::size_t j = i + 1; j < blk.size(); ++j) {
        const std::uint64_t hi = blk[j];
        ++out.per_pair[hi * (hi - 1) / 2 + blk[i]];
      }
    }
  }
  return out;
}

}  // namespace steiner::designs
