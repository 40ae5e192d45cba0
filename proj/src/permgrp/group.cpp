#include <algorithm>
#include <mutex>
#include <random>

#include "steiner/errors.hpp"
#include "steiner/permgrp.hpp"

namespace steiner::permgrp {

struct PermGroup::Cache {
  std::once_flag chain_once;
  std::vector<ChainLevel> chain;
  Integer order = 1;
  std::once_flag orbits_once;
  std::vector<std::vector<Point>> orbits;
};

namespace {

constexpr std::uint64_t kRandomSeed = 0x5eed5eedULL;
constexpr int kTrivialSiftsToStop = 20;

void rebuild_orbit(ChainLevel& level, std::size_t degree) {
  level.transversal.assign(degree, Perm());
  level.transversal_inv.assign(degree, Perm());
  level.orbit.assign(1, level.base);
  level.transversal[level.base] = Perm::identity(degree);
  level.transversal_inv[level.base] = Perm::identity(degree);
  for (std::size_t i = 0; i < level.orbit.size(); ++i) {
    const Point p = level.orbit[i];
    for (const Perm& s : level.generators) {
      const Point q = s(p);
      if (level.transversal[q].degree() != 0) continue;
      level.transversal[q] = level.transversal[p] * s;
      level.transversal_inv[q] = s.inverse() * level.transversal_inv[p];
      level.orbit.push_back(q);
    }
  }
}

struct SiftResult {
  Perm residue;
  std::size_t depth;
};

SiftResult sift(const std::vector<ChainLevel>& chain, Perm g, std::size_t from) {
  for (std::size_t i = from; i < chain.size(); ++i) {
    const Point p = g(chain[i].base);
    if (chain[i].transversal[p].degree() == 0) return {std::move(g), i};
    g = g * chain[i].transversal_inv[p];
  }
  return {std::move(g), chain.size()};
}

bool sifts_through(const SiftResult& r, const std::vector<ChainLevel>& chain) {
  return r.depth == chain.size() && r.residue.is_identity();
}

// Adds a residue that fixes the bases of levels < first..depth to those levels.
void add_residue(std::vector<ChainLevel>& chain, std::size_t first, const SiftResult& r, std::size_t degree) {
  if (r.depth == chain.size()) chain.push_back(ChainLevel{r.residue.first_moved(), {}, {}, {}, {}});
  for (std::size_t l = first; l <= r.depth; ++l) {
    chain[l].generators.push_back(r.residue);
    rebuild_orbit(chain[l], degree);
  }
}

std::vector<ChainLevel> build_chain(std::size_t degree, const std::vector<Perm>& generators) {
  std::vector<ChainLevel> chain;
  if (generators.empty()) return chain;

  // Base: first moved points, extended until no generator fixes all of it.
  for (const Perm& g : generators) {
    bool fixes_base = std::all_of(chain.begin(), chain.end(), [&](const ChainLevel& l) { return g(l.base) == l.base; });
    if (fixes_base) chain.push_back(ChainLevel{g.first_moved(), {}, {}, {}, {}});
  }
  for (std::size_t l = 0; l < chain.size(); ++l) {
    for (const Perm& g : generators) {
      bool in_stab = std::all_of(chain.begin(), chain.begin() + static_cast<std::ptrdiff_t>(l),
                                 [&](const ChainLevel& lv) { return g(lv.base) == lv.base; });
      if (in_stab) chain[l].generators.push_back(g);
    }
    rebuild_orbit(chain[l], degree);
  }

  // Random phase: product replacement, stopping after a run of trivial sifts.
  std::mt19937_64 rng(kRandomSeed);
  std::vector<Perm> slots = generators;
  while (slots.size() < 10) slots.push_back(generators[slots.size() % generators.size()]);
  Perm acc = Perm::identity(degree);
  auto next_random = [&] {
    std::uniform_int_distribution<std::size_t> pick(0, slots.size() - 1);
    std::size_t i = pick(rng), j = pick(rng);
    while (j == i) j = pick(rng);
    slots[i] = (rng() & 1) ? slots[i] * slots[j] : slots[i] * slots[j].inverse();
    acc = acc * slots[i];
    return acc;
  };
  for (int warm = 0; warm < 50; ++warm) next_random();
  for (int trivial = 0; trivial < kTrivialSiftsToStop;) {
    SiftResult r = sift(chain, next_random(), 0);
    if (sifts_through(r, chain)) {
      ++trivial;
    } else {
      add_residue(chain, 0, r, degree);
      trivial = 0;
    }
  }

  // Deterministic phase: every Schreier generator of every level must sift.
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(chain.size()) - 1;
  while (i >= 0) {
    const std::size_t li = static_cast<std::size_t>(i);
    bool extended = false;
    for (std::size_t oi = 0; oi < chain[li].orbit.size() && !extended; ++oi) {
      const Point p = chain[li].orbit[oi];
      for (std::size_t si = 0; si < chain[li].generators.size(); ++si) {
        const ChainLevel& level = chain[li];
        const Perm& s = level.generators[si];
        Perm schreier = level.transversal[p] * s * level.transversal_inv[s(p)];
        if (schreier.is_identity()) continue;
        SiftResult r = sift(chain, std::move(schreier), li + 1);
        if (sifts_through(r, chain)) continue;
        add_residue(chain, li + 1, r, degree);
        i = static_cast<std::ptrdiff_t>(r.depth);
        extended = true;
        break;
      }
    }
    if (!extended) --i;
  }
  return chain;
}

}  // namespace

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> generators)
    : degree_(degree), cache_(std::make_shared<Cache>()) {
  if (degree > kMaxDegree) throw PreconditionError("degree exceeds " + std::to_string(kMaxDegree));
  for (Perm& g : generators) {
    if (g.degree() != degree) throw PreconditionError("generator degree does not match group degree");
    if (!g.is_identity()) generators_.push_back(std::move(g));
  }
}

const std::vector<ChainLevel>& PermGroup::chain() const {
  std::call_once(cache_->chain_once, [this] {
    cache_->chain = build_chain(degree_, generators_);
    Integer order = 1;
    for (const ChainLevel& l : cache_->chain) order *= static_cast<unsigned long>(l.orbit.size());
    cache_->order = order;
  });
  return cache_->chain;
}

const Integer& PermGroup::order() const {
  chain();
  return cache_->order;
}

const std::vector<std::vector<Point>>& PermGroup::orbits() const {
  std::call_once(cache_->orbits_once, [this] {
    std::vector<bool> seen(degree_, false);
    for (Point start = 0; start < degree_; ++start) {
      if (seen[start]) continue;
      std::vector<Point> orb{start};
      seen[start] = true;
      for (std::size_t i = 0; i < orb.size(); ++i) {
        for (const Perm& g : generators_) {
          const Point q = g(orb[i]);
          if (!seen[q]) {
            seen[q] = true;
            orb.push_back(q);
          }
        }
      }
      std::sort(orb.begin(), orb.end());
      cache_->orbits.push_back(std::move(orb));
    }
  });
  return cache_->orbits;
}

bool PermGroup::contains(const Perm& g) const {
  if (g.degree() != degree_) return false;
  const auto& c = chain();
  return sifts_through(sift(c, g, 0), c);
}

std::vector<Point> orbit(const PermGroup& group, Point point) {
  if (point >= group.degree()) throw PreconditionError("point " + std::to_string(point) + " out of range");
  for (const auto& orb : group.orbits())
    if (std::binary_search(orb.begin(), orb.end(), point)) return orb;
  throw SelfCheckFailure("orbit partition misses a point");
}

Integer group_order(const PermGroup& group) { return group.order(); }

}  // namespace steiner::permgrp
