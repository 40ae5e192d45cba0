#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "steiner/arith.hpp"

namespace steiner::permgrp {

using Point = std::uint32_t;

inline constexpr std::size_t kMaxDegree = 10'000;
inline constexpr std::uint64_t kEnumerationCap = 10'000'000;

/// A permutation of {0..n-1} acting on the right: p^(ab) = (p^a)^b.
class Perm {
 public:
  Perm() = default;
  /// Throws PreconditionError unless images is a bijection of {0..n-1}.
  explicit Perm(std::vector<Point> images);

  static Perm identity(std::size_t degree);
  /// Cycles are lists of points, e.g. {{0, 1, 2}, {3, 4}}.
  static Perm from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator()(Point p) const { return images_[p]; }
  const std::vector<Point>& images() const noexcept { return images_; }
  bool is_identity() const noexcept;
  /// The smallest point moved, or degree() for the identity.
  Point first_moved() const noexcept;

  /// First *this, then rhs.
  Perm operator*(const Perm& rhs) const;
  Perm inverse() const;

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  std::vector<Point> images_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

/// One level of a stabilizer chain.
struct ChainLevel {
  Point base;
  std::vector<Perm> generators;
  std::vector<Point> orbit;
  /// transversal[p] maps base to p; empty Perm when p is outside the orbit.
  std::vector<Perm> transversal;
  std::vector<Perm> transversal_inv;
};

/// A permutation group given by generators. Copies share the lazily built
/// stabilizer chain and orbit partition.
class PermGroup {
 public:
  /// Throws PreconditionError when degree exceeds kMaxDegree or a generator
  /// has another degree. Identity generators are dropped.
  PermGroup(std::size_t degree, std::vector<Perm> generators);

  static PermGroup trivial(std::size_t degree) { return PermGroup(degree, {}); }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Perm>& generators() const noexcept { return generators_; }

  const Integer& order() const;
  const std::vector<ChainLevel>& chain() const;
  /// Orbits sorted internally and ordered by least point.
  const std::vector<std::vector<Point>>& orbits() const;
  bool contains(const Perm& g) const;

 private:
  struct Cache;
  std::size_t degree_;
  std::vector<Perm> generators_;
  std::shared_ptr<Cache> cache_;
};

/// Sorted orbit of point. Throws PreconditionError when point is out of range.
std::vector<Point> orbit(const PermGroup& group, Point point);

/// Exact order from a Schreier-Sims chain: random sifting (fixed seed) then a
/// deterministic check of every Schreier generator.
Integer group_order(const PermGroup& group);

/// All elements by breadth-first closure over the generators, identity first.
/// Independent of the stabilizer chain. Throws CapExceeded past cap elements.
std::vector<Perm> enumerate_elements(const PermGroup& group, std::uint64_t cap = kEnumerationCap);

/// The subgroup {g : keep(g)}; keep must define a subgroup. Filters the
/// enumerated elements with OpenMP and returns a small generating set.
PermGroup subgroup_filter(const PermGroup& group, const std::function<bool(const Perm&)>& keep,
                          std::uint64_t cap = kEnumerationCap);
PermGroup subgroup_filter_serial(const PermGroup& group, const std::function<bool(const Perm&)>& keep,
                                 std::uint64_t cap = kEnumerationCap);

/// {g : block^g = block}, by enumeration filtering.
PermGroup setwise_stabilizer(const PermGroup& group, const std::vector<Point>& block,
                             std::uint64_t cap = kEnumerationCap);
PermGroup setwise_stabilizer_serial(const PermGroup& group, const std::vector<Point>& block,
                                    std::uint64_t cap = kEnumerationCap);

/// {g : gx = xg}, by enumeration filtering.
PermGroup centralizer_of(const PermGroup& group, const Perm& x, std::uint64_t cap = kEnumerationCap);

/// Image of a point set, sorted.
std::vector<Point> image_of_set(const std::vector<Point>& set, const Perm& g);

enum class Regularity { Semiregular, QuasiSemiregular, Neither };

struct Classification {
  Regularity kind = Regularity::Neither;
  /// The unique fixed point when quasi-semiregular.
  std::optional<Point> fixed_point;
};

/// Semiregular: every orbit has length |H|. Quasi-semiregular: exactly one
/// fixed point and every other orbit of length |H|. Precondition: H nontrivial.
Classification classify_quasi_semiregular(const PermGroup& h);

std::string regularity_name(Regularity r);

enum class Order3Case {
  /// |H| = t, semiregular: k | v.
  OrderT_Semiregular,
  /// |H| = t, quasi-semiregular: k | v-1 or k-1 | v-1.
  OrderT_QuasiSemiregular,
  /// |H| = t-1, quasi-semiregular: k-1 | v-1.
  OrderTMinus1_QuasiSemiregular,
};

struct Order3Claim {
  Order3Case which;
  std::string statement;
  bool holds = false;
};

/// The divisibility forced on a 3-(v,k,1) design by an automorphism subgroup
/// H of order t or t-1 with the given classification. Throws
/// PreconditionError when t != 3 or no case applies (including Neither).
Order3Claim lemma_order3_conclusions(const Classification& c, const Integer& h_order, unsigned t,
                                     const Integer& v, const Integer& k);

/// "degree n" then one image list per line; '#' starts a comment.
/// ParseError positions are 1-based line numbers.
PermGroup read_group(std::istream& in);
void write_group(std::ostream& out, const PermGroup& group);

}  // namespace steiner::permgrp
