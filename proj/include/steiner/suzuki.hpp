#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "steiner/designs.hpp"
#include "steiner/permgrp.hpp"

namespace steiner::suzuki {

/// GF(2^e) with elements as bit vectors (bit i is the coefficient of x^i),
/// modulo the numerically least irreducible polynomial of degree e.
class GF2e {
 public:
  using Elt = std::uint32_t;

  /// Precondition 1 <= e <= 20.
  explicit GF2e(unsigned e);

  unsigned e() const noexcept { return e_; }
  Elt size() const noexcept { return q_; }
  /// Including the x^e bit, e.g. 0b1011 for e = 3.
  std::uint32_t modulus() const noexcept { return modulus_; }
  /// A primitive element.
  Elt generator() const noexcept { return exp_[1]; }

  static Elt add(Elt a, Elt b) noexcept { return a ^ b; }
  Elt mul(Elt a, Elt b) const noexcept;
  /// Throws PreconditionError for zero.
  Elt inv(Elt a) const;
  Elt pow(Elt a, std::uint64_t n) const noexcept;
  /// a^(2^j).
  Elt frobenius(Elt a, unsigned j) const noexcept;

 private:
  unsigned e_;
  Elt q_;
  std::uint32_t modulus_;
  std::vector<Elt> exp_;
  std::vector<std::uint32_t> log_;
};

/// Whether a polynomial over GF(2), given as bits, is irreducible.
bool gf2_irreducible(std::uint32_t poly);

struct OvoidPoint {
  bool infinity = false;
  GF2e::Elt x = 0;
  GF2e::Elt y = 0;

  friend bool operator==(const OvoidPoint&, const OvoidPoint&) = default;
};

/// sigma(z) = z^(2^((e+1)/2)), so sigma^2 is squaring.
GF2e::Elt sigma(const GF2e& f, GF2e::Elt z);

/// Infinity at index 0, then (x, y) at 1 + x*q + y.
std::uint32_t point_index(const GF2e& f, const OvoidPoint& p);
OvoidPoint point_at(const GF2e& f, std::uint32_t index);

/// q^2 + 1 points in index order. Precondition: e odd, e >= 3.
std::vector<OvoidPoint> build_ovoid(unsigned e);

/// Homogeneous coordinates (xy + x^(sigma+2) + y^sigma : y : x : 1), or (1:0:0:0).
std::array<GF2e::Elt, 4> projective_point(const GF2e& f, const OvoidPoint& p);

/// Translations tau_(1,0), tau_(0,1), a torus element of order q-1 and the
/// involution swapping infinity with the origin. Self-checks the group order
/// q^2(q^2+1)(q-1), transitivity and the order q^2(q-1) of the stabilizer of
/// infinity; throws SelfCheckFailure on mismatch. Preconditions: e odd,
/// e >= 3, q^2 + 1 within the permgrp degree cap.
std::vector<permgrp::Perm> suzuki_generators(unsigned e);
permgrp::PermGroup suzuki_group(unsigned e);

/// (x, y) -> (x^2, y^2): the field automorphism, of order e.
permgrp::Perm frobenius_perm(unsigned e);
/// Sz(q):e.
permgrp::PermGroup suzuki_group_with_frobenius(unsigned e);

/// The circle through infinity cut by the plane of equal second and third
/// coordinates: {infinity} with (x, x) for all x.
designs::Block seed_circle(unsigned e);

/// Circles as the Sz(q)-orbit of seed_circle; checks b and the Steiner property.
designs::DesignInstance build_inversive_plane(unsigned e);

}  // namespace steiner::suzuki
