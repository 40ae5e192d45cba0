#include <variant>

#include "steiner/errors.hpp"
#include "steiner/suzuki.hpp"

namespace steiner::suzuki {

using permgrp::Perm;
using permgrp::PermGroup;
using permgrp::Point;
using Elt = GF2e::Elt;

namespace {

void require_suzuki_exponent(unsigned e) {
  if (e < 3 || e % 2 == 0) throw PreconditionError("Suzuki fields need odd e >= 3, got " + std::to_string(e));
}

void require_degree_cap(unsigned e) {
  const std::uint64_t q = std::uint64_t{1} << e;
  if (q * q + 1 > permgrp::kMaxDegree)
    throw PreconditionError("q^2 + 1 = " + std::to_string(q * q + 1) + " exceeds the permutation degree cap");
}

// The permutation of ovoid indices induced by a map on affine points plus
// the image of infinity.
template <class Map>
Perm induced(const GF2e& f, Map&& affine, OvoidPoint inf_image) {
  const std::uint32_t q = f.size();
  std::vector<Point> images(static_cast<std::size_t>(q) * q + 1);
  images[0] = point_index(f, inf_image);
  for (Elt x = 0; x < q; ++x)
    for (Elt y = 0; y < q; ++y) images[1 + x * q + y] = point_index(f, affine(x, y));
  return Perm(std::move(images));
}

Perm translation(const GF2e& f, Elt a, Elt b) {
  const Elt sa = sigma(f, a);
  return induced(
      f, [&](Elt x, Elt y) { return OvoidPoint{false, GF2e::add(x, a), GF2e::add(GF2e::add(y, b), f.mul(sa, x))}; },
      OvoidPoint{true, 0, 0});
}

Perm torus(const GF2e& f, Elt kappa) {
  const Elt ks = f.mul(sigma(f, kappa), kappa);
  return induced(
      f, [&](Elt x, Elt y) { return OvoidPoint{false, f.mul(kappa, x), f.mul(ks, y)}; }, OvoidPoint{true, 0, 0});
}

Perm involution(const GF2e& f) {
  return induced(
      f,
      [&](Elt x, Elt y) {
        if (x == 0 && y == 0) return OvoidPoint{true, 0, 0};
        // First homogeneous coordinate; nonzero off the origin.
        const Elt w = GF2e::add(GF2e::add(f.mul(x, y), f.mul(f.mul(sigma(f, x), x), x)), sigma(f, y));
        const Elt wi = f.inv(w);
        return OvoidPoint{false, f.mul(y, wi), f.mul(x, wi)};
      },
      OvoidPoint{false, 0, 0});
}

// gens[0..2] fix infinity; with |G| and transitivity they must generate its
// full stabilizer, which is transitive on the affine points.
void self_check(const PermGroup& g, unsigned e) {
  const Integer q = Integer(1) << e;
  const std::size_t degree = g.degree();
  const std::vector<Perm>& gens = g.generators();
  const Integer expected = q * q * (q * q + 1) * (q - 1);
  if (g.order() != expected)
    throw SelfCheckFailure("Suzuki group order " + g.order().get_str() + ", expected " + expected.get_str());
  if (g.orbits().size() != 1) throw SelfCheckFailure("Suzuki group is not transitive on the ovoid");
  const PermGroup borel(degree, {gens[0], gens[1], gens[2]});
  if (borel.order() != q * q * (q - 1))
    throw SelfCheckFailure("stabilizer of infinity has order " + borel.order().get_str());
  if (borel.orbits().size() != 2 || borel.orbits()[0] != std::vector<Point>{0})
    throw SelfCheckFailure("stabilizer of infinity is not transitive on the affine points");
}

}  // namespace

Elt sigma(const GF2e& f, Elt z) { return f.frobenius(z, (f.e() + 1) / 2); }

std::uint32_t point_index(const GF2e& f, const OvoidPoint& p) {
  return p.infinity ? 0 : 1 + p.x * f.size() + p.y;
}

OvoidPoint point_at(const GF2e& f, std::uint32_t index) {
  const std::uint32_t q = f.size();
  if (index > q * q) throw PreconditionError("ovoid index out of range");
  if (index == 0) return {true, 0, 0};
  return {false, (index - 1) / q, (index - 1) % q};
}

std::vector<OvoidPoint> build_ovoid(unsigned e) {
  require_suzuki_exponent(e);
  if (e > 15) throw PreconditionError("ovoid exponent too large");
  const GF2e f(e);
  std::vector<OvoidPoint> pts;
  pts.reserve(static_cast<std::size_t>(f.size()) * f.size() + 1);
  pts.push_back({true, 0, 0});
  for (Elt x = 0; x < f.size(); ++x)
    for (Elt y = 0; y < f.size(); ++y) pts.push_back({false, x, y});
  return pts;
}

std::array<Elt, 4> projective_point(const GF2e& f, const OvoidPoint& p) {
  if (p.infinity) return {1, 0, 0, 0};
  const Elt w = GF2e::add(GF2e::add(f.mul(p.x, p.y), f.mul(f.mul(sigma(f, p.x), p.x), p.x)), sigma(f, p.y));
  return {w, p.y, p.x, 1};
}

std::vector<Perm> suzuki_generators(unsigned e) { return suzuki_group(e).generators(); }

PermGroup suzuki_group(unsigned e) {
  require_suzuki_exponent(e);
  require_degree_cap(e);
  const GF2e f(e);
  PermGroup g(static_cast<std::size_t>(f.size()) * f.size() + 1,
              {translation(f, 1, 0), translation(f, 0, 1), torus(f, f.generator()), involution(f)});
  self_check(g, e);
  return g;
}

Perm frobenius_perm(unsigned e) {
  require_suzuki_exponent(e);
  require_degree_cap(e);
  const GF2e f(e);
  return induced(
      f, [&](Elt x, Elt y) { return OvoidPoint{false, f.mul(x, x), f.mul(y, y)}; }, OvoidPoint{true, 0, 0});
}

PermGroup suzuki_group_with_frobenius(unsigned e) {
  std::vector<Perm> gens = suzuki_generators(e);
  gens.push_back(frobenius_perm(e));
  const std::size_t degree = gens.front().degree();
  return PermGroup(degree, std::move(gens));
}

designs::Block seed_circle(unsigned e) {
  require_suzuki_exponent(e);
  const GF2e f(e);
  designs::Block circle{0};
  for (Elt x = 0; x < f.size(); ++x) circle.push_back(point_index(f, {false, x, x}));
  return circle;
}

designs::DesignInstance build_inversive_plane(unsigned e) {
  const PermGroup g = suzuki_group(e);
  const std::uint64_t v = g.degree();
  const std::uint64_t k = (std::uint64_t{1} << e) + 1;
  const std::uint64_t b = v * (v - 1) * (v - 2) / (k * (k - 1) * (k - 2));
  auto outcome = designs::block_orbit_design(g, seed_circle(e), b);
  if (auto* ok = std::get_if<designs::IsDesign>(&outcome)) return std::move(ok->design);
  if (auto* wrong = std::get_if<designs::WrongOrbitSize>(&outcome))
    throw SelfCheckFailure("circle orbit has " + std::to_string(wrong->got) + " blocks, expected " + std::to_string(b));
  throw SelfCheckFailure("circle orbit is not a 3-design");
}

}  // namespace steiner::suzuki
