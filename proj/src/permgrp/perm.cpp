#include <algorithm>

#include "steiner/errors.hpp"
#include "steiner/permgrp.hpp"

namespace steiner::permgrp {

Perm::Perm(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point p : images_) {
    if (p >= images_.size() || seen[p]) throw PreconditionError("image list is not a permutation");
    seen[p] = true;
  }
}

Perm Perm::identity(std::size_t degree) {
  Perm p;
  p.images_.resize(degree);
  for (std::size_t i = 0; i < degree; ++i) p.images_[i] = static_cast<Point>(i);
  return p;
}

Perm Perm::from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> images = identity(degree).images_;
  std::vector<bool> used(degree, false);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      Point p = cycle[i];
      if (p >= degree || used[p]) throw PreconditionError("cycles are not disjoint or out of range");
      used[p] = true;
      images[p] = cycle[(i + 1) % cycle.size()];
    }
  }
  return Perm(std::move(images));
}

bool Perm::is_identity() const noexcept { return first_moved() == images_.size(); }

Point Perm::first_moved() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return static_cast<Point>(i);
  return static_cast<Point>(images_.size());
}

Perm Perm::operator*(const Perm& rhs) const {
  Perm out;
  out.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out.images_[i] = rhs.images_[images_[i]];
  return out;
}

Perm Perm::inverse() const {
  Perm out;
  out.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out.images_[images_[i]] = static_cast<Point>(i);
  return out;
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  // FNV-1a over the image list.
  std::uint64_t h = 1469598103934665603ULL;
  for (Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

std::vector<Point> image_of_set(const std::vector<Point>& set, const Perm& g) {
  std::vector<Point> out;
  out.reserve(set.size());
  for (Point p : set) out.push_back(g(p));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace steiner::permgrp
