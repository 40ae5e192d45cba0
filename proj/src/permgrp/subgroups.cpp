#include <omp.h>

#include <algorithm>
#include <exception>
#include <unordered_set>

#include "steiner/errors.hpp"
#include "steiner/permgrp.hpp"

namespace steiner::permgrp {

namespace {

std::vector<Perm> kept_elements_parallel(const std::vector<Perm>& elements,
                                         const std::function<bool(const Perm&)>& keep) {
  std::vector<char> flags(elements.size(), 0);
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(elements.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      flags[static_cast<std::size_t>(i)] = keep(elements[static_cast<std::size_t>(i)]) ? 1 : 0;
    } catch (...) {
#pragma omp critical(steiner_filter_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<Perm> out;
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (flags[i]) out.push_back(elements[i]);
  return out;
}

std::vector<Perm> kept_elements_serial(const std::vector<Perm>& elements,
                                       const std::function<bool(const Perm&)>& keep) {
  std::vector<Perm> out;
  for (const Perm& g : elements)
    if (keep(g)) out.push_back(g);
  return out;
}

// Greedy generating set for a subgroup given as its full element list.
PermGroup generate(std::size_t degree, const std::vector<Perm>& elements) {
  std::vector<Perm> gens;
  PermGroup h = PermGroup::trivial(degree);
  for (const Perm& g : elements) {
    if (h.contains(g)) continue;
    gens.push_back(g);
    h = PermGroup(degree, gens);
  }
  if (h.order() != static_cast<unsigned long>(elements.size()))
    throw PreconditionError("filter predicate does not define a subgroup");
  return h;
}

std::function<bool(const Perm&)> stabilizes(std::size_t degree, const std::vector<Point>& block) {
  std::vector<char> member(degree, 0);
  for (Point p : block) {
    if (p >= degree) throw PreconditionError("block point " + std::to_string(p) + " out of range");
    member[p] = 1;
  }
  std::vector<Point> points;
  for (Point p = 0; p < degree; ++p)
    if (member[p]) points.push_back(p);
  return [member = std::move(member), points = std::move(points)](const Perm& g) {
    return std::all_of(points.begin(), points.end(), [&](Point p) { return member[g(p)] != 0; });
  };
}

}  // namespace

std::vector<Perm> enumerate_elements(const PermGroup& group, std::uint64_t cap) {
  std::unordered_set<Perm, PermHash> seen;
  std::vector<const Perm*> order;
  auto admit = [&](Perm p) {
    auto [it, inserted] = seen.insert(std::move(p));
    if (!inserted) return;
    if (seen.size() > cap) throw CapExceeded("group has more than " + std::to_string(cap) + " elements");
    order.push_back(&*it);
  };
  admit(Perm::identity(group.degree()));
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const Perm& s : group.generators()) admit(*order[i] * s);
  }
  std::vector<Perm> out;
  out.reserve(order.size());
  for (const Perm* p : order) out.push_back(*p);
  return out;
}

PermGroup subgroup_filter(const PermGroup& group, const std::function<bool(const Perm&)>& keep, std::uint64_t cap) {
  return generate(group.degree(), kept_elements_parallel(enumerate_elements(group, cap), keep));
}

PermGroup subgroup_filter_serial(const PermGroup& group, const std::function<bool(const Perm&)>& keep,
                                 std::uint64_t cap) {
  return generate(group.degree(), kept_elements_serial(enumerate_elements(group, cap), keep));
}

PermGroup setwise_stabilizer(const PermGroup& group, const std::vector<Point>& block, std::uint64_t cap) {
  return subgroup_filter(group, stabilizes(group.degree(), block), cap);
}

PermGroup setwise_stabilizer_serial(const PermGroup& group, const std::vector<Point>& block, std::uint64_t cap) {
  return subgroup_filter_serial(group, stabilizes(group.degree(), block), cap);
}

PermGroup centralizer_of(const PermGroup& group, const Perm& x, std::uint64_t cap) {
  if (x.degree() != group.degree()) throw PreconditionError("element degree does not match group degree");
  return subgroup_filter(group, [&x](const Perm& g) { return g * x == x * g; }, cap);
}

Classification classify_quasi_semiregular(const PermGroup& h) {
  const Integer& order = h.order();
  if (order == 1) throw PreconditionError("classification requires a nontrivial group");
  std::vector<Point> fixed;
  bool others_regular = true;
  for (const auto& orb : h.orbits()) {
    if (orb.size() == 1) {
      fixed.push_back(orb.front());
    } else if (order != static_cast<unsigned long>(orb.size())) {
      others_regular = false;
    }
  }
  if (!others_regular) return {Regularity::Neither, std::nullopt};
  if (fixed.empty()) return {Regularity::Semiregular, std::nullopt};
  if (fixed.size() == 1) return {Regularity::QuasiSemiregular, fixed.front()};
  return {Regularity::Neither, std::nullopt};
}

std::string regularity_name(Regularity r) {
  switch (r) {
    case Regularity::Semiregular: return "semiregular";
    case Regularity::QuasiSemiregular: return "quasi_semiregular";
    case Regularity::Neither: return "neither";
  }
  return "?";
}

Order3Claim lemma_order3_conclusions(const Classification& c, const Integer& h_order, unsigned t,
                                     const Integer& v, const Integer& k) {
  if (t != 3) throw PreconditionError("order-3 conclusions need t = 3");
  if (k < 2 || v <= k) throw PreconditionError("order-3 conclusions need 2 <= k < v");
  auto divides = [](const Integer& a, const Integer& b) { return b % a == 0; };
  const Integer tt = t;
  if (h_order == tt && c.kind == Regularity::Semiregular)
    return {Order3Case::OrderT_Semiregular, "k | v", divides(k, v)};
  if (h_order == tt && c.kind == Regularity::QuasiSemiregular)
    return {Order3Case::OrderT_QuasiSemiregular, "k | v-1 or k-1 | v-1", divides(k, v - 1) || divides(k - 1, v - 1)};
  if (h_order == tt - 1 && c.kind == Regularity::QuasiSemiregular)
    return {Order3Case::OrderTMinus1_QuasiSemiregular, "k-1 | v-1", divides(k - 1, v - 1)};
  throw PreconditionError("no conclusion for a " + regularity_name(c.kind) + " group of order " + h_order.get_str());
}

}  // namespace steiner::permgrp
