#include <charconv>
#include <istream>
#include <ostream>
#include <string>

#include "steiner/errors.hpp"
#include "steiner/permgrp.hpp"

namespace steiner::permgrp {

namespace {

std::string_view strip(std::string_view s) {
  if (auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::uint64_t> parse_numbers(std::string_view s, std::size_t line_no) {
  std::vector<std::uint64_t> out;
  while (!s.empty()) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    if (s.empty()) break;
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || (ptr != s.data() + s.size() && !std::isspace(static_cast<unsigned char>(*ptr))))
      throw ParseError("line " + std::to_string(line_no) + ": expected a non-negative integer", line_no);
    s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
    out.push_back(value);
  }
  return out;
}

}  // namespace

PermGroup read_group(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::size_t> degree;
  std::vector<Perm> gens;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = strip(raw);
    if (line.empty()) continue;
    if (!degree) {
      constexpr std::string_view kKey = "degree";
      if (line.substr(0, kKey.size()) != kKey)
        throw ParseError("line " + std::to_string(line_no) + ": expected 'degree n'", line_no);
      auto nums = parse_numbers(line.substr(kKey.size()), line_no);
      if (nums.size() != 1 || nums[0] == 0 || nums[0] > kMaxDegree)
        throw ParseError("line " + std::to_string(line_no) + ": degree must be in 1.." + std::to_string(kMaxDegree),
                         line_no);
      degree = nums[0];
      continue;
    }
    auto nums = parse_numbers(line, line_no);
    if (nums.size() != *degree)
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(*degree) + " images, got " +
                           std::to_string(nums.size()),
                       line_no);
    std::vector<Point> images(nums.begin(), nums.end());
    try {
      gens.emplace_back(std::move(images));
    } catch (const PreconditionError&) {
      throw ParseError("line " + std::to_string(line_no) + ": images are not a permutation", line_no);
    }
  }
  if (!degree) throw ParseError("missing 'degree n' header", line_no + 1);
  return PermGroup(*degree, std::move(gens));
}

void write_group(std::ostream& out, const PermGroup& group) {
  out << "degree " << group.degree() << '\n';
  for (const Perm& g : group.generators()) {
    for (std::size_t i = 0; i < g.degree(); ++i) out << (i ? " " : "") << g(static_cast<Point>(i));
    out << '\n';
  }
}

}  // namespace steiner::permgrp
