#include <charconv>
#include <istream>
#include <ostream>
#include <set>
#include <string>

#include "steiner/designs.hpp"
#include "steiner/errors.hpp"

namespace steiner::designs {

namespace {

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw ParseError("line " + std::to_string(line_no) + ": " + what, line_no);
}

std::vector<std::uint64_t> numbers(std::string_view s, std::size_t line_no) {
  if (auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
  std::vector<std::uint64_t> out;
  for (;;) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    if (s.empty()) return out;
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || (ptr != s.data() + s.size() && !std::isspace(static_cast<unsigned char>(*ptr))))
      fail(line_no, "expected a non-negative integer");
    s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
    out.push_back(value);
  }
}

}  // namespace

DesignInstance read_design(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::array<std::uint64_t, 3>> header;
  std::size_t header_line = 0;
  std::vector<Block> blocks;
  std::set<Block> distinct;
  while (std::getline(in, raw)) {
    ++line_no;
    auto nums = numbers(raw, line_no);
    if (nums.empty()) continue;
    if (!header) {
      if (nums.size() != 3) fail(line_no, "expected header 'v k b'");
      if (nums[1] > nums[0]) fail(line_no, "k exceeds v");
      if (nums[0] > permgrp::kMaxDegree) fail(line_no, "v exceeds " + std::to_string(permgrp::kMaxDegree));
      header = {nums[0], nums[1], nums[2]};
      header_line = line_no;
      continue;
    }
    const auto [v, k, b] = *header;
    if (blocks.size() == b) fail(line_no, "more than " + std::to_string(b) + " blocks");
    if (nums.size() != k)
      fail(line_no, "expected " + std::to_string(k) + " points, got " + std::to_string(nums.size()));
    Block blk;
    for (std::uint64_t p : nums) {
      if (p >= v) fail(line_no, "point " + std::to_string(p) + " out of range");
      blk.push_back(static_cast<Point>(p));
    }
    std::sort(blk.begin(), blk.end());
    if (std::adjacent_find(blk.begin(), blk.end()) != blk.end()) fail(line_no, "block repeats a point");
    if (!distinct.insert(blk).second) fail(line_no, "duplicate block");
    blocks.push_back(std::move(blk));
  }
  if (!header) fail(line_no + 1, "missing header 'v k b'");
  if (blocks.size() != (*header)[2])
    fail(header_line, "header declares " + std::to_string((*header)[2]) + " blocks, file has " +
                          std::to_string(blocks.size()));
  return DesignInstance((*header)[0], (*header)[1], std::move(blocks));
}

void write_design(std::ostream& out, const DesignInstance& design) {
  out << design.v() << ' ' << design.k() << ' ' << design.b() << '\n';
  for (const Block& blk : design.blocks()) {
    for (std::size_t i = 0; i < blk.size(); ++i) out << (i ? " " : "") << blk[i];
    out << '\n';
  }
}

}  // namespace steiner::designs
