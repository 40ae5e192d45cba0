#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "steiner/arith.hpp"
#include "steiner/qpoly.hpp"

namespace steiner::catalog {

using polycert::QPoly;

enum class Family { B2_twisted, G2_twisted, F4_twisted, D4_triality, G2, F4, E6, E6_twisted, E7, E8 };

/// "2B2", "2G2", "2F4", "3D4", "G2", "F4", "E6", "2E6", "E7", "E8".
std::string_view family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);

enum class Parity { Any, Odd, Even };

struct QConstraints {
  std::optional<std::uint64_t> p;
  Parity e_parity = Parity::Any;
  unsigned e_min = 1;
  Integer q_min = 2;
  std::optional<Integer> q_fixed;
  std::vector<Integer> q_excluded;

  bool admits(const arith::PrimePower& q) const;
};

struct CandidateEntry {
  std::string id;
  Family family = Family::G2;
  std::string t_name;
  std::string stab_name;
  QPoly t_order;
  QPoly stab_order;
  /// c in |Out(T)| <= c*e.
  unsigned out_coeff = 1;
  QConstraints q;
  std::vector<QPoly> subdegrees;
  /// Whether subdegrees lists every nontrivial T_alpha-orbit.
  bool subdegrees_complete = true;
  /// t_order / stab_order when the polynomial division is exact.
  std::optional<QPoly> v_poly;
  /// Block size of a design known to exist in this family, as a polynomial in q.
  std::optional<QPoly> known_k;
  /// Every survivor of this entry is expected (open family).
  bool known_family = false;
  std::string notes;
  /// Hex SHA-256 of the entry's canonical serialization.
  std::string checksum;

  bool is_sporadic() const noexcept { return q.q_fixed.has_value(); }
  /// |T|(q) / |T_alpha|(q); throws ValidationError unless it is an integer.
  Integer v_at(const Integer& q) const;
  /// Admitted prime powers q <= limit, ascending. A fixed-q entry yields its
  /// single q regardless of limit.
  std::vector<arith::PrimePower> admitted_upto(std::uint64_t limit) const;
  bool is_known_survivor(const Integer& q, const Integer& k) const;
};

class Catalog {
 public:
  Catalog() = default;
  /// Throws ValidationError on duplicate ids (compared case-insensitively).
  explicit Catalog(std::vector<CandidateEntry> entries);

  const std::vector<CandidateEntry>& entries() const noexcept { return entries_; }
  /// Case-insensitive lookup.
  const CandidateEntry* find(std::string_view id) const;
  /// Like find() but throws UnknownCandidate.
  const CandidateEntry& at(std::string_view id) const;

 private:
  std::vector<CandidateEntry> entries_;
  std::map<std::string, std::size_t> index_;
};

/// Parses and validates catalog text. ParseError positions are 1-based line
/// numbers; messages name the entry id and field.
Catalog catalog_parse(std::string_view text);
Catalog catalog_load(const std::filesystem::path& path);

/// The bundled data/catalog.toml, embedded at build time. Parsed once.
const Catalog& catalog_builtin();
std::string_view catalog_builtin_text();

/// Runs the semantic checks catalog_parse applies to each entry: positive
/// integral orders with stab | t and v >= 2 at admitted q <= 100, and
/// 1 + sum(subdegrees) = v (< v for a partial list) at admitted q <= 50.
void validate_entry(const CandidateEntry& entry);

}  // namespace steiner::catalog
