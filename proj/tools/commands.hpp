#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <optional>
#include <string>

#include "steiner/catalog.hpp"

namespace steiner::cli {

enum ExitCode : int { kOk = 0, kSurvivors = 1, kUsage = 2, kSelfCheck = 3 };

inline constexpr std::uint64_t kDefaultQcap = 1'000;
inline constexpr std::uint64_t kLongQcap = 100'000;

struct RunConfig {
  std::string command;
  std::string candidate = "all";
  /// Explicit --qcap; it then also cuts bounded entries short.
  std::optional<std::uint64_t> qcap;
  std::optional<std::string> out;
  std::uint64_t seed = arith::kDefaultPrimalitySeed;
  std::optional<unsigned> workers;
  bool long_run = false;
  unsigned e = 3;
  std::optional<std::string> emit_group;
  std::string design_path;
  std::optional<std::string> group_path;

  std::uint64_t effective_qcap() const { return qcap.value_or(long_run ? kLongQcap : kDefaultQcap); }
};

/// STEINER_SIEVE_CATALOG when set, otherwise the bundled catalog.
const catalog::Catalog& active_catalog();

/// Each command writes its human-readable summary to `log` and returns an
/// exit code; usage problems throw UsageError.
int cmd_xgcd_cert(const RunConfig& cfg, std::ostream& log);
int cmd_sieve(const RunConfig& cfg, std::ostream& log);
int cmd_build_plane(const RunConfig& cfg, std::ostream& log);
int cmd_verify(const RunConfig& cfg, std::ostream& log);

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dispatches on cfg.command and maps library errors onto exit codes.
int run(const RunConfig& cfg, std::ostream& log, std::ostream& err);

}  // namespace steiner::cli
