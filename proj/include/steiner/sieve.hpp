#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "steiner/arith.hpp"
#include "steiner/catalog.hpp"
#include "steiner/gcd_cert.hpp"

namespace steiner::sieve {

/// Counting data of a putative 3-(v,k,1) design, kept exact; integrality is
/// tested by callers, not assumed.
struct DesignParams {
  Integer v;
  Integer k;
  /// Blocks through a point: (v-1)(v-2)/((k-1)(k-2)).
  Rational lambda1;
  /// Blocks through two points: (v-2)/(k-2).
  Rational lambda2;
  /// v(v-1)(v-2)/(k(k-1)(k-2)).
  Rational blocks;
};

/// Preconditions: v >= 4, 2 < k < v.
DesignParams design_params(const Integer& v, const Integer& k);

/// k with (k-2) | (v-2), 3 < k < v and k < sqrt(v) + 2, ascending.
/// Precondition v >= 5. Propagates FactorBudgetExceeded.
std::vector<Integer> candidate_ks(const Integer& v, const arith::FactorOptions& options = {});

/// Necessary conditions on (v, k), evaluated in this order.
enum class Condition {
  KBound,               ///< k < sqrt(v) + 2
  PairDivisibility,     ///< (k-1)(k-2) | (v-1)(v-2)
  TripleDivisibility,   ///< k(k-1)(k-2) | v(v-1)(v-2)
  StabilizerDivisibility,  ///< (v-1)(v-2) | k(k-1)(k-2) |T_alpha| |Out|
  SubdegreeDivisibility,   ///< (v-1)(v-2) | f k(k-1)(k-2) d(d-1)
  SubdegreeGcdBound,       ///< f gcd(d(d-1), (v-1)(v-2)) > sqrt(v) - 2
};

std::string_view condition_name(Condition c);

/// First failing condition among KBound..StabilizerDivisibility, or nullopt
/// when all pass. out_bound is the |Out(T)| bound c*e.
std::optional<Condition> check_k(const Integer& v, const Integer& k, const Integer& stab_order,
                                 const Integer& out_bound);

/// |G_alpha| k(k-1)(k-2) / ((v-1)(v-2)). Precondition 2 < k < v.
Rational gb_order(const Integer& v, const Integer& k, const Integer& galpha_order);

/// SubdegreeDivisibility or SubdegreeGcdBound on failure, nullopt on pass.
/// Preconditions: d > 1, 2 < k < v, f >= 1.
std::optional<Condition> subdegree_check(const Integer& v, const Integer& d, const Integer& k, const Integer& f);

struct InequalityResult {
  /// Admitted prime powers at which c*e*|r1(q)| > sqrt(v(q)) - 2 (or r1(q) = 0).
  std::vector<arith::PrimePower> feasible;
  /// Cauchy bound Q0 of v - (c q r1 + 2)^2: the inequality fails for all q >= Q0.
  /// Empty in capped mode.
  std::optional<Integer> bound;
  /// Smallest X <= Q0 past which the Sturm chains prove failure; every admitted
  /// q < X was tested. Equals qcap + 1 in capped mode.
  Integer scan_limit;
  /// The degree condition failed and the scan covered q <= qcap only.
  bool capped = false;
  /// A user qcap cut the scan short of scan_limit.
  bool user_capped = false;
};

/// Whether deg v > 2 (deg r1 + 1), which makes the inequality bounded in q.
bool degree_condition(const polycert::QPoly& v_poly, const polycert::GcdCertificate& cert);

struct InequalityBound {
  /// Cauchy bound of v - (c q r1 + 2)^2 (and of r1).
  Integer q0;
  /// Smallest X <= q0 with v - (c q r1 + 2)^2 and r1 positive and root-free on [X, inf).
  Integer scan_limit;
};

/// The termination bound alone, without enumerating q. Precondition:
/// degree_condition holds and the entry has a v polynomial.
InequalityBound inequality_bound(const catalog::CandidateEntry& entry, const polycert::GcdCertificate& cert);

/// Solves c*e*r1(q) > sqrt(v(q)) - 2 over admitted prime powers. Throws
/// PreconditionError when the degree condition fails and qcap is empty, or
/// when the entry has no v polynomial.
InequalityResult solve_q_inequality(const catalog::CandidateEntry& entry, const polycert::GcdCertificate& cert,
                                    std::optional<std::uint64_t> qcap);

/// Certificate for gcd(|T_alpha|, (v-1)(v-2)).
polycert::GcdCertificate stabilizer_certificate(const catalog::CandidateEntry& entry);
/// Certificate for gcd(d(d-1), (v-1)(v-2)) for one subdegree d.
polycert::GcdCertificate subdegree_certificate(const catalog::CandidateEntry& entry, const polycert::QPoly& d);

enum class Exclusion { Inequality, NoKSurvives };

std::string_view exclusion_name(Exclusion e);

struct SurvivingK {
  Integer k;
  /// |G_B| with G_alpha = T_alpha.
  Rational gb_order;
  /// Matches the entry's known family.
  bool expected = false;
};

struct RejectedK {
  Integer k;
  Condition failed;
};

struct SieveVerdict {
  arith::PrimePower q;
  Integer v;
  std::optional<Exclusion> excluded_by;
  std::vector<SurvivingK> survivors;
  std::vector<RejectedK> rejected;
  /// Set when factoring v - 2 exhausted its budget; no k verdict then.
  std::optional<std::string> error;
};

struct CertificateUse {
  std::string role;  ///< "stabilizer" or "subdegree <poly>"
  polycert::GcdCertificate cert;
  bool bounding = false;
};

enum class RangeMode { Fixed, Bounded, Capped, UserCapped };

std::string_view range_mode_name(RangeMode m);

struct SieveReport {
  std::string candidate;
  std::string checksum;
  RangeMode mode = RangeMode::Bounded;
  std::optional<Integer> qcap;
  /// Q0 of the tightest bounding certificate; empty unless bounded.
  std::optional<Integer> qmax_bound;
  /// All admitted q below this were examined (q <= qcap in capped modes).
  Integer scan_limit;
  std::vector<CertificateUse> certificates;
  std::vector<SieveVerdict> verdicts;
  /// Admitted q removed by the inequality without a verdict (bounded mode).
  std::size_t inequality_excluded = 0;

  std::size_t survivor_count() const;
  /// Survivors not accounted for by the entry's known family.
  std::size_t unexpected_survivor_count() const;
};

struct SieveOptions {
  /// Scan limit for entries whose inequality is unbounded, and an optional
  /// cut-off for bounded ones.
  std::optional<std::uint64_t> qcap = 100'000;
  /// Whether qcap also cuts bounded entries short of their proven limit.
  bool cap_bounded = true;
  arith::FactorOptions factor;
};

/// Runs every q verdict in parallel with OpenMP; the result is identical to
/// sieve_candidate_serial.
SieveReport sieve_candidate(const catalog::CandidateEntry& entry, const SieveOptions& options = {});
SieveReport sieve_candidate_serial(const catalog::CandidateEntry& entry, const SieveOptions& options = {});

/// The verdict for one q, independent of the inequality.
SieveVerdict evaluate_q(const catalog::CandidateEntry& entry, const arith::PrimePower& q,
                        const arith::FactorOptions& factor = {});

}  // namespace steiner::sieve
