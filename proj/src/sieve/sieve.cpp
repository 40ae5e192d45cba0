#include "steiner/sieve.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>

#include "steiner/errors.hpp"

namespace steiner::sieve {

using polycert::QPoly;

namespace {

Integer k_product(const Integer& k) { return k * (k - 1) * (k - 2); }

void require_k_range(const Integer& v, const Integer& k, long k_floor, const char* op) {
  if (k <= k_floor || k >= v)
    throw PreconditionError(std::string(op) + " requires " + std::to_string(k_floor) + " < k < v");
}

Integer out_bound(const catalog::CandidateEntry& entry, const arith::PrimePower& q) {
  return Integer(entry.out_coeff) * q.e;
}

bool inequality_holds(const catalog::CandidateEntry& entry, const polycert::GcdCertificate& cert,
                      const arith::PrimePower& q, const Integer& v) {
  Integer r = polycert::poly_eval_integer(cert.r1, q.q);
  if (r == 0) return true;
  return arith::exceeds_sqrt_minus_two(abs(r) * out_bound(entry, q), v);
}

const QPoly& require_v_poly(const catalog::CandidateEntry& entry) {
  if (!entry.v_poly) throw PreconditionError("entry " + entry.id + " has no v polynomial");
  return *entry.v_poly;
}

// Admitted prime powers q < limit.
std::vector<arith::PrimePower> admitted_below(const catalog::CandidateEntry& entry, const Integer& limit) {
  if (limit <= 2) return {};
  if (!mpz_fits_ulong_p(Integer(limit - 1).get_mpz_t()))
    throw PreconditionError("scan limit " + limit.get_str() + " is too large to enumerate");
  return entry.admitted_upto(Integer(limit - 1).get_ui());
}

// Smallest X in [2, q0] past which H > 0 and r1 > 0 with no real roots above.
Integer sturm_scan_limit(const QPoly& h, const QPoly& r1, const Integer& q0) {
  const std::vector<QPoly> sh = polycert::sturm_sequence(h);
  const std::vector<QPoly> sr = polycert::sturm_sequence(r1);
  auto settled = [&](const Integer& x) {
    if (polycert::poly_eval(h, x) <= 0 || polycert::poly_eval(r1, x) <= 0) return false;
    return polycert::count_roots_above(sh, x) == 0 && polycert::count_roots_above(sr, x) == 0;
  };
  Integer lo = 2, hi = q0;
  if (!settled(hi)) throw SelfCheckFailure("Cauchy bound does not dominate the real roots");
  while (lo < hi) {
    Integer mid = (lo + hi) / 2;
    if (settled(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

struct Plan {
  std::vector<arith::PrimePower> evaluate;
  std::vector<arith::PrimePower> inequality_failures;
};

Plan plan_report(const catalog::CandidateEntry& entry, const SieveOptions& options, SieveReport& report) {
  report.candidate = entry.id;
  report.checksum = entry.checksum;
  report.qcap = options.qcap ? std::optional<Integer>(Integer(static_cast<unsigned long>(*options.qcap)))
                             : std::nullopt;

  const QPoly& v_poly = require_v_poly(entry);
  report.certificates.push_back({"stabilizer", stabilizer_certificate(entry), false});
  for (const QPoly& d : entry.subdegrees)
    report.certificates.push_back({"subdegree " + polycert::poly_print(d), subdegree_certificate(entry, d), false});

  auto all_hold = [&](const arith::PrimePower& q) {
    const Integer v = entry.v_at(q.q);
    return std::all_of(report.certificates.begin(), report.certificates.end(),
                       [&](const CertificateUse& use) { return inequality_holds(entry, use.cert, q, v); });
  };

  Plan plan;
  if (entry.is_sporadic()) {
    report.mode = RangeMode::Fixed;
    for (const arith::PrimePower& q : entry.admitted_upto(0)) {
      report.scan_limit = q.q + 1;
      (all_hold(q) ? plan.evaluate : plan.inequality_failures).push_back(q);
    }
    return plan;
  }

  std::optional<Integer> limit;
  for (CertificateUse& use : report.certificates) {
    if (!degree_condition(v_poly, use.cert)) continue;
    use.bounding = true;
    InequalityBound bound = inequality_bound(entry, use.cert);
    if (!report.qmax_bound || bound.q0 < *report.qmax_bound) report.qmax_bound = bound.q0;
    if (!limit || bound.scan_limit < *limit) limit = bound.scan_limit;
  }
  bool user_capped = false;
  if (limit && options.qcap && options.cap_bounded && Integer(static_cast<unsigned long>(*options.qcap)) + 1 < *limit) {
    limit = Integer(static_cast<unsigned long>(*options.qcap)) + 1;
    user_capped = true;
  }

  if (limit) {
    report.mode = user_capped ? RangeMode::UserCapped : RangeMode::Bounded;
    report.scan_limit = *limit;
    for (const arith::PrimePower& q : admitted_below(entry, *limit)) {
      if (all_hold(q)) {
        plan.evaluate.push_back(q);
      } else {
        ++report.inequality_excluded;
      }
    }
    return plan;
  }

  if (!options.qcap)
    throw PreconditionError("entry " + entry.id + " has no bounded inequality; a qcap is required");
  report.mode = RangeMode::Capped;
  report.scan_limit = Integer(static_cast<unsigned long>(*options.qcap)) + 1;
  for (const arith::PrimePower& q : admitted_below(entry, report.scan_limit))
    (all_hold(q) ? plan.evaluate : plan.inequality_failures).push_back(q);
  return plan;
}

void merge(const Plan& plan, std::vector<SieveVerdict> evaluated, const catalog::CandidateEntry& entry,
           SieveReport& report) {
  std::vector<SieveVerdict> all = std::move(evaluated);
  for (const arith::PrimePower& q : plan.inequality_failures) {
    SieveVerdict verdict;
    verdict.q = q;
    verdict.v = entry.v_at(q.q);
    verdict.excluded_by = Exclusion::Inequality;
    all.push_back(std::move(verdict));
  }
  std::sort(all.begin(), all.end(), [](const SieveVerdict& a, const SieveVerdict& b) { return a.q.q < b.q.q; });
  report.verdicts = std::move(all);
}

}  // namespace

DesignParams design_params(const Integer& v, const Integer& k) {
  if (v < 4) throw PreconditionError("design_params requires v >= 4");
  require_k_range(v, k, 2, "design_params");
  DesignParams d{v, k, Rational((v - 1) * (v - 2), (k - 1) * (k - 2)), Rational(v - 2, k - 2),
                 Rational(v * (v - 1) * (v - 2), k_product(k))};
  d.lambda1.canonicalize();
  d.lambda2.canonicalize();
  d.blocks.canonicalize();
  return d;
}

std::vector<Integer> candidate_ks(const Integer& v, const arith::FactorOptions& options) {
  if (v < 5) throw PreconditionError("candidate_ks requires v >= 5");
  std::vector<Integer> out;
  for (const Integer& d : arith::divisors(v - 2, options)) {
    const Integer k = d + 2;
    if (k > 3 && k < v && d * d < v) out.push_back(k);
  }
  return out;
}

std::string_view condition_name(Condition c) {
  switch (c) {
    case Condition::KBound: return "k_bound";
    case Condition::PairDivisibility: return "pair_divisibility";
    case Condition::TripleDivisibility: return "triple_divisibility";
    case Condition::StabilizerDivisibility: return "stabilizer_divisibility";
    case Condition::SubdegreeDivisibility: return "subdegree_divisibility";
    case Condition::SubdegreeGcdBound: return "subdegree_gcd_bound";
  }
  return "?";
}

std::optional<Condition> check_k(const Integer& v, const Integer& k, const Integer& stab_order,
                                 const Integer& out_bound) {
  require_k_range(v, k, 3, "check_k");
  if (stab_order < 1 || out_bound < 1) throw PreconditionError("check_k requires positive orders");
  const Integer km2 = k - 2;
  if (km2 * km2 >= v) return Condition::KBound;
  const Integer vv = (v - 1) * (v - 2);
  if (vv % ((k - 1) * km2) != 0) return Condition::PairDivisibility;
  if ((v * vv) % k_product(k) != 0) return Condition::TripleDivisibility;
  if ((k_product(k) * stab_order * out_bound) % vv != 0) return Condition::StabilizerDivisibility;
  return std::nullopt;
}

Rational gb_order(const Integer& v, const Integer& k, const Integer& galpha_order) {
  require_k_range(v, k, 2, "gb_order");
  Rational r(galpha_order * k_product(k), (v - 1) * (v - 2));
  r.canonicalize();
  return r;
}

std::optional<Condition> subdegree_check(const Integer& v, const Integer& d, const Integer& k, const Integer& f) {
  if (d <= 1) throw PreconditionError("subdegree_check requires d > 1");
  if (f < 1) throw PreconditionError("subdegree_check requires f >= 1");
  require_k_range(v, k, 2, "subdegree_check");
  const Integer vv = (v - 1) * (v - 2);
  const Integer dd = d * (d - 1);
  if ((f * k_product(k) * dd) % vv != 0) return Condition::SubdegreeDivisibility;
  Integer g;
  mpz_gcd(g.get_mpz_t(), dd.get_mpz_t(), vv.get_mpz_t());
  if (!arith::exceeds_sqrt_minus_two(f * g, v)) return Condition::SubdegreeGcdBound;
  return std::nullopt;
}

bool degree_condition(const QPoly& v_poly, const polycert::GcdCertificate& cert) {
  return v_poly.degree() > 2 * (cert.r1.degree() + 1);
}

InequalityResult solve_q_inequality(const catalog::CandidateEntry& entry, const polycert::GcdCertificate& cert,
                                    std::optional<std::uint64_t> qcap) {
  const QPoly& v_poly = require_v_poly(entry);
  InequalityResult result;
  auto keep_feasible = [&](const std::vector<arith::PrimePower>& qs) {
    for (const arith::PrimePower& q : qs)
      if (inequality_holds(entry, cert, q, entry.v_at(q.q))) result.feasible.push_back(q);
  };

  if (entry.is_sporadic()) {
    const std::vector<arith::PrimePower> qs = entry.admitted_upto(0);
    if (!qs.empty()) result.scan_limit = qs.front().q + 1;
    keep_feasible(qs);
    return result;
  }

  if (!degree_condition(v_poly, cert)) {
    if (!qcap)
      throw PreconditionError("deg v <= 2 (deg r1 + 1) for entry " + entry.id + "; a qcap is required");
    result.capped = true;
    result.scan_limit = Integer(static_cast<unsigned long>(*qcap)) + 1;
    keep_feasible(admitted_below(entry, result.scan_limit));
    return result;
  }

  const InequalityBound bound = inequality_bound(entry, cert);
  result.bound = bound.q0;
  result.scan_limit = bound.scan_limit;

  Integer limit = result.scan_limit;
  if (qcap && Integer(static_cast<unsigned long>(*qcap)) + 1 < limit) {
    limit = Integer(static_cast<unsigned long>(*qcap)) + 1;
    result.user_capped = true;
  }
  keep_feasible(admitted_below(entry, limit));
  return result;
}

InequalityBound inequality_bound(const catalog::CandidateEntry& entry, const polycert::GcdCertificate& cert) {
  const QPoly& v_poly = require_v_poly(entry);
  if (!degree_condition(v_poly, cert)) throw PreconditionError("inequality_bound requires deg v > 2 (deg r1 + 1)");
  // With e <= q: once v(q) > (c q r1(q) + 2)^2 and r1(q) > 0 the inequality fails.
  const QPoly q_poly = QPoly::indeterminate();
  const QPoly bound_term =
      Rational(Integer(entry.out_coeff)) * q_poly * cert.r1 + QPoly::constant(Rational(2));
  const QPoly h = v_poly - bound_term * bound_term;
  Integer q0 = std::max(polycert::poly_cauchy_root_bound(h), polycert::poly_cauchy_root_bound(cert.r1));
  q0 = std::max(q0, Integer(2));
  return {q0, sturm_scan_limit(h, cert.r1, q0)};
}

polycert::GcdCertificate stabilizer_certificate(const catalog::CandidateEntry& entry) {
  const QPoly& v = require_v_poly(entry);
  const QPoly one = QPoly::constant(1), two = QPoly::constant(2);
  return polycert::poly_xgcd_cert(entry.stab_order, (v - one) * (v - two));
}

polycert::GcdCertificate subdegree_certificate(const catalog::CandidateEntry& entry, const QPoly& d) {
  const QPoly& v = require_v_poly(entry);
  const QPoly one = QPoly::constant(1), two = QPoly::constant(2);
  return polycert::poly_xgcd_cert(d * (d - one), (v - one) * (v - two));
}

std::string_view exclusion_name(Exclusion e) {
  return e == Exclusion::Inequality ? "inequality" : "no_k_survives";
}

std::string_view range_mode_name(RangeMode m) {
  switch (m) {
    case RangeMode::Fixed: return "fixed";
    case RangeMode::Bounded: return "bounded";
    case RangeMode::Capped: return "capped";
    case RangeMode::UserCapped: return "user-capped";
  }
  return "?";
}

std::size_t SieveReport::survivor_count() const {
  std::size_t n = 0;
  for (const SieveVerdict& v : verdicts) n += v.survivors.size();
  return n;
}

std::size_t SieveReport::unexpected_survivor_count() const {
  std::size_t n = 0;
  for (const SieveVerdict& v : verdicts)
    for (const SurvivingK& s : v.survivors) n += s.expected ? 0 : 1;
  return n;
}

SieveVerdict evaluate_q(const catalog::CandidateEntry& entry, const arith::PrimePower& q,
                        const arith::FactorOptions& factor) {
  SieveVerdict verdict;
  verdict.q = q;
  verdict.v = entry.v_at(q.q);
  const Integer& v = verdict.v;
  const Integer stab = polycert::poly_eval_integer(entry.stab_order, q.q);
  const Integer f = out_bound(entry, q);

  std::vector<Integer> ks;
  if (v >= 5) {
    try {
      ks = candidate_ks(v, factor);
    } catch (const FactorBudgetExceeded& err) {
      verdict.error = std::string("factoring v - 2: ") + err.what();
      return verdict;
    }
  }

  std::vector<Integer> degrees;
  for (const QPoly& d : entry.subdegrees) degrees.push_back(polycert::poly_eval_integer(d, q.q));

  for (const Integer& k : ks) {
    std::optional<Condition> failed = check_k(v, k, stab, f);
    for (std::size_t i = 0; !failed && i < degrees.size(); ++i)
      if (degrees[i] > 1) failed = subdegree_check(v, degrees[i], k, f);
    if (failed) {
      verdict.rejected.push_back({k, *failed});
    } else {
      verdict.survivors.push_back({k, gb_order(v, k, stab), entry.is_known_survivor(q.q, k)});
    }
  }
  if (verdict.survivors.empty()) verdict.excluded_by = Exclusion::NoKSurvives;
  return verdict;
}

SieveReport sieve_candidate_serial(const catalog::CandidateEntry& entry, const SieveOptions& options) {
  SieveReport report;
  const Plan plan = plan_report(entry, options, report);
  std::vector<SieveVerdict> evaluated;
  for (const arith::PrimePower& q : plan.evaluate) evaluated.push_back(evaluate_q(entry, q, options.factor));
  merge(plan, std::move(evaluated), entry, report);
  return report;
}

SieveReport sieve_candidate(const catalog::CandidateEntry& entry, const SieveOptions& options) {
  SieveReport report;
  const Plan plan = plan_report(entry, options, report);
  const std::size_t n = plan.evaluate.size();
  std::vector<SieveVerdict> evaluated(n);
  std::vector<std::exception_ptr> errors(n);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < n; ++i) {
    try {
      evaluated[i] = evaluate_q(entry, plan.evaluate[i], options.factor);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const std::exception_ptr& err : errors)
    if (err) std::rethrow_exception(err);

  merge(plan, std::move(evaluated), entry, report);
  return report;
}

}  // namespace steiner::sieve
