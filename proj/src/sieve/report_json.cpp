#include "steiner/report.hpp"

namespace steiner::sieve {

using nlohmann::ordered_json;

ordered_json coefficients_json(const polycert::QPoly& p) {
  ordered_json out = ordered_json::array();
  for (const Rational& c : p.coeffs()) out.push_back(c.get_str());
  return out;
}

ordered_json certificate_json(const polycert::GcdCertificate& cert) {
  ordered_json j;
  j["r1"] = coefficients_json(cert.r1);
  j["p1"] = coefficients_json(cert.p1);
  j["q1"] = coefficients_json(cert.q1);
  j["input_a"] = coefficients_json(cert.input_a);
  j["input_b"] = coefficients_json(cert.input_b);
  j["r1_text"] = polycert::poly_print(cert.r1);
  return j;
}

namespace {

ordered_json verdict_json(const SieveVerdict& v) {
  ordered_json j;
  j["q"] = v.q.q.get_str();
  j["p"] = v.q.p;
  j["e"] = v.q.e;
  j["v"] = v.v.get_str();
  j["excluded_by"] = v.excluded_by ? ordered_json(exclusion_name(*v.excluded_by)) : ordered_json(nullptr);
  ordered_json survivors = ordered_json::array();
  for (const SurvivingK& s : v.survivors) {
    ordered_json sj;
    sj["k"] = s.k.get_str();
    sj["gb_order"] = s.gb_order.get_num().get_str() + "/" + s.gb_order.get_den().get_str();
    sj["expected"] = s.expected;
    survivors.push_back(std::move(sj));
  }
  j["surviving_ks"] = std::move(survivors);
  ordered_json rejected = ordered_json::array();
  for (const RejectedK& r : v.rejected) {
    ordered_json rj;
    rj["k"] = r.k.get_str();
    rj["failed"] = condition_name(r.failed);
    rejected.push_back(std::move(rj));
  }
  j["rejected_ks"] = std::move(rejected);
  if (v.error) j["error"] = *v.error;
  return j;
}

}  // namespace

ordered_json report_json(const SieveReport& report) {
  ordered_json j;
  j["candidate"] = report.candidate;
  j["checksum"] = "sha256:" + report.checksum;
  j["mode"] = range_mode_name(report.mode);
  j["qcap"] = report.qcap ? ordered_json(report.qcap->get_str()) : ordered_json(nullptr);
  switch (report.mode) {
    case RangeMode::Bounded:
      j["qmax_bound"] = report.qmax_bound->get_str();
      break;
    case RangeMode::UserCapped:
      j["qmax_bound"] = "user-capped";
      break;
    case RangeMode::Capped:
      j["qmax_bound"] = "capped";
      break;
    case RangeMode::Fixed:
      j["qmax_bound"] = "fixed";
      break;
  }
  j["scan_limit"] = report.scan_limit.get_str();
  ordered_json certs = ordered_json::array();
  for (const CertificateUse& use : report.certificates) {
    ordered_json cj;
    cj["role"] = use.role;
    cj["bounding"] = use.bounding;
    cj["certificate"] = certificate_json(use.cert);
    certs.push_back(std::move(cj));
  }
  j["certificates"] = std::move(certs);
  j["inequality_excluded"] = report.inequality_excluded;
  j["survivors"] = report.survivor_count();
  j["unexpected_survivors"] = report.unexpected_survivor_count();
  ordered_json verdicts = ordered_json::array();
  for (const SieveVerdict& v : report.verdicts) verdicts.push_back(verdict_json(v));
  j["verdicts"] = std::move(verdicts);
  return j;
}

}  // namespace steiner::sieve
