#include "commands.hpp"

#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "steiner/designs.hpp"
#include "steiner/errors.hpp"
#include "steiner/report.hpp"
#include "steiner/sieve.hpp"
#include "steiner/suzuki.hpp"

namespace steiner::cli {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open " + path + " for writing");
  return f;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open " + path);
  return f;
}

std::vector<const catalog::CandidateEntry*> selected(const RunConfig& cfg) {
  const catalog::Catalog& cat = active_catalog();
  std::vector<const catalog::CandidateEntry*> out;
  if (cfg.candidate == "all") {
    for (const auto& e : cat.entries()) out.push_back(&e);
  } else {
    out.push_back(&cat.at(cfg.candidate));
  }
  return out;
}

std::string coefficient_list(const polycert::QPoly& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    if (i) s += ", ";
    s += p.coeffs()[i].get_str();
  }
  return s + "]";
}

void print_certificate(std::ostream& log, const std::string& statement, const polycert::GcdCertificate& cert,
                       const polycert::QPoly& v_poly) {
  log << "  " << statement << '\n';
  log << "    r1 = " << polycert::poly_print(cert.r1) << "  coefficients " << coefficient_list(cert.r1) << '\n';
  log << "    p1 coefficients " << coefficient_list(cert.p1) << '\n';
  log << "    q1 coefficients " << coefficient_list(cert.q1) << '\n';
  log << "    deg r1 = " << cert.r1.degree() << ", inequality bounded in q: "
      << (sieve::degree_condition(v_poly, cert) ? "yes" : "no") << '\n';
}

std::string verdict_survivors(const sieve::SieveVerdict& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.survivors.size(); ++i) {
    if (i) s += ", ";
    s += v.survivors[i].k.get_str();
    if (v.survivors[i].expected) s += "*";
  }
  return s + "}";
}

void print_summary(std::ostream& log, const sieve::SieveReport& r) {
  log << r.candidate << ": mode " << sieve::range_mode_name(r.mode) << ", q < " << r.scan_limit.get_str() << ", "
      << r.verdicts.size() << " q evaluated, " << r.inequality_excluded << " removed by the inequality";
  if (r.qmax_bound) log << ", Q0 " << r.qmax_bound->get_str();
  log << '\n';
  for (const auto& v : r.verdicts) {
    if (v.error) log << "  q=" << v.q.q.get_str() << ": " << *v.error << '\n';
    if (!v.survivors.empty()) log << "  q=" << v.q.q.get_str() << " survivors " << verdict_survivors(v) << '\n';
  }
  log << "  survivors " << r.survivor_count() << ", unexpected " << r.unexpected_survivor_count() << '\n';
}

void require_plane_exponent(const RunConfig& cfg) {
  if (cfg.e < 3 || cfg.e % 2 == 0) throw UsageError("--e must be odd and at least 3");
  if (cfg.e > 3 && !cfg.long_run) throw UsageError("--e " + std::to_string(cfg.e) + " needs --long");
  if (cfg.e > 5) throw UsageError("--e above 5 exceeds the permutation degree cap");
}

std::string triple_text(const designs::Triple& t) {
  return "{" + std::to_string(t[0]) + ", " + std::to_string(t[1]) + ", " + std::to_string(t[2]) + "}";
}

}  // namespace

const catalog::Catalog& active_catalog() {
  static const std::unique_ptr<catalog::Catalog> loaded = [] {
    const char* path = std::getenv("STEINER_SIEVE_CATALOG");
    if (path == nullptr || *path == '\0') return std::unique_ptr<catalog::Catalog>();
    return std::make_unique<catalog::Catalog>(catalog::catalog_load(path));
  }();
  return loaded ? *loaded : catalog::catalog_builtin();
}

int cmd_xgcd_cert(const RunConfig& cfg, std::ostream& log) {
  if (cfg.candidate == "all") throw UsageError("xgcd-cert needs --candidate");
  const catalog::CandidateEntry& entry = active_catalog().at(cfg.candidate);
  if (!entry.v_poly) throw ValidationError("entry " + entry.id + " has no v polynomial");
  log << "candidate " << entry.id << '\n';
  log << "  v(q) = " << polycert::poly_print(*entry.v_poly) << ", deg v = " << entry.v_poly->degree() << '\n';

  nlohmann::ordered_json doc;
  doc["candidate"] = entry.id;
  doc["checksum"] = "sha256:" + entry.checksum;
  const auto stab = sieve::stabilizer_certificate(entry);
  print_certificate(log, "gcd(|T_alpha|(q), (v-1)(v-2)(q)) divides r1(q)", stab, *entry.v_poly);
  doc["certificates"].push_back({{"role", "stabilizer"}, {"certificate", sieve::certificate_json(stab)}});
  for (const auto& d : entry.subdegrees) {
    const auto cert = sieve::subdegree_certificate(entry, d);
    print_certificate(log, "gcd(d(d-1), (v-1)(v-2)(q)) divides r1(q) for d = " + polycert::poly_print(d), cert,
                      *entry.v_poly);
    doc["certificates"].push_back(
        {{"role", "subdegree " + polycert::poly_print(d)}, {"certificate", sieve::certificate_json(cert)}});
  }
  if (cfg.out) open_out(*cfg.out) << doc.dump(2) << '\n';
  return kOk;
}

int cmd_sieve(const RunConfig& cfg, std::ostream& log) {
  sieve::SieveOptions options;
  options.qcap = cfg.effective_qcap();
  options.cap_bounded = cfg.qcap.has_value();
  if (options.qcap < 2) throw UsageError("--qcap must be at least 2");

  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  std::size_t unexpected = 0;
  for (const catalog::CandidateEntry* entry : selected(cfg)) {
    const sieve::SieveReport report = sieve::sieve_candidate(*entry, options);
    print_summary(log, report);
    unexpected += report.unexpected_survivor_count();
    reports.push_back(sieve::report_json(report));
  }
  const std::string path = cfg.out.value_or("sieve-report.json");
  open_out(path) << (reports.size() == 1 && cfg.candidate != "all" ? reports[0] : reports).dump(2) << '\n';
  log << "report written to " << path << '\n';
  return unexpected == 0 ? kOk : kSurvivors;
}

int cmd_build_plane(const RunConfig& cfg, std::ostream& log) {
  require_plane_exponent(cfg);
  const permgrp::PermGroup group = suzuki::suzuki_group(cfg.e);
  const designs::DesignInstance plane = suzuki::build_inversive_plane(cfg.e);
  const designs::VerifyResult verdict = designs::verify_3design(plane);
  if (!verdict.pass) throw SelfCheckFailure("constructed plane fails triple coverage");

  const auto counts = designs::check_counts(plane);
  const auto params = sieve::design_params(Integer(static_cast<unsigned long>(plane.v())),
                                           Integer(static_cast<unsigned long>(plane.k())));
  const auto l1 = counts.constant_point_count();
  const auto l2 = counts.constant_pair_count();
  if (!l1 || !l2 || Rational(static_cast<unsigned long>(*l1)) != params.lambda1 ||
      Rational(static_cast<unsigned long>(*l2)) != params.lambda2)
    throw SelfCheckFailure("block counts disagree with the design parameters");

  const std::uint64_t block_orbit = designs::block_orbit_size(plane, group);
  const std::uint64_t flag_orbit = designs::flag_orbit_size(plane, group);
  log << "inversive plane of order " << (1u << cfg.e) << ": v " << plane.v() << ", k " << plane.k() << ", b "
      << plane.b() << ", lambda1 " << *l1 << ", lambda2 " << *l2 << '\n';
  log << "Sz(" << (1u << cfg.e) << ") of order " << group.order().get_str() << ": block orbit " << block_orbit
      << " (block-transitive " << (block_orbit == plane.b() ? "true" : "false") << "), flag orbit " << flag_orbit
      << " of " << plane.b() * plane.k() << " flags (flag-transitive "
      << (flag_orbit == plane.b() * plane.k() ? "true" : "false") << ")\n";

  const std::string path = cfg.out.value_or("inversive-plane-e" + std::to_string(cfg.e) + ".txt");
  {
    std::ofstream f = open_out(path);
    designs::write_design(f, plane);
  }
  log << "design written to " << path << '\n';
  if (cfg.emit_group) {
    std::ofstream f = open_out(*cfg.emit_group);
    permgrp::write_group(f, group);
    log << "generators written to " << *cfg.emit_group << '\n';
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& log) {
  std::ifstream df = open_in(cfg.design_path);
  const designs::DesignInstance design = designs::read_design(df);
  log << "design " << cfg.design_path << ": v " << design.v() << ", k " << design.k() << ", b " << design.b() << '\n';

  const designs::VerifyResult verdict = designs::verify_3design(design);
  bool ok = verdict.pass;
  if (verdict.pass) {
    log << "3-design: pass\n";
  } else {
    log << "3-design: fail, triple " << triple_text(*verdict.witness)
        << (verdict.fault == designs::TripleFault::Duplicate ? " lies in more than one block\n"
                                                             : " lies in no block\n");
  }

  const auto counts = designs::check_counts(design);
  const auto l1 = counts.constant_point_count();
  const auto l2 = counts.constant_pair_count();
  log << "blocks per point: " << (l1 ? std::to_string(*l1) : std::string("not constant"))
      << ", blocks per pair: " << (l2 ? std::to_string(*l2) : std::string("not constant")) << '\n';
  if (verdict.pass && design.k() > 2 && design.k() < design.v() && design.v() >= 4) {
    const auto params = sieve::design_params(Integer(static_cast<unsigned long>(design.v())),
                                             Integer(static_cast<unsigned long>(design.k())));
    if (!l1 || !l2 || Rational(static_cast<unsigned long>(*l1)) != params.lambda1 ||
        Rational(static_cast<unsigned long>(*l2)) != params.lambda2)
      throw SelfCheckFailure("a verified design has counts different from its parameters");
  }

  if (cfg.group_path) {
    std::ifstream gf = open_in(*cfg.group_path);
    const permgrp::PermGroup group = permgrp::read_group(gf);
    try {
      const std::uint64_t bo = designs::block_orbit_size(design, group);
      const std::uint64_t fo = designs::flag_orbit_size(design, group);
      log << "group of order " << group.order().get_str() << ": block orbit " << bo << " (block-transitive "
          << (bo == design.b() ? "true" : "false") << "), flag orbit " << fo << " (flag-transitive "
          << (fo == design.b() * design.k() ? "true" : "false") << ")\n";
    } catch (const NotAnAutomorphism& e) {
      log << "group: " << e.what() << '\n';
      ok = false;
    }
  }
  return ok ? kOk : kSurvivors;
}

int run(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  try {
    arith::set_primality_seed(cfg.seed);
    if (cfg.workers) {
      if (*cfg.workers < 1) throw UsageError("--workers must be at least 1");
      omp_set_num_threads(static_cast<int>(*cfg.workers));
    }
    if (cfg.command == "xgcd-cert") return cmd_xgcd_cert(cfg, log);
    if (cfg.command == "sieve") return cmd_sieve(cfg, log);
    if (cfg.command == "build-plane") return cmd_build_plane(cfg, log);
    if (cfg.command == "verify") return cmd_verify(cfg, log);
    throw UsageError("unknown command " + cfg.command);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnknownCandidate& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const SelfCheckFailure& e) {
    err << "self-check failed: " << e.what() << '\n';
    return kSelfCheck;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kSelfCheck;
  }
}

}  // namespace steiner::cli
