#pragma once

#include <json.hpp>

#include "steiner/gcd_cert.hpp"
#include "steiner/sieve.hpp"

namespace steiner::sieve {

/// Coefficients low degree first, each an exact decimal string ("3", "-1/2").
nlohmann::ordered_json coefficients_json(const polycert::QPoly& p);
nlohmann::ordered_json certificate_json(const polycert::GcdCertificate& cert);

/// Stable field order; big integers are decimal strings so the document
/// round-trips exactly and diffs cleanly.
nlohmann::ordered_json report_json(const SieveReport& report);

}  // namespace steiner::sieve
