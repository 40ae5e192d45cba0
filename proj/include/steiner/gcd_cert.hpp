#pragma once

#include "steiner/qpoly.hpp"

namespace steiner::polycert {

/// Integer-coefficient witness p1*input_a + q1*input_b = r1.
///
/// Because p1 and q1 have integer coefficients, for every integer n at which
/// input_a(n) and input_b(n) are integers, gcd(input_a(n), input_b(n))
/// divides r1(n).
struct GcdCertificate {
  QPoly r1;
  QPoly p1;
  QPoly q1;
  QPoly input_a;
  QPoly input_b;

  /// Re-checks the polynomial identity and integrality.
  bool holds() const;
};

/// Extended Euclid over Q with a monic gcd, then cleared of denominators by
/// the lcm over R, P, Q and reduced by the content of (r1, p1, q1) so the
/// certificate is the smallest integral multiple; r1 has positive leading
/// coefficient. Throws PreconditionError when both inputs are zero.
GcdCertificate poly_xgcd_cert(const QPoly& a, const QPoly& b);

}  // namespace steiner::polycert
