#include "steiner/gcd_cert.hpp"

#include <utility>

#include "steiner/errors.hpp"

namespace steiner::polycert {

bool GcdCertificate::holds() const {
  return r1.has_integer_coeffs() && p1.has_integer_coeffs() && q1.has_integer_coeffs() &&
         p1 * input_a + q1 * input_b == r1;
}

GcdCertificate poly_xgcd_cert(const QPoly& a, const QPoly& b) {
  if (a.is_zero() && b.is_zero()) throw PreconditionError("xgcd certificate of two zero polynomials");

  // Invariant: s_i * a + t_i * b = r_i.
  QPoly r0 = a, r1 = b;
  QPoly s0 = QPoly::constant(1), s1;
  QPoly t0, t1 = QPoly::constant(1);
  while (!r1.is_zero()) {
    DivMod qr = divmod(r0, r1);
    r0 = std::exchange(r1, qr.remainder);
    s0 = std::exchange(s1, s0 - qr.quotient * s1);
    t0 = std::exchange(t1, t0 - qr.quotient * t1);
  }
  const Rational monic = 1 / r0.leading();
  QPoly g = monic * r0, p = monic * s0, q = monic * t0;

  Integer lcm = 1;
  for (const QPoly* poly : {&g, &p, &q})
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), poly->denominator_lcm().get_mpz_t());
  const Rational scale_up(lcm);
  g = scale_up * g;
  p = scale_up * p;
  q = scale_up * q;

  Integer content = 0;
  for (const QPoly* poly : {&g, &p, &q})
    for (const auto& c : poly->coeffs()) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_num_mpz_t());
  if (content > 1) {
    Rational scale_down(Integer(1), content);
    scale_down.canonicalize();
    g = scale_down * g;
    p = scale_down * p;
    q = scale_down * q;
  }

  GcdCertificate cert{std::move(g), std::move(p), std::move(q), a, b};
  if (!cert.holds()) throw SelfCheckFailure("xgcd certificate identity does not hold");
  return cert;
}

}  // namespace steiner::polycert
