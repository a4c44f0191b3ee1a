#pragma once

#include "pvforms/scalar_field.hpp"

namespace pvforms {

// A dp + B dV on the 2D manifold with coordinates (p, V).
struct OneForm {
  ScalarField A; // dp component
  ScalarField B; // dV component

  bool is_zero() const { return A.is_zero() && B.is_zero(); }

  friend OneForm operator+(const OneForm &f, const OneForm &g) {
    return {f.A + g.A, f.B + g.B};
  }
  friend OneForm operator-(const OneForm &f, const OneForm &g) {
    return {f.A - g.A, f.B - g.B};
  }
  friend OneForm operator*(const Rational &c, const OneForm &f) {
    return {c * f.A, c * f.B};
  }
  friend bool operator==(const OneForm &f, const OneForm &g) {
    return f.A == g.A && f.B == g.B;
  }
  friend bool operator!=(const OneForm &f, const OneForm &g) {
    return !(f == g);
  }
};

// C dp^dV. On a 2-manifold the top forms have a single component.
struct TwoForm {
  ScalarField C;

  bool is_zero() const { return C.is_zero(); }

  friend bool operator==(const TwoForm &a, const TwoForm &b) {
    return a.C == b.C;
  }
};

// Scalar antiderivative  poly + L_p * ln p + L_V * ln V.
// The log coefficients must be free of both p and V (only nR, c_v and
// rational factors), so the differential of a Potential is again a
// monomial OneForm.
class Potential {
public:
  Potential() = default;
  Potential(ScalarField poly, ScalarField log_p_coeff, ScalarField log_V_coeff);

  const ScalarField &poly() const { return poly_; }
  const ScalarField &log_p_coeff() const { return log_p_; }
  const ScalarField &log_V_coeff() const { return log_V_; }

  bool is_zero() const {
    return poly_.is_zero() && log_p_.is_zero() && log_V_.is_zero();
  }
  bool has_log_terms() const {
    return !log_p_.is_zero() || !log_V_.is_zero();
  }

  double eval(double nR, double cv, double p, double V) const;

  friend bool operator==(const Potential &a, const Potential &b) {
    return a.poly_ == b.poly_ && a.log_p_ == b.log_p_ && a.log_V_ == b.log_V_;
  }

private:
  ScalarField poly_;
  ScalarField log_p_;
  ScalarField log_V_;
};

// Exterior derivative of a 0-form: dg = (dg/dp) dp + (dg/dV) dV.
OneForm d_scalar(const ScalarField &g);
OneForm d_scalar(const Potential &g);

// Exterior derivative of a 1-form: d(A dp + B dV) = (dB/dp - dA/dV) dp^dV.
TwoForm d_one(const OneForm &f);

bool is_closed(const OneForm &f);

// Constructive antiderivative: returns g with d_scalar(g) == f exactly.
// Throws NotClosedError when f is not closed, NotIntegrableError when a
// closed input would need a potential outside the Potential grammar.
Potential find_potential(const OneForm &f);

} // namespace pvforms
