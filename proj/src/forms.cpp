#include "pvforms/forms.hpp"

#include <cmath>
#include <utility>

#include "pvforms/errors.hpp"

namespace pvforms {

Potential::Potential(ScalarField poly, ScalarField log_p_coeff,
                     ScalarField log_V_coeff)
    : poly_(std::move(poly)), log_p_(std::move(log_p_coeff)),
      log_V_(std::move(log_V_coeff)) {
  if (!log_p_.free_of_p() || !log_p_.free_of_V() || !log_V_.free_of_p() ||
      !log_V_.free_of_V())
    throw NotIntegrableError("log coefficient of a potential depends on p or V");
}

double Potential::eval(double nR, double cv, double p, double V) const {
  if (p <= 0 || V <= 0)
    throw DomainError("potential evaluated at nonpositive p or V");
  return poly_.eval(nR, cv, p, V) + log_p_.eval(nR, cv, p, V) * std::log(p) +
         log_V_.eval(nR, cv, p, V) * std::log(V);
}

OneForm d_scalar(const ScalarField &g) {
  return {g.derivative_p(), g.derivative_V()};
}

OneForm d_scalar(const Potential &g) {
  // d(c ln p) = c p^-1 dp since c is free of p and V; same for ln V.
  ScalarField A = g.poly().derivative_p() +
                  g.log_p_coeff() * ScalarField::p_power(-1);
  ScalarField B = g.poly().derivative_V() +
                  g.log_V_coeff() * ScalarField::V_power(-1);
  return {std::move(A), std::move(B)};
}

TwoForm d_one(const OneForm &f) {
  return {f.B.derivative_p() - f.A.derivative_V()};
}

bool is_closed(const OneForm &f) { return d_one(f).is_zero(); }

Potential find_potential(const OneForm &f) {
  if (!is_closed(f))
    throw NotClosedError("1-form is not closed; no potential exists");

  // Integrate the dp component termwise.
  std::vector<Monomial> poly;
  std::vector<Monomial> log_p;
  for (const Monomial &m : f.A.terms()) {
    if (m.p_pow == -1) {
      if (m.V_pow != 0)
        throw NotIntegrableError(
            "p^-1 term with V dependence has no monomial/log potential");
      Monomial c = m;
      c.p_pow = 0;
      log_p.push_back(c);
    } else {
      Monomial t = m;
      t.coeff = t.coeff / Rational(m.p_pow + 1);
      t.p_pow += 1;
      poly.push_back(t);
    }
  }
  ScalarField g_poly{std::move(poly)};
  ScalarField g_log_p{std::move(log_p)};

  // What the dV component still owes after the partial potential. For a
  // closed input the remainder is free of p.
  ScalarField remainder = f.B - g_poly.derivative_V();
  if (!remainder.free_of_p())
    throw NotIntegrableError("closed-form remainder unexpectedly depends on p");

  std::vector<Monomial> poly_v;
  std::vector<Monomial> log_V;
  for (const Monomial &m : remainder.terms()) {
    if (m.V_pow == -1) {
      Monomial c = m;
      c.V_pow = 0;
      log_V.push_back(c);
    } else {
      Monomial t = m;
      t.coeff = t.coeff / Rational(m.V_pow + 1);
      t.V_pow += 1;
      poly_v.push_back(t);
    }
  }
  return Potential(g_poly + ScalarField{std::move(poly_v)},
                   std::move(g_log_p), ScalarField{std::move(log_V)});
}

} // namespace pvforms
