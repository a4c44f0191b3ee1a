#include "pvforms/scalar_field.hpp"

#include <algorithm>
#include <cmath>

namespace pvforms {

namespace {

double int_pow(double x, int k) {
  if (k == 0)
    return 1.0;
  return std::pow(x, k);
}

void normalize(std::vector<Monomial> &terms) {
  std::sort(terms.begin(), terms.end(), [](const Monomial &a, const Monomial &b) {
    return key_order(a, b) == std::strong_ordering::less;
  });
  std::vector<Monomial> out;
  out.reserve(terms.size());
  for (const Monomial &m : terms) {
    if (!out.empty() && out.back().same_key(m))
      out.back().coeff += m.coeff;
    else
      out.push_back(m);
    if (!out.empty() && out.back().coeff.is_zero())
      out.pop_back();
  }
  terms = std::move(out);
}

} // namespace

double Monomial::eval(double nR, double cv, double p, double V) const {
  return coeff.to_double() * int_pow(nR, nR_pow) * int_pow(cv, cv_pow) *
         int_pow(p, p_pow) * int_pow(V, V_pow);
}

ScalarField::ScalarField(std::vector<Monomial> terms) : terms_(std::move(terms)) {
  normalize(terms_);
}

ScalarField operator+(const ScalarField &a, const ScalarField &b) {
  std::vector<Monomial> terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return ScalarField(std::move(terms));
}

ScalarField operator-(const ScalarField &a) {
  std::vector<Monomial> terms = a.terms_;
  for (Monomial &m : terms)
    m.coeff = -m.coeff;
  return ScalarField(std::move(terms));
}

ScalarField operator-(const ScalarField &a, const ScalarField &b) {
  return a + (-b);
}

ScalarField operator*(const ScalarField &a, const ScalarField &b) {
  std::vector<Monomial> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const Monomial &x : a.terms_)
    for (const Monomial &y : b.terms_)
      terms.push_back(x * y);
  return ScalarField(std::move(terms));
}

ScalarField operator*(const Rational &c, const ScalarField &a) {
  std::vector<Monomial> terms = a.terms_;
  for (Monomial &m : terms)
    m.coeff *= c;
  return ScalarField(std::move(terms));
}

ScalarField ScalarField::derivative_p() const {
  std::vector<Monomial> out;
  for (const Monomial &m : terms_) {
    if (m.p_pow == 0)
      continue;
    Monomial d = m;
    d.coeff *= Rational(m.p_pow);
    d.p_pow -= 1;
    out.push_back(d);
  }
  return ScalarField(std::move(out));
}

ScalarField ScalarField::derivative_V() const {
  std::vector<Monomial> out;
  for (const Monomial &m : terms_) {
    if (m.V_pow == 0)
      continue;
    Monomial d = m;
    d.coeff *= Rational(m.V_pow);
    d.V_pow -= 1;
    out.push_back(d);
  }
  return ScalarField(std::move(out));
}

bool ScalarField::free_of_p() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Monomial &m) { return m.p_pow == 0; });
}

bool ScalarField::free_of_V() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Monomial &m) { return m.V_pow == 0; });
}

double ScalarField::eval(double nR, double cv, double p, double V) const {
  double s = 0;
  for (const Monomial &m : terms_)
    s += m.eval(nR, cv, p, V);
  return s;
}

} // namespace pvforms
