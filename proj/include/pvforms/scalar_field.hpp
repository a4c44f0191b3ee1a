#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include "pvforms/rational.hpp"

namespace pvforms {

// One term c * nR^g * c_v^d * p^a * V^b. Exponents are plain integers and
// may be negative (Laurent monomials); division in the coefficient language
// is realized that way. A stored monomial never has a zero coefficient.
struct Monomial {
  Rational coeff = 1;
  int nR_pow = 0;
  int cv_pow = 0;
  int p_pow = 0;
  int V_pow = 0;

  // Canonical term key. Fields sort by it, so equal fields have equal
  // representations.
  friend std::strong_ordering key_order(const Monomial &a, const Monomial &b) {
    if (auto c = a.p_pow <=> b.p_pow; c != 0)
      return c;
    if (auto c = a.V_pow <=> b.V_pow; c != 0)
      return c;
    if (auto c = a.nR_pow <=> b.nR_pow; c != 0)
      return c;
    return a.cv_pow <=> b.cv_pow;
  }

  bool same_key(const Monomial &o) const {
    return p_pow == o.p_pow && V_pow == o.V_pow && nR_pow == o.nR_pow &&
           cv_pow == o.cv_pow;
  }

  friend Monomial operator*(const Monomial &a, const Monomial &b) {
    return {a.coeff * b.coeff, a.nR_pow + b.nR_pow, a.cv_pow + b.cv_pow,
            a.p_pow + b.p_pow, a.V_pow + b.V_pow};
  }

  friend bool operator==(const Monomial &a, const Monomial &b) {
    return a.coeff == b.coeff && a.same_key(b);
  }

  double eval(double nR, double cv, double p, double V) const;
};

// A finite sum of monomials kept in canonical form: like terms merged,
// zero terms dropped, terms sorted by key. Equality is therefore decidable
// and representation independent. Closed under +, -, * and scaling.
class ScalarField {
public:
  ScalarField() = default;
  ScalarField(const Monomial &m) : ScalarField(std::vector<Monomial>{m}) {}
  explicit ScalarField(std::vector<Monomial> terms);

  static ScalarField zero() { return {}; }
  static ScalarField constant(const Rational &c) {
    return ScalarField(Monomial{c, 0, 0, 0, 0});
  }
  // c * p^a  and friends
  static ScalarField p_power(int a, const Rational &c = 1) {
    return ScalarField(Monomial{c, 0, 0, a, 0});
  }
  static ScalarField V_power(int b, const Rational &c = 1) {
    return ScalarField(Monomial{c, 0, 0, 0, b});
  }
  static ScalarField nR(const Rational &c = 1) {
    return ScalarField(Monomial{c, 1, 0, 0, 0});
  }
  static ScalarField cv(const Rational &c = 1) {
    return ScalarField(Monomial{c, 0, 1, 0, 0});
  }

  const std::vector<Monomial> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  friend ScalarField operator+(const ScalarField &a, const ScalarField &b);
  friend ScalarField operator-(const ScalarField &a, const ScalarField &b);
  friend ScalarField operator-(const ScalarField &a);
  friend ScalarField operator*(const ScalarField &a, const ScalarField &b);
  friend ScalarField operator*(const Rational &c, const ScalarField &a);

  friend bool operator==(const ScalarField &a, const ScalarField &b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const ScalarField &a, const ScalarField &b) {
    return !(a == b);
  }

  // Termwise power-rule partial derivatives.
  ScalarField derivative_p() const;
  ScalarField derivative_V() const;

  // True when no term depends on p (resp. V).
  bool free_of_p() const;
  bool free_of_V() const;

  double eval(double nR, double cv, double p, double V) const;

private:
  std::vector<Monomial> terms_; // canonical: sorted, merged, no zeros
};

} // namespace pvforms
