#pragma once

#include <array>
#include <map>
#include <string>

#include "pvforms/errors.hpp"
#include "pvforms/forms.hpp"

namespace pvforms {

// Integer exponent vector over the SI base dimensions used here:
// mass, length, time, temperature, amount. The all-zero vector is
// dimensionless and is the identity under dim_mul.
struct Dimension {
  int mass = 0;
  int length = 0;
  int time = 0;
  int temperature = 0;
  int amount = 0;

  friend bool operator==(const Dimension &, const Dimension &) = default;

  bool dimensionless() const {
    return mass == 0 && length == 0 && time == 0 && temperature == 0 &&
           amount == 0;
  }

  std::string str() const;
};

Dimension dim_mul(const Dimension &a, const Dimension &b);
Dimension dim_pow(const Dimension &d, int k);

// Dimensions of the symbols appearing on the manifold. nR, c_v and S all
// carry energy per temperature for a fixed sample of gas.
class SymbolTable {
public:
  // p, V, nR, c_v, S, T, E with their SI dimensions.
  static SymbolTable standard();

  const Dimension &at(const std::string &name) const;
  void set(const std::string &name, const Dimension &d) { dims_[name] = d; }

private:
  std::map<std::string, Dimension> dims_;
};

// Product of symbol dimensions raised to the monomial's exponents.
// The coefficient is treated as a pure number.
Dimension monomial_dimension(const Monomial &m, const SymbolTable &syms);

// True when all monomials of A dp and of B dV share one common dimension,
// i.e. dim(a_i)*dim(p) == dim(b_j)*dim(V) for every pair of terms. An
// empty side is vacuously consistent.
bool summands_consistent(const OneForm &f, const SymbolTable &syms);

// The exponents of the single-monomial ansatz
//   p^alpha V^beta dp + p^alpha' V^beta' dV.
struct ExponentTuple {
  int alpha = 0;
  int beta = 0;
  int alpha_p = 0;
  int beta_p = 0;

  friend bool operator==(const ExponentTuple &, const ExponentTuple &) =
      default;
};

// Closed-form reduction of the unit constraint for the monomial ansatz:
//   alpha' = alpha + 1
//   -alpha + 3*beta - 1 = -alpha' + 3*beta' + 3
// Equivalent to requiring both summands to carry the same SI dimension
// (the first equation is the mass balance, the second the length balance;
// the time balance repeats the first).
bool exponent_unit_filter(const ExponentTuple &t);

} // namespace pvforms
