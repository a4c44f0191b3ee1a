#include "pvforms/dimension.hpp"

#include <sstream>

namespace pvforms {

std::string Dimension::str() const {
  static const char *names[] = {"M", "L", "T", "Th", "N"};
  const int exps[] = {mass, length, time, temperature, amount};
  std::ostringstream os;
  bool any = false;
  for (int i = 0; i < 5; ++i) {
    if (exps[i] == 0)
      continue;
    if (any)
      os << " ";
    os << names[i];
    if (exps[i] != 1)
      os << "^" << exps[i];
    any = true;
  }
  return any ? os.str() : "1";
}

Dimension dim_mul(const Dimension &a, const Dimension &b) {
  return {a.mass + b.mass, a.length + b.length, a.time + b.time,
          a.temperature + b.temperature, a.amount + b.amount};
}

Dimension dim_pow(const Dimension &d, int k) {
  return {d.mass * k, d.length * k, d.time * k, d.temperature * k,
          d.amount * k};
}

SymbolTable SymbolTable::standard() {
  const Dimension pressure{1, -1, -2, 0, 0};
  const Dimension volume{0, 3, 0, 0, 0};
  const Dimension energy{1, 2, -2, 0, 0};
  const Dimension energy_per_temp{1, 2, -2, -1, 0};
  SymbolTable t;
  t.set("p", pressure);
  t.set("V", volume);
  t.set("nR", energy_per_temp);
  t.set("c_v", energy_per_temp);
  t.set("S", energy_per_temp);
  t.set("T", Dimension{0, 0, 0, 1, 0});
  t.set("E", energy);
  return t;
}

const Dimension &SymbolTable::at(const std::string &name) const {
  auto it = dims_.find(name);
  if (it == dims_.end())
    throw UnknownSymbolError("unknown symbol: " + name);
  return it->second;
}

Dimension monomial_dimension(const Monomial &m, const SymbolTable &syms) {
  Dimension d = dim_pow(syms.at("nR"), m.nR_pow);
  d = dim_mul(d, dim_pow(syms.at("c_v"), m.cv_pow));
  d = dim_mul(d, dim_pow(syms.at("p"), m.p_pow));
  d = dim_mul(d, dim_pow(syms.at("V"), m.V_pow));
  return d;
}

bool summands_consistent(const OneForm &f, const SymbolTable &syms) {
  const Dimension dp = syms.at("p");
  const Dimension dV = syms.at("V");
  bool have = false;
  Dimension common;
  auto check = [&](const ScalarField &side, const Dimension &basis) {
    for (const Monomial &m : side.terms()) {
      const Dimension d = dim_mul(monomial_dimension(m, syms), basis);
      if (!have) {
        common = d;
        have = true;
      } else if (!(d == common)) {
        return false;
      }
    }
    return true;
  };
  return check(f.A, dp) && check(f.B, dV);
}

bool exponent_unit_filter(const ExponentTuple &t) {
  if (t.alpha_p != t.alpha + 1)
    return false;
  return -t.alpha + 3 * t.beta - 1 == -t.alpha_p + 3 * t.beta_p + 3;
}

} // namespace pvforms
