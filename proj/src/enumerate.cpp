#include "pvforms/enumerate.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "pvforms/errors.hpp"
#include "pvforms/parse.hpp"

namespace pvforms {

namespace {

int form_complexity(const OneForm &f) {
  int c = 0;
  auto add = [&c](const ScalarField &side) {
    for (const Monomial &m : side.terms())
      c += std::abs(m.nR_pow) + std::abs(m.cv_pow) + std::abs(m.p_pow) +
           std::abs(m.V_pow);
  };
  add(f.A);
  add(f.B);
  return c;
}

// Scale so the first term (A first, then B) has coefficient 1.
OneForm normalize_scale(const OneForm &f) {
  const ScalarField &lead = f.A.is_zero() ? f.B : f.A;
  if (lead.is_zero())
    return f;
  const Rational c = lead.terms().front().coeff;
  return (Rational(1) / c) * f;
}

} // namespace

std::vector<CandidateForm> enumerate_closed_forms(int bound,
                                                  const SymbolTable &syms) {
  if (bound < 0)
    throw DomainError("exponent bound must be nonnegative");

  std::map<std::string, CandidateForm> unique; // canonical text -> candidate
  auto emit = [&](OneForm form, const ExponentTuple &t,
                  CandidateForm::Source pattern) {
    if (form.is_zero())
      return;
    form = normalize_scale(form);
    if (!is_closed(form) || !summands_consistent(form, syms))
      return;
    std::string key = render(form);
    if (unique.count(key))
      return;
    CandidateForm c;
    c.form = form;
    c.source = t;
    c.pattern = pattern;
    c.potential = find_potential(form);
    c.complexity = form_complexity(form);
    unique.emplace(std::move(key), std::move(c));
  };

  for (int alpha = -bound; alpha <= bound; ++alpha) {
    for (int beta = -bound; beta <= bound; ++beta) {
      for (int alpha_p = -bound; alpha_p <= bound; ++alpha_p) {
        for (int beta_p = -bound; beta_p <= bound; ++beta_p) {
          const ExponentTuple t{alpha, beta, alpha_p, beta_p};
          if (!exponent_unit_filter(t))
            continue;
          const OneForm dp_side{ScalarField::p_power(alpha) *
                                    ScalarField::V_power(beta),
                                ScalarField::zero()};
          const OneForm dv_side{ScalarField::zero(),
                                ScalarField::p_power(alpha_p) *
                                    ScalarField::V_power(beta_p)};
          if (beta == 0 && alpha_p == 0) {
            // Both partials vanish identically: the two sides are
            // independently closed and span a two-parameter family.
            emit(dp_side, t, CandidateForm::Source::dp_side);
            emit(dv_side, t, CandidateForm::Source::dv_side);
          } else if (beta == 0) {
            emit(dp_side, t, CandidateForm::Source::dp_side);
          } else if (alpha_p == 0) {
            emit(dv_side, t, CandidateForm::Source::dv_side);
          } else {
            // Coupled closedness: d/dV of the dp side must equal d/dp of
            // the dV side, which pins the coefficient ratio to
            // (alpha', beta).
            emit(Rational(alpha_p) * dp_side + Rational(beta) * dv_side, t,
                 CandidateForm::Source::paired);
          }
        }
      }
    }
  }

  std::vector<CandidateForm> out;
  out.reserve(unique.size());
  for (auto &[key, cand] : unique)
    out.push_back(std::move(cand));
  std::stable_sort(out.begin(), out.end(),
                   [](const CandidateForm &a, const CandidateForm &b) {
                     if (a.complexity != b.complexity)
                       return a.complexity < b.complexity;
                     return render(a.form) < render(b.form);
                   });
  return out;
}

std::vector<TheoremCandidate> theorem_candidates(
    const std::vector<SingletonTheorem> &H, int budget) {
  if (budget < 0)
    throw DomainError("complexity budget must be nonnegative");
  for (const SingletonTheorem &s : H)
    if (s.complexity < 1)
      throw DomainError("singleton complexity must be >= 1");

  // Depth-first walk over index-increasing subsets, pruned by the budget
  // (every member costs at least 1, so depth never exceeds it).
  constexpr std::size_t kMaxCandidates = 1000000;
  std::vector<TheoremCandidate> out;
  TheoremCandidate cur;
  auto walk = [&](auto &&self, std::size_t next) -> void {
    for (std::size_t i = next; i < H.size(); ++i) {
      if (cur.total_complexity + H[i].complexity > budget)
        continue;
      cur.members.push_back(i);
      cur.total_complexity += H[i].complexity;
      if (out.size() == kMaxCandidates)
        throw DomainError("theorem candidate space exceeds " +
                          std::to_string(kMaxCandidates) +
                          " subsets; lower the budget or shrink the "
                          "hypothesis set");
      out.push_back(cur);
      self(self, i + 1);
      cur.total_complexity -= H[i].complexity;
      cur.members.pop_back();
    }
  };
  walk(walk, 0);

  std::stable_sort(out.begin(), out.end(),
                   [](const TheoremCandidate &a, const TheoremCandidate &b) {
                     if (a.total_complexity != b.total_complexity)
                       return a.total_complexity < b.total_complexity;
                     return a.members < b.members;
                   });
  return out;
}

std::vector<SingletonTheorem> entropy_theorem_set() {
  std::vector<SingletonTheorem> H;
  H.push_back({"dS", std::nullopt, 1});
  H.push_back({"p^-1 dp",
               OneForm{ScalarField::p_power(-1), ScalarField::zero()}, 1});
  H.push_back({"V^-1 dV",
               OneForm{ScalarField::zero(), ScalarField::V_power(-1)}, 1});
  return H;
}

} // namespace pvforms
