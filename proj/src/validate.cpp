#include "pvforms/validate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "pvforms/parse.hpp"

namespace pvforms {

namespace {

// Numeric value of A dp/du + B dV/du at parameter u of a segment.
class SegmentIntegrand {
public:
  SegmentIntegrand(const OneForm &f, const PathSegment &seg, const GasSpec &g)
      : f_(f), seg_(seg), nR_(g.nR()), cv_(g.cv()) {}

  double operator()(double u) const {
    double p, V, dp, dV;
    seg_.at(u, p, V);
    seg_.velocity(u, dp, dV);
    if (!(p > 0) || !(V > 0))
      throw DomainError("trajectory left the positive quadrant");
    const double y = f_.A.eval(nR_, cv_, p, V) * dp +
                     f_.B.eval(nR_, cv_, p, V) * dV;
    if (!std::isfinite(y))
      throw NonFiniteError("integrand overflow during pullback");
    return y;
  }

private:
  const OneForm &f_;
  const PathSegment &seg_;
  double nR_, cv_;
};

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson(const F &f, double a, double fa, double b, double fb,
                        double m, double fm, double whole, double eps,
                        int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps)
    return left + right + delta / 15.0;
  return adaptive_simpson(f, a, fa, m, fm, lm, flm, left, 0.5 * eps,
                          depth - 1) +
         adaptive_simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * eps,
                          depth - 1);
}

template <typename F>
double integrate(const F &f, double a, double b, double rel_tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = simpson(fa, fm, fb, b - a);
  // Coarse magnitude estimate for turning the relative tolerance into an
  // absolute one; floored so an identically-zero integrand terminates.
  const double scale = std::max({std::abs(whole), std::abs(fa) * (b - a),
                                 std::abs(fb) * (b - a), 1e-30});
  return adaptive_simpson(f, a, fa, b, fb, 0.5 * (a + b), fm, whole,
                          rel_tol * scale, 48);
}

} // namespace

double pullback_integral(const OneForm &f, const PathSegment &seg,
                         const GasSpec &g, double rel_tol) {
  seg.validate();
  const SegmentIntegrand integrand(f, seg, g);
  const double v = integrate(integrand, 0.0, 1.0, rel_tol);
  if (!std::isfinite(v))
    throw NonFiniteError("pullback integral is not finite");
  return v;
}

double pullback_integral(const OneForm &f, const Trajectory &traj,
                         const GasSpec &g, double rel_tol) {
  double total = 0;
  for (const PathSegment &seg : traj.segments)
    total += pullback_integral(f, seg, g, rel_tol);
  return total;
}

double pullback_integral_records(const OneForm &f,
                                 const std::vector<ExperimentRecord> &recs,
                                 const GasSpec &g) {
  if (recs.size() < 2)
    throw ValidationError("need at least 2 records to integrate");
  const double nR = g.nR(), cv = g.cv();
  double total = 0;
  for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
    const ExperimentRecord &r0 = recs[i];
    const ExperimentRecord &r1 = recs[i + 1];
    if (!(r0.p > 0) || !(r0.V > 0) || !(r1.p > 0) || !(r1.V > 0))
      throw DomainError("record outside the positive quadrant");
    const double A0 = f.A.eval(nR, cv, r0.p, r0.V);
    const double A1 = f.A.eval(nR, cv, r1.p, r1.V);
    const double B0 = f.B.eval(nR, cv, r0.p, r0.V);
    const double B1 = f.B.eval(nR, cv, r1.p, r1.V);
    total += 0.5 * (A0 + A1) * (r1.p - r0.p) + 0.5 * (B0 + B1) * (r1.V - r0.V);
  }
  if (!std::isfinite(total))
    throw NonFiniteError("trapezoid integral is not finite");
  return total;
}

std::vector<SegmentIntegrals>
segment_integrals(const std::vector<OneForm> &forms,
                  const std::vector<std::vector<ExperimentRecord>> &groups,
                  const GasSpec &g, const Trajectory *traj) {
  if (groups.empty())
    throw ValidationError("no segments to integrate over");
  if (traj && traj->segments.size() != groups.size())
    throw ValidationError("trajectory and record grouping disagree on "
                          "segment count");
  std::vector<SegmentIntegrals> out;
  out.reserve(groups.size());
  for (std::size_t si = 0; si < groups.size(); ++si) {
    const auto &recs = groups[si];
    if (recs.size() < 2)
      throw ValidationError("segment " + std::to_string(si) +
                            " has fewer than 2 records");
    SegmentIntegrals s;
    s.segment_id = si;
    s.delta_S = recs.back().S - recs.front().S;
    s.integrals.reserve(forms.size());
    for (const OneForm &f : forms)
      s.integrals.push_back(traj
                                ? pullback_integral(f, traj->segments[si], g)
                                : pullback_integral_records(f, recs, g));
    out.push_back(std::move(s));
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
  case Verdict::Valid: return "Valid";
  case Verdict::Invalid: return "Invalid";
  case Verdict::Underdetermined: return "Underdetermined";
  }
  return "?";
}

FitReport fit_theorem(const std::vector<SegmentIntegrals> &si,
                      const FitOptions &opts) {
  if (si.empty())
    throw ValidationError("fit needs at least one segment");
  const std::size_t m = si.size();
  const std::size_t n = si[0].integrals.size();
  for (const SegmentIntegrals &s : si)
    if (s.integrals.size() != n)
      throw ValidationError("inconsistent integral counts across segments");

  Eigen::MatrixXd M(m, n);
  Eigen::VectorXd b(m);
  for (std::size_t i = 0; i < m; ++i) {
    b(static_cast<Eigen::Index>(i)) = si[i].delta_S;
    for (std::size_t j = 0; j < n; ++j)
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          si[i].integrals[j];
  }

  FitReport rep;
  rep.segment_count = m;
  rep.unknown_count = n;

  const double b_norm = b.norm();
  // Entropy changes this small cannot be distinguished from rounding in
  // the oracle data; the only fit they support is the all-zero one.
  const bool trivial_rhs = b.lpNorm<Eigen::Infinity>() <= 1e-10;

  if (n == 0) {
    rep.rank = 0;
    rep.condition = 1.0;
    rep.residual_rel = trivial_rhs ? 0.0 : 1.0;
    if (trivial_rhs) {
      rep.verdict = Verdict::Underdetermined;
      rep.reason = "no unknowns and no entropy variation";
    } else {
      rep.verdict = Verdict::Invalid;
      rep.reason = "nonzero entropy change with no terms to explain it";
    }
    return rep;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd &sigma = svd.singularValues();
  const double sigma_max = sigma.size() ? sigma(0) : 0.0;
  const double rank_tol = sigma_max * 1e-12 * std::max(m, n);
  int rank = 0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k)
    if (sigma(k) > rank_tol)
      ++rank;
  const double sigma_min = sigma(sigma.size() - 1);
  rep.rank = rank;
  rep.condition = sigma_min > 0
                      ? sigma_max / sigma_min
                      : std::numeric_limits<double>::infinity();

  // Minimum-norm least squares through the SVD (rank-deficient safe).
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) <= rank_tol)
      continue;
    c += svd.matrixV().col(k) * (svd.matrixU().col(k).dot(b) / sigma(k));
  }
  rep.coefficients.assign(c.data(), c.data() + c.size());
  const double res = (M * c - b).norm();
  rep.residual_rel = b_norm > 0 ? res / b_norm : 0.0;

  if (trivial_rhs) {
    rep.verdict = Verdict::Underdetermined;
    rep.reason = "trivial right-hand side (no entropy variation)";
  } else if (rank < static_cast<int>(n)) {
    rep.verdict = Verdict::Underdetermined;
    rep.reason = "rank " + std::to_string(rank) + " < " + std::to_string(n) +
                 " unknowns";
  } else if (m < 2) {
    rep.verdict = Verdict::Underdetermined;
    rep.reason = "a single segment cannot cross-check a fit";
  } else if (rep.condition > opts.condition_max) {
    rep.verdict = Verdict::Underdetermined;
    rep.reason = "ill-conditioned system (near rank-deficient)";
  } else if (rep.residual_rel > opts.tol_rel) {
    rep.verdict = Verdict::Invalid;
    rep.reason = "residual above tolerance";
  } else {
    rep.verdict = Verdict::Valid;
  }
  return rep;
}

NumericPotential numeric_potential(const Potential &g, const GasSpec &gas) {
  NumericPotential out;
  const double nR = gas.nR(), cv = gas.cv();
  for (const Monomial &m : g.poly().terms()) {
    NumericPotential::Term t;
    t.coeff = m.coeff.to_double() * std::pow(nR, m.nR_pow) *
              std::pow(cv, m.cv_pow);
    t.p_pow = m.p_pow;
    t.V_pow = m.V_pow;
    out.poly.push_back(t);
  }
  out.log_p_coeff = g.log_p_coeff().eval(nR, cv, 1.0, 1.0);
  out.log_V_coeff = g.log_V_coeff().eval(nR, cv, 1.0, 1.0);
  return out;
}

std::string render(const NumericPotential &g) {
  if (g.empty())
    return "0";
  std::ostringstream os;
  os.precision(10);
  bool first = true;
  auto sep = [&]() {
    if (!first)
      os << " + ";
    first = false;
  };
  for (const NumericPotential::Term &t : g.poly) {
    sep();
    os << t.coeff;
    if (t.p_pow)
      os << "*p^" << t.p_pow;
    if (t.V_pow)
      os << "*V^" << t.V_pow;
  }
  if (g.log_p_coeff != 0) {
    sep();
    os << g.log_p_coeff << "*ln(p)";
  }
  if (g.log_V_coeff != 0) {
    sep();
    os << g.log_V_coeff << "*ln(V)";
  }
  return os.str();
}

namespace {

int verdict_rank(Verdict v) {
  switch (v) {
  case Verdict::Valid: return 0;
  case Verdict::Underdetermined: return 1;
  case Verdict::Invalid: return 2;
  }
  return 3;
}

} // namespace

std::vector<DiscoveryResult>
discover(const std::vector<std::vector<ExperimentRecord>> &groups,
         const std::vector<TheoremCandidate> &candidates,
         const std::vector<SingletonTheorem> &H, const GasSpec &g,
         const FitOptions &opts, const Trajectory *traj) {
  // Integrate each distinct hypothesis form once.
  std::vector<OneForm> forms;
  std::vector<int> column_of(H.size(), -1);
  for (std::size_t i = 0; i < H.size(); ++i) {
    if (H[i].observed())
      continue;
    column_of[i] = static_cast<int>(forms.size());
    forms.push_back(*H[i].form);
  }
  const std::vector<SegmentIntegrals> full =
      segment_integrals(forms, groups, g, traj);

  std::vector<DiscoveryResult> out;
  out.reserve(candidates.size());
  for (const TheoremCandidate &cand : candidates) {
    bool has_observed = false;
    std::vector<int> cols;
    for (std::size_t idx : cand.members) {
      if (idx >= H.size())
        throw ValidationError("candidate references a missing hypothesis");
      if (H[idx].observed())
        has_observed = true;
      else
        cols.push_back(column_of[idx]);
    }
    std::vector<SegmentIntegrals> sub;
    sub.reserve(full.size());
    for (const SegmentIntegrals &s : full) {
      SegmentIntegrals t;
      t.segment_id = s.segment_id;
      // Without the observed differential the theorem integrates to a
      // homogeneous system.
      t.delta_S = has_observed ? s.delta_S : 0.0;
      for (int c : cols)
        t.integrals.push_back(s.integrals[static_cast<std::size_t>(c)]);
      sub.push_back(std::move(t));
    }

    DiscoveryResult res;
    res.candidate = cand;
    res.report = fit_theorem(sub, opts);

    // Reconstructed state function, when every member form is closed.
    bool all_closed = true;
    NumericPotential combined;
    std::size_t ci = 0;
    for (std::size_t idx : cand.members) {
      if (H[idx].observed())
        continue;
      const OneForm &f = *H[idx].form;
      if (!is_closed(f)) {
        all_closed = false;
        break;
      }
      const NumericPotential gp = numeric_potential(find_potential(f), g);
      const double coeff = res.report.coefficients[ci++];
      for (NumericPotential::Term t : gp.poly) {
        t.coeff *= coeff;
        if (t.coeff != 0)
          combined.poly.push_back(t);
      }
      combined.log_p_coeff += coeff * gp.log_p_coeff;
      combined.log_V_coeff += coeff * gp.log_V_coeff;
    }
    if (all_closed)
      res.potential = combined;
    out.push_back(std::move(res));
  }

  std::stable_sort(out.begin(), out.end(),
                   [](const DiscoveryResult &a, const DiscoveryResult &b) {
                     const int va = verdict_rank(a.report.verdict);
                     const int vb = verdict_rank(b.report.verdict);
                     if (va != vb)
                       return va < vb;
                     if (a.candidate.total_complexity !=
                         b.candidate.total_complexity)
                       return a.candidate.total_complexity <
                              b.candidate.total_complexity;
                     if (a.report.residual_rel != b.report.residual_rel)
                       return a.report.residual_rel < b.report.residual_rel;
                     return a.candidate.members < b.candidate.members;
                   });
  return out;
}

} // namespace pvforms
