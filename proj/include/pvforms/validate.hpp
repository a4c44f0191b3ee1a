#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pvforms/enumerate.hpp"
#include "pvforms/experiment.hpp"
#include "pvforms/forms.hpp"

namespace pvforms {

// Line integral of f along the trajectory, pulled back to the segment
// parameter and evaluated with adaptive Simpson quadrature on the exact
// parameterization. nR and c_v take their numeric values from the gas
// spec. Throws DomainError on nonpositive coordinates, NonFiniteError on
// overflow.
double pullback_integral(const OneForm &f, const Trajectory &traj,
                         const GasSpec &g, double rel_tol = 1e-10);
double pullback_integral(const OneForm &f, const PathSegment &seg,
                         const GasSpec &g, double rel_tol = 1e-10);

// Trapezoid-rule fallback on the piecewise-linear interpolant of sampled
// records, for data without a known analytic parameterization. Less
// accurate than the quadrature route.
double pullback_integral_records(const OneForm &f,
                                 const std::vector<ExperimentRecord> &recs,
                                 const GasSpec &g);

// Per-segment observation: the measured entropy change and one line
// integral per candidate form.
struct SegmentIntegrals {
  std::size_t segment_id = 0;
  double delta_S = 0;
  std::vector<double> integrals;
};

// delta_S from the first/last record of each group; integrals from the
// matching analytic segment when `traj` is given, otherwise from the
// trapezoid fallback on the records. Throws ValidationError for a group
// with fewer than 2 records.
std::vector<SegmentIntegrals>
segment_integrals(const std::vector<OneForm> &forms,
                  const std::vector<std::vector<ExperimentRecord>> &groups,
                  const GasSpec &g,
                  const Trajectory *traj = nullptr);

enum class Verdict { Valid, Invalid, Underdetermined };

std::string to_string(Verdict v);

struct FitOptions {
  double tol_rel = 1e-6;        // residual acceptance threshold
  double condition_max = 1e8;   // conditioning acceptance threshold
};

// Result of the least-squares solve of  integrals * c = delta_S.
struct FitReport {
  std::vector<double> coefficients; // minimum-norm least-squares solution
  double residual_rel = 0;          // ||M c - dS|| / ||dS||
  int rank = 0;
  double condition = 0;             // sigma_max / sigma_min
  Verdict verdict = Verdict::Underdetermined;
  std::string reason;               // set when verdict != Valid
  std::size_t segment_count = 0;
  std::size_t unknown_count = 0;
};

// Valid requires full column rank, at least as many segments as unknowns
// and never fewer than two (one equation cannot cross-check anything),
// condition <= condition_max, residual <= tol_rel, and a nontrivial
// right-hand side. Degenerate inputs yield Underdetermined, a clean
// refutation yields Invalid.
FitReport fit_theorem(const std::vector<SegmentIntegrals> &si,
                      const FitOptions &opts = {});

// Reconstructed state function with numeric coefficients: the potential
// of a fitted linear combination of closed forms, with nR and c_v
// substituted.
struct NumericPotential {
  struct Term {
    double coeff = 0;
    int p_pow = 0;
    int V_pow = 0;
  };
  std::vector<Term> poly;
  double log_p_coeff = 0;
  double log_V_coeff = 0;

  bool empty() const {
    return poly.empty() && log_p_coeff == 0 && log_V_coeff == 0;
  }
};

NumericPotential numeric_potential(const Potential &g, const GasSpec &gas);
std::string render(const NumericPotential &g);

// One evaluated theorem candidate.
struct DiscoveryResult {
  TheoremCandidate candidate;
  FitReport report;
  // Sum of fitted-coefficient multiples of the member forms' potentials;
  // present when every non-observed member is closed.
  std::optional<NumericPotential> potential;
};

// Evaluate every candidate over the grouped records and rank the results:
// Valid before Underdetermined before Invalid, then by (complexity,
// residual), then by candidate order. Deterministic for fixed input.
std::vector<DiscoveryResult>
discover(const std::vector<std::vector<ExperimentRecord>> &groups,
         const std::vector<TheoremCandidate> &candidates,
         const std::vector<SingletonTheorem> &H, const GasSpec &g,
         const FitOptions &opts = {}, const Trajectory *traj = nullptr);

} // namespace pvforms
