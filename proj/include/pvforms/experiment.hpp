#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pvforms/errors.hpp"

namespace pvforms {

// Fixed sample of ideal gas. R and cv_molar are per mole; entropy scales
// both by n_moles, so n_moles = 1 reproduces the molar expression.
struct GasSpec {
  double n_moles = 1.0;
  double R = 8.3145;         // J/(mol K)
  double cv_molar = 12.47175; // J/(mol K), monatomic: (3/2) R
  double a = 0.0;            // additive entropy offset, J/K

  double nR() const { return n_moles * R; }
  double cv() const { return n_moles * cv_molar; }

  void validate() const; // throws DomainError on nonpositive n, R, cv
};

// S(p, V) = n cv ln(pV/(nR)) + nR ln V + a. Throws DomainError unless
// p > 0 and V > 0.
double entropy(const GasSpec &g, double p, double V);

enum class SegmentKind { Isochoric, Isobaric, Linear, Isothermal };

SegmentKind segment_kind_from_string(const std::string &s);
std::string to_string(SegmentKind k);

// One quasi-static process between two states, sampled at `samples`
// points of a parameter u in [0, 1]. Endpoints are reproduced exactly at
// u = 0 and u = 1 regardless of the sample count.
struct PathSegment {
  SegmentKind kind = SegmentKind::Linear;
  double p0 = 0, V0 = 0;
  double p1 = 0, V1 = 0;
  int samples = 2;

  void validate() const; // positivity + kind/endpoint consistency

  // Position and parameter velocity at u in [0, 1].
  void at(double u, double &p, double &V) const;
  void velocity(double u, double &dp, double &dV) const;
};

struct Trajectory {
  std::vector<PathSegment> segments;
};

// Build a trajectory through the given states. kinds.size() must be
// points.size() - 1; consecutive segments share endpoints by
// construction. Throws InconsistentKindError when a kind contradicts its
// endpoint pair.
Trajectory make_path(const std::vector<std::pair<double, double>> &points,
                     const std::vector<SegmentKind> &kinds,
                     int samples_per_segment);

// One sampled observation row. The global parameter t runs over
// [segment_index, segment_index + 1] within each segment, so segment
// boundaries show up as repeated t values.
struct ExperimentRecord {
  double t = 0;
  double p = 0;
  double V = 0;
  double S = 0;

  friend bool operator==(const ExperimentRecord &,
                         const ExperimentRecord &) = default;
};

std::vector<ExperimentRecord> run_experiment(const GasSpec &g,
                                             const Trajectory &traj);

// CSV with header "t,p,V,S", one row per record, 17 significant digits
// (lossless round trip).
void write_records(std::ostream &os, const std::vector<ExperimentRecord> &recs);
void write_records(const std::string &path,
                   const std::vector<ExperimentRecord> &recs);

// Reading validates monotone (nondecreasing) t and positive p, V.
// Throws ParseError with the offending line number, or ValidationError.
std::vector<ExperimentRecord> read_records(std::istream &is);
std::vector<ExperimentRecord> read_records(const std::string &path);

// Split a record list into segments at repeated-t boundaries (the join
// rows written by run_experiment). A strictly increasing file is a
// single segment.
std::vector<std::vector<ExperimentRecord>>
group_records(const std::vector<ExperimentRecord> &recs);

} // namespace pvforms
