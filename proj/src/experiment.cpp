#include "pvforms/experiment.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace pvforms {

void GasSpec::validate() const {
  if (!(n_moles > 0))
    throw DomainError("gas spec: n_moles must be positive");
  if (!(R > 0))
    throw DomainError("gas spec: R must be positive");
  if (!(cv_molar > 0))
    throw DomainError("gas spec: cv must be positive");
}

double entropy(const GasSpec &g, double p, double V) {
  if (!(p > 0) || !(V > 0))
    throw DomainError("entropy requires p > 0 and V > 0");
  return g.cv() * std::log(p * V / g.nR()) + g.nR() * std::log(V) + g.a;
}

SegmentKind segment_kind_from_string(const std::string &s) {
  if (s == "isochoric")
    return SegmentKind::Isochoric;
  if (s == "isobaric")
    return SegmentKind::Isobaric;
  if (s == "linear")
    return SegmentKind::Linear;
  if (s == "isothermal")
    return SegmentKind::Isothermal;
  throw ValidationError("unknown segment kind: " + s);
}

std::string to_string(SegmentKind k) {
  switch (k) {
  case SegmentKind::Isochoric: return "isochoric";
  case SegmentKind::Isobaric: return "isobaric";
  case SegmentKind::Linear: return "linear";
  case SegmentKind::Isothermal: return "isothermal";
  }
  return "?";
}

namespace {

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

} // namespace

void PathSegment::validate() const {
  if (!(p0 > 0) || !(V0 > 0) || !(p1 > 0) || !(V1 > 0))
    throw DomainError("segment endpoints must have positive p and V");
  if (samples < 2)
    throw ValidationError("segment needs at least 2 samples");
  switch (kind) {
  case SegmentKind::Isochoric:
    if (!nearly_equal(V0, V1))
      throw InconsistentKindError("isochoric segment with differing volumes");
    break;
  case SegmentKind::Isobaric:
    if (!nearly_equal(p0, p1))
      throw InconsistentKindError("isobaric segment with differing pressures");
    break;
  case SegmentKind::Isothermal:
    if (!nearly_equal(p0 * V0, p1 * V1))
      throw InconsistentKindError(
          "isothermal segment with differing p*V products");
    break;
  case SegmentKind::Linear:
    break;
  }
}

void PathSegment::at(double u, double &p, double &V) const {
  // Endpoints are returned exactly so refining the sample count never
  // perturbs them.
  if (u == 0.0) {
    p = p0;
    V = V0;
    return;
  }
  if (u == 1.0) {
    p = p1;
    V = V1;
    return;
  }
  switch (kind) {
  case SegmentKind::Isochoric:
    p = p0 + u * (p1 - p0);
    V = V0;
    break;
  case SegmentKind::Isobaric:
    p = p0;
    V = V0 + u * (V1 - V0);
    break;
  case SegmentKind::Linear:
    p = p0 + u * (p1 - p0);
    V = V0 + u * (V1 - V0);
    break;
  case SegmentKind::Isothermal:
    V = V0 + u * (V1 - V0);
    p = p0 * V0 / V;
    break;
  }
}

void PathSegment::velocity(double u, double &dp, double &dV) const {
  switch (kind) {
  case SegmentKind::Isochoric:
    dp = p1 - p0;
    dV = 0;
    break;
  case SegmentKind::Isobaric:
    dp = 0;
    dV = V1 - V0;
    break;
  case SegmentKind::Linear:
    dp = p1 - p0;
    dV = V1 - V0;
    break;
  case SegmentKind::Isothermal: {
    const double V = V0 + u * (V1 - V0);
    dV = V1 - V0;
    dp = -p0 * V0 * dV / (V * V);
    break;
  }
  }
}

Trajectory make_path(const std::vector<std::pair<double, double>> &points,
                     const std::vector<SegmentKind> &kinds,
                     int samples_per_segment) {
  if (points.size() < 2)
    throw ValidationError("a path needs at least 2 points");
  if (kinds.size() != points.size() - 1)
    throw ValidationError("a path with n points needs n-1 segment kinds");
  Trajectory traj;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    PathSegment seg;
    seg.kind = kinds[i];
    seg.p0 = points[i].first;
    seg.V0 = points[i].second;
    seg.p1 = points[i + 1].first;
    seg.V1 = points[i + 1].second;
    seg.samples = samples_per_segment;
    seg.validate();
    traj.segments.push_back(seg);
  }
  return traj;
}

std::vector<ExperimentRecord> run_experiment(const GasSpec &g,
                                             const Trajectory &traj) {
  g.validate();
  std::vector<ExperimentRecord> out;
  for (std::size_t si = 0; si < traj.segments.size(); ++si) {
    const PathSegment &seg = traj.segments[si];
    seg.validate();
    for (int i = 0; i < seg.samples; ++i) {
      const double u = static_cast<double>(i) / (seg.samples - 1);
      ExperimentRecord r;
      r.t = static_cast<double>(si) + u;
      seg.at(u, r.p, r.V);
      r.S = entropy(g, r.p, r.V);
      out.push_back(r);
    }
  }
  return out;
}

namespace {

// 17 significant digits round-trip a double exactly.
std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double parse_double(const std::string &tok, long line) {
  double v = 0;
  const char *first = tok.data();
  const char *last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw ParseError("bad numeric field '" + tok + "'", line);
  return v;
}

} // namespace

void write_records(std::ostream &os, const std::vector<ExperimentRecord> &recs) {
  os << "t,p,V,S\n";
  for (const ExperimentRecord &r : recs)
    os << format_double(r.t) << ',' << format_double(r.p) << ','
       << format_double(r.V) << ',' << format_double(r.S) << '\n';
}

void write_records(const std::string &path,
                   const std::vector<ExperimentRecord> &recs) {
  std::ofstream os(path);
  if (!os)
    throw ValidationError("cannot open for writing: " + path);
  write_records(os, recs);
}

std::vector<ExperimentRecord> read_records(std::istream &is) {
  std::string line;
  long lineno = 0;
  if (!std::getline(is, line))
    throw ParseError("empty records file (missing header)", 1);
  ++lineno;
  if (!line.empty() && line.back() == '\r')
    line.pop_back();
  if (line != "t,p,V,S")
    throw ParseError("expected header 't,p,V,S'", lineno);

  std::vector<ExperimentRecord> recs;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    std::array<std::string, 4> fields;
    std::size_t start = 0;
    for (int f = 0; f < 4; ++f) {
      const std::size_t comma = line.find(',', start);
      if (f < 3 && comma == std::string::npos)
        throw ParseError("expected 4 comma-separated fields", lineno);
      if (f == 3 && comma != std::string::npos)
        throw ParseError("too many fields", lineno);
      fields[f] = line.substr(start, comma - start);
      start = comma + 1;
    }
    ExperimentRecord r;
    r.t = parse_double(fields[0], lineno);
    r.p = parse_double(fields[1], lineno);
    r.V = parse_double(fields[2], lineno);
    r.S = parse_double(fields[3], lineno);
    if (!(r.p > 0))
      throw ValidationError("nonpositive pressure at line " +
                            std::to_string(lineno));
    if (!(r.V > 0))
      throw ValidationError("nonpositive volume at line " +
                            std::to_string(lineno));
    if (!recs.empty() && r.t < recs.back().t)
      throw ValidationError("non-monotone t at line " + std::to_string(lineno));
    recs.push_back(r);
  }
  return recs;
}

std::vector<ExperimentRecord> read_records(const std::string &path) {
  std::ifstream is(path);
  if (!is)
    throw ValidationError("cannot open for reading: " + path);
  return read_records(is);
}

std::vector<std::vector<ExperimentRecord>>
group_records(const std::vector<ExperimentRecord> &recs) {
  std::vector<std::vector<ExperimentRecord>> groups;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    // A repeated t value is the join row between two segments.
    if (groups.empty() || (i > 0 && recs[i].t == recs[i - 1].t))
      groups.emplace_back();
    groups.back().push_back(recs[i]);
  }
  return groups;
}

} // namespace pvforms
