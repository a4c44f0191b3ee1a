#pragma once

#include <array>
#include <string>
#include <vector>

#include "pvforms/experiment.hpp"
#include "pvforms/validate.hpp"

namespace pvforms {

// Everything a pipeline run needs, loadable from one JSON document.
// Command-line flags override individual fields after loading.
struct RunConfig {
  GasSpec gas;

  // Piecewise path: points.size() == kinds.size() + 1 when present.
  std::vector<std::array<double, 2>> points; // (p, V) corners
  std::vector<SegmentKind> kinds;
  int samples = 65; // records per segment

  int bound = 1;  // exponent bound for enumeration
  int budget = 3; // total complexity budget for theorem candidates

  FitOptions fit;

  std::string records_path; // input records for validate/discover
  std::string out_records;  // simulate output ("" = stdout)
  std::string out_report;   // report output ("" = stdout)

  bool has_path() const { return !points.empty(); }
  Trajectory trajectory() const; // throws ConfigError when no path present
};

// Throws ConfigError on malformed JSON or schema violations, DomainError
// on out-of-range physical values.
RunConfig load_config(const std::string &path);
RunConfig parse_config_text(const std::string &text);

// Full driver: argv dispatch, exit code 0 for a completed run (whatever
// the verdict), 2 for usage/config errors, 3 for bad data files.
int run_cli(int argc, char **argv);

} // namespace pvforms
