#include "pvforms/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "pvforms/enumerate.hpp"
#include "pvforms/parse.hpp"

namespace pvforms {

namespace {

using nlohmann::json;

// Raised for problems with ingested data files; maps to exit code 3,
// unlike config/usage problems which map to 2.
struct DataError : Error {
  explicit DataError(const std::string &m) : Error(m) {}
};

template <typename F> auto data_phase(F &&f) {
  try {
    return f();
  } catch (const DataError &) {
    throw;
  } catch (const Error &e) {
    throw DataError(e.what());
  }
}

// ---- config ----

[[noreturn]] void bad(const std::string &msg) { throw ConfigError(msg); }

const json *find(const json &j, const char *key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

void check_keys(const json &j, const std::string &where,
                std::initializer_list<const char *> allowed) {
  for (const auto &el : j.items()) {
    bool ok = false;
    for (const char *k : allowed)
      if (el.key() == k)
        ok = true;
    if (!ok)
      bad("unknown key \"" + el.key() + "\" in " + where);
  }
}

double as_number(const json &j, const std::string &where) {
  if (!j.is_number())
    bad(where + " must be a number");
  return j.get<double>();
}

int as_int(const json &j, const std::string &where) {
  if (!j.is_number_integer())
    bad(where + " must be an integer");
  return j.get<int>();
}

std::string as_string(const json &j, const std::string &where) {
  if (!j.is_string())
    bad(where + " must be a string");
  return j.get<std::string>();
}

void parse_gas(const json &j, GasSpec &g) {
  if (!j.is_object())
    bad("\"gas\" must be an object");
  check_keys(j, "\"gas\"", {"n", "R", "cv", "a"});
  if (const json *v = find(j, "n"))
    g.n_moles = as_number(*v, "gas.n");
  if (const json *v = find(j, "R"))
    g.R = as_number(*v, "gas.R");
  if (const json *v = find(j, "cv"))
    g.cv_molar = as_number(*v, "gas.cv");
  if (const json *v = find(j, "a"))
    g.a = as_number(*v, "gas.a");
}

void parse_path(const json &j, RunConfig &cfg) {
  if (!j.is_object())
    bad("\"path\" must be an object");
  check_keys(j, "\"path\"", {"points", "kinds", "samples"});
  const json *pts = find(j, "points");
  const json *kinds = find(j, "kinds");
  if (!pts || !kinds)
    bad("\"path\" needs both \"points\" and \"kinds\"");
  if (!pts->is_array() || pts->size() < 2)
    bad("path.points must be an array of at least 2 [p, V] pairs");
  for (std::size_t i = 0; i < pts->size(); ++i) {
    const json &pt = (*pts)[i];
    const std::string where = "path.points[" + std::to_string(i) + "]";
    if (!pt.is_array() || pt.size() != 2)
      bad(where + " must be a [p, V] pair");
    cfg.points.push_back({as_number(pt[0], where + "[0]"),
                          as_number(pt[1], where + "[1]")});
  }
  if (!kinds->is_array() || kinds->size() != pts->size() - 1)
    bad("path.kinds must be an array with one entry per segment (" +
        std::to_string(pts->size() - 1) + " expected)");
  for (std::size_t i = 0; i < kinds->size(); ++i) {
    const std::string where = "path.kinds[" + std::to_string(i) + "]";
    try {
      cfg.kinds.push_back(
          segment_kind_from_string(as_string((*kinds)[i], where)));
    } catch (const ValidationError &e) {
      bad(where + ": " + e.what());
    }
  }
  if (const json *v = find(j, "samples")) {
    cfg.samples = as_int(*v, "path.samples");
    if (cfg.samples < 2)
      bad("path.samples must be at least 2");
  }
}

} // namespace

Trajectory RunConfig::trajectory() const {
  if (!has_path())
    throw ConfigError("config has no \"path\" section");
  std::vector<std::pair<double, double>> pts;
  pts.reserve(points.size());
  for (const auto &a : points)
    pts.emplace_back(a[0], a[1]);
  return make_path(pts, kinds, samples);
}

RunConfig parse_config_text(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception &e) {
    bad(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object())
    bad("config root must be a JSON object");
  check_keys(j, "config",
             {"gas", "path", "bound", "budget", "tolerances", "records",
              "output"});

  RunConfig cfg;
  if (const json *v = find(j, "gas"))
    parse_gas(*v, cfg.gas);
  cfg.gas.validate();
  if (const json *v = find(j, "path"))
    parse_path(*v, cfg);
  if (const json *v = find(j, "bound")) {
    cfg.bound = as_int(*v, "\"bound\"");
    if (cfg.bound < 1)
      bad("\"bound\" must be at least 1");
  }
  if (const json *v = find(j, "budget")) {
    cfg.budget = as_int(*v, "\"budget\"");
    if (cfg.budget < 1)
      bad("\"budget\" must be at least 1");
  }
  if (const json *v = find(j, "tolerances")) {
    if (!v->is_object())
      bad("\"tolerances\" must be an object");
    check_keys(*v, "\"tolerances\"", {"fit_rel", "condition_max"});
    if (const json *t = find(*v, "fit_rel")) {
      cfg.fit.tol_rel = as_number(*t, "tolerances.fit_rel");
      if (!(cfg.fit.tol_rel > 0))
        bad("tolerances.fit_rel must be positive");
    }
    if (const json *t = find(*v, "condition_max")) {
      cfg.fit.condition_max = as_number(*t, "tolerances.condition_max");
      if (!(cfg.fit.condition_max > 0))
        bad("tolerances.condition_max must be positive");
    }
  }
  if (const json *v = find(j, "records"))
    cfg.records_path = as_string(*v, "\"records\"");
  if (const json *v = find(j, "output")) {
    if (!v->is_object())
      bad("\"output\" must be an object");
    check_keys(*v, "\"output\"", {"records", "report"});
    if (const json *t = find(*v, "records"))
      cfg.out_records = as_string(*t, "output.records");
    if (const json *t = find(*v, "report"))
      cfg.out_report = as_string(*t, "output.report");
  }

  // Surface kind/endpoint contradictions at load time, not first use.
  if (cfg.has_path())
    cfg.trajectory();
  return cfg;
}

RunConfig load_config(const std::string &path) {
  std::ifstream is(path);
  if (!is)
    throw ConfigError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  try {
    return parse_config_text(buf.str());
  } catch (const ConfigError &e) {
    throw ConfigError(path + ": " + e.what());
  }
}

namespace {

// ---- shared command plumbing ----

void write_text(const std::string &out, const std::string &text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out, std::ios::binary);
  if (!os)
    throw ConfigError("cannot open output file: " + out);
  os << text;
  os.flush();
  if (!os)
    throw ConfigError("failed writing output file: " + out);
}

struct LoadedData {
  std::vector<std::vector<ExperimentRecord>> groups;
  Trajectory traj;
  bool analytic = false; // integrate on traj instead of the records
};

bool near(double a, double b) {
  return std::abs(a - b) <= 1e-6 * std::max({std::abs(a), std::abs(b), 1.0});
}

bool matches_trajectory(const std::vector<std::vector<ExperimentRecord>> &gr,
                        const Trajectory &t) {
  if (gr.size() != t.segments.size())
    return false;
  for (std::size_t i = 0; i < gr.size(); ++i) {
    const PathSegment &s = t.segments[i];
    if (!near(gr[i].front().p, s.p0) || !near(gr[i].front().V, s.V0) ||
        !near(gr[i].back().p, s.p1) || !near(gr[i].back().V, s.V1))
      return false;
  }
  return true;
}

LoadedData load_data(const RunConfig &cfg, const std::string &records_flag) {
  std::string path = records_flag;
  if (path.empty())
    path = cfg.records_path;
  if (path.empty())
    path = cfg.out_records;
  if (path.empty())
    bad("no records file: pass --records or set \"records\" in the config");

  LoadedData d;
  d.groups = data_phase([&] { return group_records(read_records(path)); });
  // Prefer exact quadrature on the configured path when the file's
  // segment endpoints line up with it; otherwise fall back to the
  // trapezoid rule on the raw records.
  if (cfg.has_path()) {
    Trajectory t = cfg.trajectory();
    if (matches_trajectory(d.groups, t)) {
      d.traj = std::move(t);
      d.analytic = true;
    }
  }
  return d;
}

std::string render_candidate(const TheoremCandidate &cand,
                             const std::vector<SingletonTheorem> &H) {
  std::string lhs = "0";
  std::string rhs;
  int k = 0;
  for (std::size_t idx : cand.members) {
    if (H[idx].observed()) {
      lhs = H[idx].label;
      continue;
    }
    if (!rhs.empty())
      rhs += " + ";
    rhs += "c" + std::to_string(++k) + "*(" + H[idx].label + ")";
  }
  if (rhs.empty())
    rhs = "0";
  return lhs + " = " + rhs;
}

json potential_json(const NumericPotential &np) {
  json o;
  o["rendered"] = render(np);
  o["log_p_coeff"] = np.log_p_coeff;
  o["log_V_coeff"] = np.log_V_coeff;
  json poly = json::array();
  for (const NumericPotential::Term &t : np.poly) {
    json term;
    term["coeff"] = t.coeff;
    term["p_pow"] = t.p_pow;
    term["V_pow"] = t.V_pow;
    poly.push_back(term);
  }
  o["poly"] = poly;
  return o;
}

json finite_or_null(double x) {
  if (std::isfinite(x))
    return x;
  return nullptr;
}

// Post-hoc annotation only: coefficients near named gas constants are
// pointed out, never asserted.
json annotations_json(const std::vector<double> &coeffs, const GasSpec &g) {
  struct Ref {
    const char *name;
    double value;
  };
  const Ref refs[] = {{"c_v", g.cv()},
                      {"nR", g.nR()},
                      {"c_v + nR", g.cv() + g.nR()}};
  json out = json::array();
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    for (const Ref &r : refs)
      if (r.value != 0 &&
          std::abs(coeffs[i] - r.value) <= 1e-3 * std::abs(r.value))
        out.push_back("c" + std::to_string(i + 1) + " ~ " + r.name);
  return out;
}

json result_json(const DiscoveryResult &r,
                 const std::vector<SingletonTheorem> &H, const GasSpec &g) {
  json o;
  o["candidate"] = render_candidate(r.candidate, H);
  o["complexity"] = r.candidate.total_complexity;
  o["coefficients"] = r.report.coefficients;
  o["residual_rel"] = r.report.residual_rel;
  o["rank"] = r.report.rank;
  o["condition"] = finite_or_null(r.report.condition);
  o["verdict"] = to_string(r.report.verdict);
  if (!r.report.reason.empty())
    o["reason"] = r.report.reason;
  if (r.report.unknown_count > 0 &&
      r.report.segment_count > r.report.unknown_count)
    o["note"] = "overdetermined: " + std::to_string(r.report.segment_count) +
                " segments for " + std::to_string(r.report.unknown_count) +
                (r.report.unknown_count == 1 ? " unknown" : " unknowns") +
                ", solved by least squares";
  json ann = annotations_json(r.report.coefficients, g);
  if (!ann.empty())
    o["annotations"] = ann;
  if (r.potential)
    o["potential"] = potential_json(*r.potential);
  return o;
}

std::string report_text(const std::vector<DiscoveryResult> &results,
                        const std::vector<SingletonTheorem> &H,
                        const LoadedData &d, const RunConfig &cfg) {
  json rep;
  json segs = json::array();
  for (std::size_t i = 0; i < d.groups.size(); ++i)
    segs.push_back({{"segment_id", i},
                    {"delta_S", d.groups[i].back().S - d.groups[i].front().S},
                    {"records", d.groups[i].size()}});
  rep["segments"] = segs;
  rep["integration"] =
      d.analytic ? "adaptive quadrature on the configured path"
                 : "trapezoid rule on the records";
  rep["gas"] = {{"n", cfg.gas.n_moles},
                {"R", cfg.gas.R},
                {"cv", cfg.gas.cv_molar},
                {"a", cfg.gas.a}};
  rep["tolerances"] = {{"fit_rel", cfg.fit.tol_rel},
                       {"condition_max", cfg.fit.condition_max}};
  json arr = json::array();
  for (const DiscoveryResult &r : results)
    arr.push_back(result_json(r, H, cfg.gas));
  rep["results"] = arr;

  json summary;
  if (results.empty()) {
    summary["best"] = nullptr;
  } else {
    const DiscoveryResult &best = results.front();
    summary["best"] = render_candidate(best.candidate, H);
    summary["verdict"] = to_string(best.report.verdict);
    summary["coefficients"] = best.report.coefficients;
    if (best.potential)
      summary["potential"] = potential_json(*best.potential);
  }
  rep["summary"] = summary;
  return rep.dump(2) + "\n";
}

// ---- subcommands ----

int cmd_enumerate(int bound, const std::string &out) {
  const auto forms = enumerate_closed_forms(bound, SymbolTable::standard());
  std::ostringstream os;
  os << "# enumerate bound=" << bound << " count=" << forms.size() << "\n";
  for (const CandidateForm &c : forms)
    os << "form: " << render(c.form) << " | potential: " << render(c.potential)
       << " | complexity: " << c.complexity << "\n";
  write_text(out, os.str());
  return 0;
}

int cmd_simulate(const RunConfig &cfg, const std::string &out_flag) {
  if (!cfg.has_path())
    bad("simulate needs a \"path\" section in the config");
  const Trajectory traj = cfg.trajectory();
  const auto recs = run_experiment(cfg.gas, traj);
  const std::string dest = !out_flag.empty() ? out_flag : cfg.out_records;
  if (dest.empty())
    write_records(std::cout, recs);
  else
    write_records(dest, recs);
  return 0;
}

int run_discovery(const RunConfig &cfg, const std::vector<SingletonTheorem> &H,
                  const std::vector<TheoremCandidate> &candidates,
                  const std::string &records_flag, const std::string &out_flag) {
  const LoadedData d = load_data(cfg, records_flag);
  const std::vector<DiscoveryResult> results = data_phase([&] {
    return discover(d.groups, candidates, H, cfg.gas, cfg.fit,
                    d.analytic ? &d.traj : nullptr);
  });
  const std::string dest = !out_flag.empty() ? out_flag : cfg.out_report;
  write_text(dest, report_text(results, H, d, cfg));
  return 0;
}

int cmd_validate(const RunConfig &cfg, const std::vector<std::string> &forms,
                 const std::string &records_flag, const std::string &out_flag) {
  std::vector<SingletonTheorem> H;
  H.push_back({"dS", std::nullopt, 1});
  for (const std::string &s : forms) {
    try {
      OneForm f = parse_one_form(s);
      H.push_back({render(f), std::move(f), 1});
    } catch (const Error &e) {
      bad("bad --form \"" + s + "\": " + e.what());
    }
  }
  TheoremCandidate cand;
  for (std::size_t i = 0; i < H.size(); ++i)
    cand.members.push_back(i);
  cand.total_complexity = static_cast<int>(H.size());
  return run_discovery(cfg, H, {cand}, records_flag, out_flag);
}

int cmd_discover(const RunConfig &cfg, bool from_enumeration,
                 const std::string &records_flag, const std::string &out_flag) {
  std::vector<SingletonTheorem> H;
  if (from_enumeration) {
    H.push_back({"dS", std::nullopt, 1});
    for (const CandidateForm &c :
         enumerate_closed_forms(cfg.bound, SymbolTable::standard()))
      H.push_back({render(c.form), c.form, 1});
  } else {
    H = entropy_theorem_set();
  }
  const auto candidates = theorem_candidates(H, cfg.budget);
  return run_discovery(cfg, H, candidates, records_flag, out_flag);
}

} // namespace

int run_cli(int argc, char **argv) {
  CLI::App app{"closed 1-form search and entropy-theorem validation on the "
               "(p, V) plane of an ideal gas"};
  app.require_subcommand(1);

  std::string cfg_path, records_flag, out_flag;
  std::vector<std::string> form_flags;
  int bound_flag = 0, budget_flag = 0;
  double tol_flag = 0, cond_flag = 0;
  bool from_enumeration = false;

  CLI::App *enu = app.add_subcommand(
      "enumerate", "list closed, unit-consistent 1-forms up to a bound");
  CLI::Option *enu_bound =
      enu->add_option("--bound", bound_flag, "exponent bound (0 to 16)")
          ->check(CLI::Range(0, 16));
  CLI::Option *enu_cfg = enu->add_option("--config", cfg_path, "JSON config");
  enu->add_option("--out", out_flag, "write the listing to this file");

  CLI::App *sim = app.add_subcommand(
      "simulate", "sample a configured trajectory into a records CSV");
  sim->add_option("--config", cfg_path, "JSON config")->required();
  sim->add_option("--out", out_flag, "records CSV destination");

  CLI::App *val = app.add_subcommand(
      "validate", "fit dS = sum c_i f_i for explicitly given forms");
  val->add_option("--config", cfg_path, "JSON config")->required();
  val->add_option("--form", form_flags,
                  "candidate 1-form, e.g. \"p^-1 dp\" (repeatable)")
      ->required();
  val->add_option("--records", records_flag, "records CSV to fit against");
  CLI::Option *val_tol =
      val->add_option("--tol", tol_flag, "relative residual tolerance");
  CLI::Option *val_cond =
      val->add_option("--cond-max", cond_flag, "condition number ceiling");
  val->add_option("--out", out_flag, "report destination");

  CLI::App *dis = app.add_subcommand(
      "discover", "rank theorem candidates against a records CSV");
  dis->add_option("--config", cfg_path, "JSON config")->required();
  dis->add_option("--records", records_flag, "records CSV to fit against");
  CLI::Option *dis_budget =
      dis->add_option("--budget", budget_flag, "complexity budget (>= 1)")
          ->check(CLI::Range(1, 64));
  CLI::Option *dis_bound =
      dis->add_option("--bound", bound_flag,
                      "exponent bound for --from-enumeration")
          ->check(CLI::Range(1, 16));
  dis->add_flag("--from-enumeration", from_enumeration,
                "build the hypothesis set from enumerated closed forms "
                "instead of the reciprocal-pair default");
  CLI::Option *dis_tol =
      dis->add_option("--tol", tol_flag, "relative residual tolerance");
  CLI::Option *dis_cond =
      dis->add_option("--cond-max", cond_flag, "condition number ceiling");
  dis->add_option("--out", out_flag, "report destination");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (enu->parsed()) {
      RunConfig cfg;
      if (enu_cfg->count())
        cfg = load_config(cfg_path);
      const int bound = enu_bound->count() ? bound_flag : cfg.bound;
      return cmd_enumerate(bound, out_flag);
    }

    RunConfig cfg = load_config(cfg_path);
    if (sim->parsed())
      return cmd_simulate(cfg, out_flag);

    if (val->parsed()) {
      if (val_tol->count())
        cfg.fit.tol_rel = tol_flag;
      if (val_cond->count())
        cfg.fit.condition_max = cond_flag;
      if (!(cfg.fit.tol_rel > 0) || !(cfg.fit.condition_max > 0))
        bad("--tol and --cond-max must be positive");
      return cmd_validate(cfg, form_flags, records_flag, out_flag);
    }

    if (dis_budget->count())
      cfg.budget = budget_flag;
    if (dis_bound->count())
      cfg.bound = bound_flag;
    if (dis_tol->count())
      cfg.fit.tol_rel = tol_flag;
    if (dis_cond->count())
      cfg.fit.condition_max = cond_flag;
    if (!(cfg.fit.tol_rel > 0) || !(cfg.fit.condition_max > 0))
      bad("--tol and --cond-max must be positive");
    return cmd_discover(cfg, from_enumeration, records_flag, out_flag);
  } catch (const DataError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

} // namespace pvforms
