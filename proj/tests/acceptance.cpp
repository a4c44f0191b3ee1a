// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the binary exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.hpp"
#include "pvforms/dimension.hpp"
#include "pvforms/enumerate.hpp"
#include "pvforms/parse.hpp"
#include "pvforms/validate.hpp"

using namespace pvforms;
using namespace testutil;

namespace {

int g_failures = 0;

void report(int id, const std::string &desc, bool ok) {
  std::printf("[%s] %d. %s\n", ok ? "PASS" : "FAIL", id, desc.c_str());
  if (!ok)
    ++g_failures;
}

void run(int id, const std::string &desc, bool (*fn)()) {
  bool ok = false;
  try {
    ok = fn();
  } catch (const std::exception &e) {
    std::printf("       exception: %s\n", e.what());
    ok = false;
  }
  report(id, desc, ok);
}

// 1. Enumeration at bound 3: both reciprocal forms present, everything
// closed and unit-consistent, and fast.
bool enumeration_is_sound() {
  const SymbolTable syms = SymbolTable::standard();
  const auto t0 = std::chrono::steady_clock::now();
  const auto forms = enumerate_closed_forms(3, syms);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  bool saw_dp = false, saw_dv = false, all_ok = true;
  for (const CandidateForm &c : forms) {
    const std::string r = render(c.form);
    saw_dp |= r == "p^-1 dp";
    saw_dv |= r == "V^-1 dV";
    all_ok &= is_closed(c.form);
    all_ok &= summands_consistent(c.form, syms);
    all_ok &= d_scalar(c.potential.poly()) +
                  OneForm{c.potential.log_p_coeff() * ScalarField::p_power(-1),
                          c.potential.log_V_coeff() *
                              ScalarField::V_power(-1)} ==
              c.form;
  }
  if (secs >= 1.0)
    std::printf("       enumeration took %.3f s\n", secs);
  return saw_dp && saw_dv && all_ok && !forms.empty() && secs < 1.0;
}

// 2. Entropy changes along the isochoric heating and isobaric expansion
// legs of the reference square.
bool reference_entropy_changes() {
  const GasSpec g;
  const double S1 = entropy(g, 10000.0, 22.4e-3);
  const double S2 = entropy(g, 20000.0, 22.4e-3);
  const double S3 = entropy(g, 20000.0, 44.8e-3);
  return std::abs((S2 - S1) - 8.644758) < 1e-5 &&
         std::abs((S3 - S2) - 14.407931) < 1e-5;
}

// 3. Full pipeline through the CLI: simulate the square, discover the
// entropy differential, check constants and the reconstructed potential.
bool pipeline_rediscovers_entropy() {
  const auto dir = fresh_dir("pvforms_acceptance");
  const auto records = dir / "run.csv";
  const auto rep_path = dir / "report.json";
  spit(dir / "cfg.json", square_config(records.string(), rep_path.string()));

  if (run_cli("simulate --config " + (dir / "cfg.json").string(), dir).code !=
      0)
    return false;
  if (run_cli("discover --config " + (dir / "cfg.json").string(), dir).code !=
      0)
    return false;

  const auto rep = nlohmann::json::parse(slurp(rep_path));
  const auto &summary = rep.at("summary");
  if (summary.at("verdict") != "Valid")
    return false;
  const auto &c = summary.at("coefficients");
  if (c.size() != 2 || std::abs(c[0].get<double>() - 12.47175) > 1e-4 ||
      std::abs(c[1].get<double>() - 20.78625) > 1e-4)
    return false;

  const GasSpec g;
  const auto &pot = summary.at("potential");
  const double lp = pot.at("log_p_coeff").get<double>();
  const double lv = pot.at("log_V_coeff").get<double>();
  return rel_close(lp, g.cv(), 1e-4) && rel_close(lv, g.cv() + g.nR(), 1e-4) &&
         pot.at("poly").empty();
}

// 4. d(dPhi) = 0 exactly, in rational arithmetic, for random potentials.
bool exterior_derivative_is_nilpotent() {
  std::mt19937 rng(20260824);
  for (int i = 0; i < 1000; ++i) {
    const Potential phi = random_potential(rng);
    const OneForm dphi =
        d_scalar(phi.poly()) +
        OneForm{phi.log_p_coeff() * ScalarField::p_power(-1),
                phi.log_V_coeff() * ScalarField::V_power(-1)};
    if (!is_closed(dphi))
      return false;
  }
  return true;
}

// 5. Every enumerated closed form gives the same integral along 20 pairs
// of different paths with shared endpoints.
bool closed_forms_are_path_independent() {
  const GasSpec g;
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> coord(0.7, 2.5);
  const auto forms = enumerate_closed_forms(3, SymbolTable::standard());

  struct Pair {
    Trajectory a, b;
  };
  std::vector<Pair> pairs;
  for (int i = 0; i < 20; ++i) {
    const double pa = coord(rng), Va = coord(rng);
    const double pb = coord(rng), Vb = coord(rng);
    pairs.push_back({random_linear_path(rng, pa, Va, pb, Vb, 0.7, 2.5),
                     random_linear_path(rng, pa, Va, pb, Vb, 0.7, 2.5)});
  }
  for (const CandidateForm &c : forms)
    for (const Pair &pr : pairs) {
      const double ia = pullback_integral(c.form, pr.a, g);
      const double ib = pullback_integral(c.form, pr.b, g);
      if (!rel_close(ia, ib, 1e-8))
        return false;
    }
  return true;
}

// 6. The work form p dV integrates to the signed enclosed area around
// axis-aligned rectangular loops.
bool work_form_measures_area() {
  const GasSpec g;
  const OneForm work = parse_one_form("p dV");
  std::mt19937 rng(55);
  std::uniform_real_distribution<double> coord(0.5, 3.0);
  std::uniform_int_distribution<int> flip(0, 1);
  for (int i = 0; i < 25; ++i) {
    double p1 = coord(rng), p2 = coord(rng);
    double V1 = coord(rng), V2 = coord(rng);
    if (std::abs(p2 - p1) < 0.2 || std::abs(V2 - V1) < 0.2) {
      --i;
      continue;
    }
    if (flip(rng)) // reverse orientation half the time
      std::swap(p1, p2);
    const double area = (p2 - p1) * (V2 - V1);
    const double got = pullback_integral(work, rectangle_loop(p1, V1, p2, V2),
                                         g);
    if (!rel_close(got, area, 1e-8))
      return false;
  }
  return true;
}

// 7. The closed-form unit filter agrees with direct dimensional
// comparison over the whole exponent window.
bool unit_filter_matches_dimensions() {
  const SymbolTable syms = SymbolTable::standard();
  const Dimension dp_ = syms.at("p"), dV_ = syms.at("V");
  int checked = 0, passing = 0;
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b)
      for (int ap = -4; ap <= 4; ++ap)
        for (int bp = -4; bp <= 4; ++bp) {
          const Dimension left =
              dim_mul(dim_mul(dim_pow(dp_, a), dim_pow(dV_, b)), dp_);
          const Dimension right =
              dim_mul(dim_mul(dim_pow(dp_, ap), dim_pow(dV_, bp)), dV_);
          const bool direct = left == right;
          const bool filtered = exponent_unit_filter({a, b, ap, bp});
          if (direct != filtered)
            return false;
          ++checked;
          passing += direct ? 1 : 0;
        }
  return checked == 6561 && passing == 64;
}

// 8. Least-squares fitting recovers planted coefficients from synthetic
// entropy data over random paths.
bool fitting_recovers_coefficients() {
  const GasSpec g;
  std::mt19937 rng(20260824);
  const auto basis = enumerate_closed_forms(2, SymbolTable::standard());
  std::uniform_real_distribution<double> coord(0.7, 2.5);
  std::uniform_real_distribution<double> coeff(0.2, 5.0);
  std::uniform_int_distribution<int> nforms(1, 3);
  std::uniform_int_distribution<int> sign(0, 1);

  int done = 0, attempts = 0;
  while (done < 100) {
    if (++attempts > 300)
      return false;

    const int n = nforms(rng);
    std::vector<OneForm> forms;
    std::vector<std::size_t> picked;
    while (forms.size() < static_cast<std::size_t>(n)) {
      std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
      const std::size_t idx = pick(rng);
      bool dup = false;
      for (std::size_t q : picked)
        dup |= q == idx;
      if (!dup) {
        picked.push_back(idx);
        forms.push_back(basis[idx].form);
      }
    }
    std::vector<double> truth;
    for (int k = 0; k < n; ++k)
      truth.push_back((sign(rng) ? 1 : -1) * coeff(rng));

    std::vector<SegmentIntegrals> si;
    for (int m = 0; m < n + 2; ++m) {
      SegmentIntegrals s;
      s.segment_id = static_cast<std::size_t>(m);
      const PathSegment seg{SegmentKind::Linear, coord(rng), coord(rng),
                            coord(rng), coord(rng), 2};
      for (int k = 0; k < n; ++k)
        s.integrals.push_back(pullback_integral(forms[k], seg, g));
      for (int k = 0; k < n; ++k)
        s.delta_S += truth[k] * s.integrals[k];
      si.push_back(std::move(s));
    }

    const FitReport rep = fit_theorem(si);
    if (rep.verdict == Verdict::Underdetermined)
      continue; // degenerate geometry; redraw
    if (rep.verdict != Verdict::Valid)
      return false;
    for (int k = 0; k < n; ++k)
      if (!rel_close(rep.coefficients[k], truth[k], 1e-6))
        return false;
    ++done;
  }
  return true;
}

} // namespace

int main() {
  run(1, "bound-3 enumeration: reciprocal forms present, all closed and "
         "unit-consistent, under one second",
      enumeration_is_sound);
  run(2, "entropy changes on the reference square match the tabulated "
         "values to 1e-5",
      reference_entropy_changes);
  run(3, "CLI pipeline rediscovers the entropy differential: Valid verdict, "
         "constants and potential to 1e-4",
      pipeline_rediscovers_entropy);
  run(4, "d(dPhi) = 0 exactly for 1000 random potentials",
      exterior_derivative_is_nilpotent);
  run(5, "every enumerated closed form is path independent across 20 "
         "same-endpoint path pairs (1e-8 relative)",
      closed_forms_are_path_independent);
  run(6, "work form around rectangular loops equals the signed area "
         "(1e-8 relative)",
      work_form_measures_area);
  run(7, "unit filter agrees with direct dimensional comparison on all "
         "6561 exponent tuples",
      unit_filter_matches_dimensions);
  run(8, "least-squares fit recovers planted coefficients in 100 synthetic "
         "trials (1e-6 relative)",
      fitting_recovers_coefficients);

  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
