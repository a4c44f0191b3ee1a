#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pvforms/dimension.hpp"
#include "pvforms/forms.hpp"

namespace pvforms {

// A closed, unit-consistent 1-form surviving enumeration, with the
// exponent tuple it came from and its reconstructed potential.
struct CandidateForm {
  // Which coefficient pattern of the source tuple produced the form.
  enum class Source { dp_side, dv_side, paired };

  OneForm form;         // normalized: leading coefficient 1
  ExponentTuple source;
  Source pattern = Source::dp_side;
  Potential potential;  // re-differentiates to form
  int complexity = 0;   // sum of |exponents| over stored terms
};

// Enumerate closed, unit-consistent monomial 1-forms with all exponents
// in [-bound, bound]. Per tuple the coefficients of the two sides are
// paired as closedness dictates; when a tuple decouples (both partials
// vanish identically) each side is emitted as its own basis element, so
// the reciprocal pair p^-1 dp and V^-1 dV appear separately. Results are
// deduplicated up to one overall scalar and sorted by complexity.
std::vector<CandidateForm> enumerate_closed_forms(int bound,
                                                  const SymbolTable &syms);

// One hypothesis term. Either a symbolic 1-form or the observed
// differential of the measured state variable (form empty), to be
// combined linearly into theorem candidates.
struct SingletonTheorem {
  std::string label;
  std::optional<OneForm> form; // nullopt: observed differential column
  int complexity = 1;          // >= 1

  bool observed() const { return !form.has_value(); }
};

// A nonempty subset of the hypothesis set, referenced by index, with the
// additive complexity of its members.
struct TheoremCandidate {
  std::vector<std::size_t> members; // strictly increasing indices into H
  int total_complexity = 0;
};

// All nonempty subsets of H whose total complexity is at most budget,
// in nondecreasing complexity order; ties broken lexicographically on
// the index lists. budget < 0 is rejected.
std::vector<TheoremCandidate> theorem_candidates(
    const std::vector<SingletonTheorem> &H, int budget);

// The three-term hypothesis set for the entropy search: the observed dS
// plus the two reciprocal basis forms.
std::vector<SingletonTheorem> entropy_theorem_set();

} // namespace pvforms
