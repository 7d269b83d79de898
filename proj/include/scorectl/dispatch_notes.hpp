#pragma once

#include <string>

#include "scorectl/rules.hpp"

namespace scorectl {

// Why a query fell through to exhaustive search.
inline std::string fallback_note(const ScoringVector& v, Problem problem) {
  if (is_plurality(v) || is_two_approval(v) || is_three_veto(v) || is_front_back(v))
    return "polynomial-time algorithm not implemented for this rule; answered by exhaustive search";
  if (auto f = family_of_vector(v)) {
    auto rc = classify(*f, problem);
    if (!rc.polynomial())
      return std::string("warning: rule is NP-hard for ") + to_string(problem) + " (" + rc.shape +
             "); answered by exhaustive search";
    return "polynomial-time algorithm not implemented for this rule; answered by exhaustive search";
  }
  return "rule too short to classify; answered by exhaustive search";
}

}  // namespace scorectl
