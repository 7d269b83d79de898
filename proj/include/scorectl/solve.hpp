#pragma once

#include "scorectl/bribery.hpp"
#include "scorectl/ccdv.hpp"
#include "scorectl/io.hpp"
#include "scorectl/manipulation.hpp"
#include "scorectl/oracles.hpp"

namespace scorectl {

// Uniform entry points over the three problems. For manipulation the budget
// is the number of manipulators.
inline SolverOutcome solve(Problem p, const Instance& in, const OracleCaps& caps = {}) {
  switch (p) {
    case Problem::Manipulation: {
      in.validate();
      auto r = solve_manipulation(in.election, in.rule, in.preferred, in.budget);
      return SolverOutcome{r.feasible, {}, {}, std::move(r.votes), "manipulation:table", {}};
    }
    case Problem::Ccdv: return solve_ccdv(in, caps);
    case Problem::Bribery: return solve_bribery(in, caps);
  }
  throw InternalError("unknown problem");
}

inline SolverOutcome oracle(Problem p, const Instance& in, const OracleCaps& caps = {}) {
  switch (p) {
    case Problem::Manipulation: return brute_manipulation(in.election, in.rule, in.preferred, in.budget, caps);
    case Problem::Ccdv: return brute_ccdv(in, caps);
    case Problem::Bribery: return brute_bribery(in, caps);
  }
  throw InternalError("unknown problem");
}

inline bool verify(Problem p, const Instance& in, const SolverOutcome& o) {
  switch (p) {
    case Problem::Manipulation: return verify_manipulation(in.election, in.rule, in.preferred, in.budget, o);
    case Problem::Ccdv: return verify_ccdv(in, o);
    case Problem::Bribery: return verify_bribery(in, o);
  }
  return false;
}

inline Problem problem_from_string(const std::string& s) {
  for (auto p : {Problem::Manipulation, Problem::Ccdv, Problem::Bribery})
    if (s == to_string(p)) return p;
  throw DomainError("unknown problem '" + s + "'");
}

inline io::json instance_json(Problem p, const Instance& in) {
  return {{"problem", to_string(p)},
          {"election", io::election_to_json(in.election)},
          {"rule", {{"kind", "vector"}, {"coefficients", io::scoring_vector_to_json(in.rule)}}},
          {"preferred", in.election.name(in.preferred)},
          {"k", in.budget}};
}

}  // namespace scorectl
