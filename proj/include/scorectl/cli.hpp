#pragma once

#include <chrono>
#include <optional>
#include <string>

#include "scorectl/fuzz.hpp"
#include "scorectl/io.hpp"
#include "scorectl/report.hpp"
#include "scorectl/solve.hpp"

// Command implementations behind the scorectl tool. Each returns the JSON
// document to print plus an exit code; argument parsing lives in the tool.
namespace scorectl::cli {

enum ExitCode { kAnswered = 0, kError = 1, kCapsExceeded = 2, kDisagreement = 3 };

struct Options {
  OracleCaps caps;
  std::uint64_t seed = 1;
  bool verify = false;
  bool oracle_check = false;
  bool timing = false;
};

struct CommandResult {
  io::json output;
  int exit_code = kAnswered;
};

// Inline JSON when the argument looks like JSON, otherwise a file path.
inline io::json load_json_arg(const std::string& arg) {
  auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    try {
      return io::json::parse(arg);
    } catch (const io::json::exception& e) {
      throw ParseError(std::string("inline JSON: ") + e.what());
    }
  }
  return io::read_json_file(arg);
}

inline OracleCaps caps_from_json(const io::json& j) {
  return io::guarded("caps", [&] {
    OracleCaps c;
    if (j.contains("max_candidates")) c.max_candidates = io::size_from_json(j["max_candidates"], "max_candidates");
    if (j.contains("max_votes")) c.max_votes = io::size_from_json(j["max_votes"], "max_votes");
    if (j.contains("max_budget")) c.max_budget = io::size_from_json(j["max_budget"], "max_budget");
    if (j.contains("max_states")) c.max_states = j["max_states"].get<std::uint64_t>();
    if (j.contains("max_3dm_size")) c.max_3dm_size = io::size_from_json(j["max_3dm_size"], "max_3dm_size");
    return c;
  });
}

inline ScoringVector rule_for(const io::json& rule, std::size_t m) { return instantiate(io::rule_from_json(rule), m); }

inline Instance load_instance(const io::json& election, const io::json& rule, const std::string& preferred,
                              std::size_t k) {
  Election e = io::election_from_json(election);
  CandidateId p = e.candidate(preferred);
  ScoringVector v = rule_for(rule, e.num_candidates());
  return Instance{std::move(e), std::move(v), p, k};
}

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline CommandResult finish(RunReport r, const Options& opt, const Stopwatch& sw) {
  if (opt.timing) r.wall_ms = sw.ms();
  int code = r.oracle_agreement == false ? kDisagreement : kAnswered;
  return {to_json(r), code};
}

inline CommandResult cmd_winners(const io::json& election, const io::json& rule, const Options& opt = {}) {
  Stopwatch sw;
  Election e = io::election_from_json(election);
  ScoringVector v = rule_for(rule, e.num_candidates());
  auto t = score_all(e, v);
  RunReport r;
  r.problem = "winners";
  r.digest = digest_of({{"election", io::election_to_json(e)}, {"rule", io::scoring_vector_to_json(v)}});
  r.solver = "election-core";
  io::json w = io::json::array();
  for (auto c : winners(t)) w.push_back(e.name(c));
  io::json s = io::json::object();
  for (std::size_t c = 0; c < e.num_candidates(); ++c) s[e.name(CandidateId(c))] = io::integer_to_json(t.scores[c]);
  r.certificate = {{"winners", w}, {"scores", s}};
  return finish(std::move(r), opt, sw);
}

// Solve one of the three problems on a full instance.
inline CommandResult cmd_solve(Problem problem, const Instance& in, const Options& opt = {}) {
  Stopwatch sw;
  in.validate();
  RunReport r;
  r.problem = to_string(problem);
  r.digest = digest_of(instance_json(problem, in));
  SolverOutcome o;
  try {
    o = solve(problem, in, opt.caps);
  } catch (const UnsupportedRule& e) {
    throw UnsupportedRule(std::string(e.what()) + "; use `scorectl oracle --problem " + to_string(problem) + "`");
  }
  r.feasible = o.feasible;
  r.solver = o.solver;
  r.notes = o.notes;
  r.certificate = certificate_json(in.election, problem, o);
  if (opt.verify) {
    r.verified = verify(problem, in, o);
    if (!*r.verified) throw InternalError("certificate failed re-verification");
  }
  if (opt.oracle_check) {
    try {
      r.oracle_agreement = oracle(problem, in, opt.caps).feasible == o.feasible;
    } catch (const CapExceeded& e) {
      r.notes.push_back(std::string("oracle check skipped: ") + e.what());
    }
  }
  return finish(std::move(r), opt, sw);
}

inline CommandResult cmd_oracle(Problem problem, const Instance& in, const Options& opt = {}) {
  Stopwatch sw;
  in.validate();
  RunReport r;
  r.problem = to_string(problem);
  r.digest = digest_of(instance_json(problem, in));
  auto o = oracle(problem, in, opt.caps);
  r.feasible = o.feasible;
  r.solver = o.solver;
  r.certificate = certificate_json(in.election, problem, o);
  if (opt.verify) {
    r.verified = verify(problem, in, o);
    if (!*r.verified) throw InternalError("oracle certificate failed re-verification");
  }
  return finish(std::move(r), opt, sw);
}

// Manipulation from a surplus table alone. Votes are built over the roster,
// but only the differences to the preferred candidate are known.
inline CommandResult cmd_manipulate_surplus(const io::json& input, const io::json& rule, const std::string& preferred,
                                            std::size_t k, const Options& opt = {}) {
  Stopwatch sw;
  auto s = io::surplus_from_json(input);
  Election roster(s.candidates, {});
  const CandidateId p = roster.candidate(preferred);
  const std::size_t m = roster.num_candidates();
  ScoringVector v = rule_for(rule, m);
  auto others = others_in_order(m, p);
  std::vector<Integer> sur;
  for (auto c : others) sur.push_back(s.surplus[c.value]);

  // Local ids: 0 is p, i + 1 is others[i].
  auto to_roster = [&](const Vote& local) {
    std::vector<CandidateId> r;
    for (auto c : local.ranking()) r.push_back(c.value == 0 ? p : others[c.value - 1]);
    return Vote(std::move(r));
  };
  auto wins = [&](const std::vector<Vote>& votes) {
    std::vector<Integer> t = sur;
    for (const auto& u : votes)
      for (std::size_t i = 0; i < others.size(); ++i)
        t[i] += v[u.position_of(others[i])] - v[u.position_of(p)];
    return std::all_of(t.begin(), t.end(), [](const Integer& x) { return x <= 0; });
  };

  RunReport r;
  r.problem = "manipulation";
  io::json canon = {{"surplus", input}, {"rule", io::scoring_vector_to_json(v)}, {"preferred", preferred}, {"k", k}};
  r.digest = digest_of(canon);
  r.solver = "manipulation:table";
  ManipulationResult res;
  try {
    res = solve_manipulation_surplus(sur, v, k);
  } catch (const UnsupportedRule& e) {
    throw UnsupportedRule(std::string(e.what()) + "; use `scorectl oracle --problem manipulation`");
  }
  SolverOutcome o;
  o.feasible = res.feasible;
  for (const auto& u : res.votes) o.votes.push_back(to_roster(u));
  r.feasible = o.feasible;
  r.certificate = certificate_json(roster, Problem::Manipulation, o);
  if (opt.verify) {
    r.verified = !o.feasible || (o.votes.size() == k && wins(o.votes));
    if (!*r.verified) throw InternalError("certificate failed re-verification");
  }
  if (opt.oracle_check) {
    try {
      r.oracle_agreement = brute_manipulation_surplus(sur, v, k, opt.caps).has_value() == o.feasible;
    } catch (const CapExceeded& e) {
      r.notes.push_back(std::string("oracle check skipped: ") + e.what());
    }
  }
  return finish(std::move(r), opt, sw);
}

inline io::json class_json(const RuleClass& rc) {
  io::json j = {{"complexity", rc.polynomial() ? "P" : "NP-hard"}, {"class", to_string(rc.tag)}};
  if (!rc.shape.empty()) j["shape"] = rc.shape;
  if (rc.tag == RuleTag::LastTwo) {
    j["beta"] = io::integer_to_json(rc.beta);
    j["alpha"] = io::integer_to_json(rc.alpha);
  }
  return j;
}

inline CommandResult cmd_classify(const io::json& rule, const Options& opt = {}) {
  Stopwatch sw;
  GeneratorSpec g = io::rule_from_json(rule);
  if (const auto* t = std::get_if<ExplicitTable>(&g)) {
    auto f = t->table.size() == 1 ? family_of_vector(t->table[0]) : std::nullopt;
    if (!f) throw DomainError("a fixed vector needs at least 7 coefficients with a constant middle to be classified");
    g = *f;
  }
  io::json out = {{"problem", "classify"},
                  {"rule", io::rule_to_json(g)},
                  {"digest", digest_of(io::rule_to_json(g))},
                  {"pure", is_pure(g)},
                  {"ccdv", class_json(classify(g, Problem::Ccdv))},
                  {"bribery", class_json(classify(g, Problem::Bribery))}};
  if (opt.timing) out["wall_ms"] = sw.ms();
  return {out, kAnswered};
}

struct ReductionArgs {
  ReductionTarget target = ReductionTarget::Ccdv;
  TailParams params;
  std::optional<std::size_t> g_votes;
};

inline CommandResult cmd_gen_reduction(const io::json& three_dm, const ReductionArgs& a, const Options& opt = {}) {
  Stopwatch sw;
  ThreeDmInstance src = io::three_dm_from_json(three_dm);
  io::json notes = io::json::array();
  // F-regular inputs (every element in exactly 3F triples) go in as they are.
  const auto deg = src.degrees();
  const std::size_t d = deg[0].empty() ? 0 : deg[0][0];
  if (d == 0 || d % 3 != 0 || !src.is_regular(d)) {
    auto n = normalize_3dm(src);
    src = n.instance;
    notes.push_back("input was not regular; normalized first");
    if (n.forced_negative) notes.push_back("normalization found an uncoverable element; encoding a fixed negative instance");
  }
  auto out = reduce_3dm(src, a.params, a.target, a.g_votes);
  const auto& in = out.instance;
  io::json j = {{"problem", "gen-reduction"},
                {"target", a.target == ReductionTarget::Ccdv ? "ccdv" : "bribery"},
                {"election", io::election_to_json(in.election)},
                {"rule", {{"kind", "vector"}, {"coefficients", io::scoring_vector_to_json(in.rule)}}},
                {"preferred", in.election.name(in.preferred)},
                {"k", in.budget},
                {"manifest", io::manifest_to_json(out)},
                {"notes", notes}};
  j["digest"] = digest_of(j["election"]);
  if (opt.timing) j["wall_ms"] = sw.ms();
  return {j, kAnswered};
}

inline CommandResult cmd_oracle_3dm(const io::json& three_dm, const Options& opt = {}) {
  Stopwatch sw;
  ThreeDmInstance inst = io::three_dm_from_json(three_dm);
  RunReport r;
  r.problem = "3dm";
  r.digest = digest_of(io::three_dm_to_json(inst));
  r.solver = "oracle:3dm";
  auto cover = brute_3dm(inst, opt.caps);
  r.feasible = cover.has_value();
  if (cover) {
    io::json c = io::json::array();
    for (auto i : *cover) {
      const auto& t = inst.triples[i];
      c.push_back({inst.xs[t.x], inst.ys[t.y], inst.zs[t.z]});
    }
    r.certificate = {{"cover", c}};
    if (opt.verify) r.verified = is_cover(inst, *cover);
  }
  return finish(std::move(r), opt, sw);
}

inline CommandResult cmd_fuzz(const fuzz::Config& cfg, const fuzz::Solver& solver = fuzz::run_solver) {
  auto run = fuzz::run(cfg, solver);
  return {fuzz::to_json(cfg, run), run.summary.disagreements ? kDisagreement : kAnswered};
}

// Runs `body`, mapping library errors to exit codes and an error document.
template <class F>
CommandResult run_guarded(F&& body) {
  try {
    return body();
  } catch (const CapExceeded& e) {
    return {{{"error", e.what()}, {"kind", "caps"}, {"cap", e.cap()}}, kCapsExceeded};
  } catch (const ParseError& e) {
    return {{{"error", e.what()}, {"kind", "parse"}}, kError};
  } catch (const UnsupportedRule& e) {
    return {{{"error", e.what()}, {"kind", "unsupported-rule"}}, kError};
  } catch (const Error& e) {
    return {{{"error", e.what()}, {"kind", "error"}}, kError};
  }
}

}  // namespace scorectl::cli
