#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "scorectl/report.hpp"
#include "scorectl/solve.hpp"

namespace scorectl::fuzz {

// Rule families the random instances are drawn from.
enum class Family { Any, Plurality, LastTwo, FrontBack, Generic };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::Any: return "any";
    case Family::Plurality: return "plurality";
    case Family::LastTwo: return "last-two";
    case Family::FrontBack: return "front-back";
    case Family::Generic: return "generic";
  }
  return "?";
}

inline Family family_from_string(const std::string& s) {
  for (auto f : {Family::Any, Family::Plurality, Family::LastTwo, Family::FrontBack, Family::Generic})
    if (s == to_string(f)) return f;
  throw DomainError("unknown rule family '" + s + "'");
}

// Families with a dedicated solver for each problem.
inline std::vector<Family> families_for(Problem p) {
  switch (p) {
    case Problem::Manipulation: return {Family::Generic};
    case Problem::Ccdv: return {Family::Plurality, Family::LastTwo};
    case Problem::Bribery: return {Family::FrontBack, Family::LastTwo};
  }
  return {};
}

struct Limits {
  std::size_t max_candidates, max_votes, max_budget;
};

// Instance sizes for the oracle comparison.
inline Limits default_limits(Problem p) {
  switch (p) {
    case Problem::Manipulation: return {5, 6, 3};
    case Problem::Ccdv: return {5, 7, 3};
    case Problem::Bribery: return {5, 6, 2};
  }
  return {5, 6, 2};
}

// Independent stream per (seed, index).
inline std::mt19937_64 rng_for(std::uint64_t seed, std::uint64_t index) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return std::mt19937_64(mix(seed ^ mix(index)));
}

inline std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// A positive affine image of `base`, so solvers see rules in disguise.
inline ScoringVector disguise(std::mt19937_64& rng, const std::vector<long long>& base) {
  long long scale = static_cast<long long>(uniform(rng, 1, 3));
  long long shift = static_cast<long long>(uniform(rng, 0, 6)) - 3;
  std::vector<Integer> c;
  for (auto x : base) c.emplace_back(x * scale + shift);
  return ScoringVector(std::move(c));
}

inline ScoringVector random_rule(std::mt19937_64& rng, Family f, std::size_t m) {
  std::vector<long long> v(m, 0);
  switch (f) {
    case Family::Plurality:
      v[0] = 1;
      break;
    case Family::FrontBack:
      v[0] = 1;
      v[m - 1] = -1;
      if (m == 2) v[1] = 0;
      break;
    case Family::LastTwo: {
      long long beta = static_cast<long long>(uniform(rng, 0, 3));
      long long alpha = static_cast<long long>(uniform(rng, static_cast<std::size_t>(std::max(beta, 1LL)), 4));
      v[m - 2] = -beta;
      v[m - 1] = -alpha;
      break;
    }
    case Family::Generic:
    case Family::Any:
      for (auto& x : v) x = static_cast<long long>(uniform(rng, 0, 4));
      std::sort(v.begin(), v.end(), std::greater<>());
      break;
  }
  return disguise(rng, v);
}

inline Vote random_vote(std::mt19937_64& rng, std::size_t m) {
  std::vector<CandidateId> r;
  for (std::size_t i = 0; i < m; ++i) r.emplace_back(i);
  std::shuffle(r.begin(), r.end(), rng);
  return Vote(std::move(r));
}

inline Instance random_instance(std::mt19937_64& rng, Problem p, Family f, const Limits& lim) {
  std::size_t min_m = f == Family::LastTwo ? 3 : 2;
  std::size_t m = uniform(rng, min_m, std::max(min_m, lim.max_candidates));
  std::size_t n = uniform(rng, 0, lim.max_votes);
  Election e(m);
  for (std::size_t i = 0; i < n; ++i) e.add(random_vote(rng, m));
  Instance in{std::move(e), random_rule(rng, f, m), CandidateId(uniform(rng, 0, m - 1)),
              uniform(rng, 0, lim.max_budget)};
  (void)p;
  return in;
}

inline Family pick_family(Problem p, Family requested, std::size_t index) {
  if (requested != Family::Any) return requested;
  auto fams = families_for(p);
  return fams[index % fams.size()];
}

using Solver = std::function<SolverOutcome(Problem, const Instance&)>;

inline SolverOutcome run_solver(Problem p, const Instance& in) { return solve(p, in); }

struct CaseResult {
  std::size_t index = 0;
  Family family = Family::Any;
  Instance instance;
  bool solver_feasible = false;
  bool oracle_feasible = false;
  bool solver_verified = true;
  std::string solver;
  std::string error;  // solver or oracle threw

  bool agree() const { return error.empty() && solver_feasible == oracle_feasible && solver_verified; }
};

inline CaseResult check_case(Problem p, const Instance& in, const Solver& solver, const OracleCaps& caps) {
  CaseResult r;
  r.instance = in;
  try {
    auto s = solver(p, in);
    auto o = oracle(p, in, caps);
    r.solver = s.solver;
    r.solver_feasible = s.feasible;
    r.oracle_feasible = o.feasible;
    r.solver_verified = verify(p, in, s);
  } catch (const Error& e) {
    r.error = e.what();
  }
  return r;
}

// Greedy shrink: drop single votes, then lower the budget, while the case
// still disagrees.
inline Instance minimize(Problem p, Instance in, const Solver& solver, const OracleCaps& caps) {
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t g = 0; g < in.election.groups().size() && !progress; ++g) {
      Instance smaller = in;
      smaller.election.remove(in.election.groups()[g].vote);
      if (!check_case(p, smaller, solver, caps).agree()) {
        in = std::move(smaller);
        progress = true;
      }
    }
    if (!progress && in.budget > 0) {
      Instance smaller = in;
      --smaller.budget;
      if (!check_case(p, smaller, solver, caps).agree()) {
        in = std::move(smaller);
        progress = true;
      }
    }
  }
  return in;
}

struct Config {
  Problem problem = Problem::Ccdv;
  Family family = Family::Any;
  std::uint64_t seed = 1;
  std::size_t count = 200;
  std::size_t jobs = 1;
  OracleCaps caps;
  std::string repro_dir;  // empty: do not write reproducers
};

struct Summary {
  std::size_t total = 0, agreements = 0, disagreements = 0, feasible = 0;
  std::vector<std::string> repro_files;
  std::vector<Instance> minimized;
};

struct Run {
  std::vector<CaseResult> cases;
  Summary summary;
};

inline Run run(const Config& cfg, const Solver& solver = run_solver) {
  Run out;
  out.cases.resize(cfg.count);
  const Limits lim = default_limits(cfg.problem);
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < cfg.count; i += step) {
      auto rng = rng_for(cfg.seed, i);
      Family f = pick_family(cfg.problem, cfg.family, i);
      auto in = random_instance(rng, cfg.problem, f, lim);
      out.cases[i] = check_case(cfg.problem, in, solver, cfg.caps);
      out.cases[i].index = i;
      out.cases[i].family = f;
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, cfg.jobs);
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(work, t, jobs);
    for (auto& th : pool) th.join();
  }
  for (const auto& c : out.cases) {
    ++out.summary.total;
    if (c.agree()) {
      ++out.summary.agreements;
      if (c.oracle_feasible) ++out.summary.feasible;
      continue;
    }
    ++out.summary.disagreements;
    auto small = minimize(cfg.problem, c.instance, solver, cfg.caps);
    out.summary.minimized.push_back(small);
    if (!cfg.repro_dir.empty()) {
      std::filesystem::create_directories(cfg.repro_dir);
      auto path = std::filesystem::path(cfg.repro_dir) /
                  ("repro-" + std::string(scorectl::to_string(cfg.problem)) + "-" + std::to_string(c.index) + ".json");
      std::ofstream(path) << instance_json(cfg.problem, small).dump(2) << "\n";
      out.summary.repro_files.push_back(path.string());
    }
  }
  return out;
}

// One JSON document, no timings, so equal seeds give identical bytes.
inline io::json to_json(const Config& cfg, const Run& r) {
  io::json reports = io::json::array();
  for (const auto& c : r.cases) {
    io::json j = {{"index", c.index},
                  {"family", to_string(c.family)},
                  {"digest", digest_of(instance_json(cfg.problem, c.instance))},
                  {"solver", c.solver},
                  {"solver_feasible", c.solver_feasible},
                  {"oracle_feasible", c.oracle_feasible},
                  {"verified", c.solver_verified},
                  {"agree", c.agree()}};
    if (!c.error.empty()) j["error"] = c.error;
    reports.push_back(std::move(j));
  }
  return {{"problem", scorectl::to_string(cfg.problem)},
          {"seed", cfg.seed},
          {"reports", reports},
          {"summary",
           {{"total", r.summary.total},
            {"agreements", r.summary.agreements},
            {"disagreements", r.summary.disagreements},
            {"feasible", r.summary.feasible},
            {"repro_files", r.summary.repro_files}}}};
}

}  // namespace scorectl::fuzz
