#include <CLI11.hpp>

#include <iostream>

#include "scorectl/cli.hpp"

using namespace scorectl;
using scorectl::cli::CommandResult;

namespace {

struct InstanceFlags {
  std::string election, rule, preferred;
  std::size_t k = 0;

  void attach(CLI::App* sub) {
    sub->add_option("--election", election, "election JSON file (or inline JSON)")->required();
    sub->add_option("--rule", rule, "rule JSON file (or inline JSON)")->required();
    sub->add_option("--preferred", preferred, "preferred candidate name")->required();
    sub->add_option("--k", k, "budget")->required();
  }

  Instance load() const {
    return cli::load_instance(cli::load_json_arg(election), cli::load_json_arg(rule), preferred, k);
  }
};

int emit(const CommandResult& r) {
  if (r.output.contains("error") && r.exit_code != cli::kAnswered && r.exit_code != cli::kDisagreement) {
    std::cerr << "scorectl: " << r.output["error"].get<std::string>() << "\n";
    return r.exit_code;
  }
  std::cout << r.output.dump(2) << "\n";
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strategic-action solvers for positional scoring elections"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  cli::Options opt;
  std::string caps_arg;
  app.add_option("--seed", opt.seed, "seed for randomized commands");
  app.add_option("--caps", caps_arg, "oracle caps JSON file (or inline JSON)");
  app.add_flag("--verify", opt.verify, "re-check every certificate before printing it");
  app.add_flag("--oracle-check", opt.oracle_check, "also run the exhaustive oracle and record agreement");
  app.add_flag("--time", opt.timing, "report wall time in milliseconds");

  std::string election, rule;
  auto* winners = app.add_subcommand("winners", "score an election");
  winners->add_option("--election", election)->required();
  winners->add_option("--rule", rule)->required();

  InstanceFlags manip_flags, bribe_flags, ccdv_flags, oracle_flags;
  bool surplus_only = false;
  auto* manipulate = app.add_subcommand("manipulate", "coalitional manipulation");
  manip_flags.attach(manipulate);
  manipulate->add_flag("--surplus-only", surplus_only,
                       "--election holds {\"candidates\":[...],\"surplus\":{name:value}} instead of votes");

  auto* bribe = app.add_subcommand("bribe", "bribery");
  bribe_flags.attach(bribe);
  auto* ccdv = app.add_subcommand("ccdv", "constructive control by deleting voters");
  ccdv_flags.attach(ccdv);

  auto* classify = app.add_subcommand("classify", "complexity of a rule family for ccdv and bribery");
  classify->add_option("--rule", rule)->required();

  std::string three_dm, target = "ccdv", alpha, beta, gamma;
  std::optional<std::size_t> g_votes;
  auto* gen = app.add_subcommand("gen-reduction", "encode a 3DM instance as a ccdv or bribery instance");
  gen->add_option("--3dm", three_dm, "3DM JSON file (or inline JSON)")->required();
  gen->add_option("--target", target)->check(CLI::IsMember({"ccdv", "bribery"}));
  gen->add_option("--alpha", alpha)->required();
  gen->add_option("--beta", beta)->required();
  gen->add_option("--gamma", gamma)->required();
  gen->add_option("--G", g_votes, "copies of each G-vote (bribery)");

  std::string oracle_problem;
  auto* oracle = app.add_subcommand("oracle", "exhaustive search within caps");
  oracle->add_option("--problem", oracle_problem)
      ->required()
      ->check(CLI::IsMember({"manipulation", "ccdv", "bribery", "3dm"}));
  oracle->add_option("--election", oracle_flags.election);
  oracle->add_option("--rule", oracle_flags.rule);
  oracle->add_option("--preferred", oracle_flags.preferred);
  oracle->add_option("--k", oracle_flags.k);
  oracle->add_option("--3dm", three_dm);

  fuzz::Config fcfg;
  std::string fuzz_problem = "ccdv", family = "any";
  auto* fz = app.add_subcommand("fuzz", "compare solvers against the oracles on random instances");
  fz->add_option("--problem", fuzz_problem)->check(CLI::IsMember({"manipulation", "ccdv", "bribery"}));
  fz->add_option("--family", family)
      ->check(CLI::IsMember({"any", "plurality", "last-two", "front-back", "generic"}));
  fz->add_option("--count", fcfg.count);
  fz->add_option("--jobs", fcfg.jobs);
  fz->add_option("--repro-dir", fcfg.repro_dir, "where minimized disagreements are written");

  CLI11_PARSE(app, argc, argv);

  auto result = cli::run_guarded([&]() -> CommandResult {
    if (!caps_arg.empty()) opt.caps = cli::caps_from_json(cli::load_json_arg(caps_arg));
    if (*winners) return cli::cmd_winners(cli::load_json_arg(election), cli::load_json_arg(rule), opt);
    if (*manipulate) {
      if (surplus_only)
        return cli::cmd_manipulate_surplus(cli::load_json_arg(manip_flags.election),
                                           cli::load_json_arg(manip_flags.rule), manip_flags.preferred,
                                           manip_flags.k, opt);
      return cli::cmd_solve(Problem::Manipulation, manip_flags.load(), opt);
    }
    if (*bribe) return cli::cmd_solve(Problem::Bribery, bribe_flags.load(), opt);
    if (*ccdv) return cli::cmd_solve(Problem::Ccdv, ccdv_flags.load(), opt);
    if (*classify) return cli::cmd_classify(cli::load_json_arg(rule), opt);
    if (*gen) {
      cli::ReductionArgs a;
      a.target = target == "bribery" ? ReductionTarget::Bribery : ReductionTarget::Ccdv;
      a.params = TailParams{io::integer_from_json(alpha), io::integer_from_json(beta), io::integer_from_json(gamma)};
      a.g_votes = g_votes;
      return cli::cmd_gen_reduction(cli::load_json_arg(three_dm), a, opt);
    }
    if (*oracle) {
      if (oracle_problem == "3dm") {
        if (three_dm.empty()) throw ParseError("oracle --problem 3dm needs --3dm");
        return cli::cmd_oracle_3dm(cli::load_json_arg(three_dm), opt);
      }
      if (oracle_flags.election.empty() || oracle_flags.rule.empty() || oracle_flags.preferred.empty())
        throw ParseError("oracle needs --election, --rule and --preferred");
      return cli::cmd_oracle(problem_from_string(oracle_problem), oracle_flags.load(), opt);
    }
    fcfg.problem = problem_from_string(fuzz_problem);
    fcfg.family = fuzz::family_from_string(family);
    fcfg.seed = opt.seed;
    fcfg.caps = opt.caps;
    return cli::cmd_fuzz(fcfg);
  });
  return emit(result);
}
