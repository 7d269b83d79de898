#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "scorectl/election.hpp"
#include "scorectl/reductions.hpp"
#include "scorectl/rules.hpp"
#include "scorectl/three_dm.hpp"

namespace scorectl::io {

using nlohmann::json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

// Small values as JSON numbers, the rest as decimal strings.
inline json integer_to_json(const Integer& v) {
  if (auto x = to_int64(v)) return *x;
  return v.str();
}

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("expected an integer or a \"p/q\" string, got " + j.dump());
}

inline Integer integer_from_json(const json& j) {
  Rational q = rational_from_json(j);
  if (boost::multiprecision::denominator(q) != 1) throw ParseError("expected an integer, got " + j.dump());
  return boost::multiprecision::numerator(q);
}

inline std::size_t size_from_json(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    throw ParseError(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

template <class F>
auto guarded(const char* ctx, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string(ctx) + ": " + e.what());
  }
}

inline Vote vote_from_names(const Election& roster, const json& ranking) {
  if (!ranking.is_array()) throw ParseError("ranking must be an array of candidate names");
  std::vector<CandidateId> r;
  for (const auto& n : ranking) r.push_back(roster.candidate(n.get<std::string>()));
  if (r.size() != roster.num_candidates())
    throw DimensionError("ranking lists " + std::to_string(r.size()) + " candidates, roster has " +
                         std::to_string(roster.num_candidates()));
  return Vote(std::move(r));
}

inline json vote_to_json(const Election& roster, const Vote& v) {
  json a = json::array();
  for (auto c : v.ranking()) a.push_back(roster.name(c));
  return a;
}

inline std::vector<std::string> names_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("\"candidates\" must be an array of names");
  std::vector<std::string> names;
  for (const auto& n : j) names.push_back(n.get<std::string>());
  return names;
}

// {"candidates":[...],"votes":[{"ranking":[...],"count":n}, ...]}
inline Election election_from_json(const json& j) {
  return guarded("election", [&] {
    Election e(names_from_json(j.at("candidates")), {});
    for (const auto& v : j.value("votes", json::array())) {
      std::size_t count = v.contains("count") ? size_from_json(v.at("count"), "count") : 1;
      e.add(vote_from_names(e, v.at("ranking")), count);
    }
    return e;
  });
}

inline json election_to_json(const Election& e) {
  json votes = json::array();
  for (const auto& g : e.groups()) votes.push_back({{"ranking", vote_to_json(e, g.vote)}, {"count", g.count}});
  return {{"candidates", e.names()}, {"votes", votes}};
}

// Surplus-only manipulation input:
// {"candidates":[...],"surplus":{"name":value, ...}}; missing entries are 0.
struct SurplusInput {
  std::vector<std::string> candidates;
  std::vector<Integer> surplus;  // per candidate; the preferred entry is ignored
};

inline SurplusInput surplus_from_json(const json& j) {
  return guarded("surplus input", [&] {
    SurplusInput s;
    s.candidates = names_from_json(j.at("candidates"));
    Election roster(s.candidates, {});
    s.surplus.assign(s.candidates.size(), 0);
    for (const auto& [name, v] : j.at("surplus").items()) s.surplus[roster.candidate(name).value] = integer_from_json(v);
    return s;
  });
}

inline std::vector<Integer> integers_from_json(const json& a) {
  if (!a.is_array()) throw ParseError("expected an array of coefficients");
  std::vector<Rational> q;
  for (const auto& x : a) q.push_back(rational_from_json(x));
  return clear_denominators(q);
}

// {"kind":"family","prefix":[...],"middle":x,"suffix":[...]}
// {"kind":"named","name":"borda"|"k-approval"|"k-veto","k":n}
// {"kind":"vector","coefficients":[...]}   one fixed length
inline GeneratorSpec rule_from_json(const json& j) {
  return guarded("rule", [&]() -> GeneratorSpec {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "family") {
      std::vector<Rational> all;
      std::vector<Rational> pre, suf;
      for (const auto& x : j.value("prefix", json::array())) pre.push_back(rational_from_json(x));
      Rational mid = rational_from_json(j.at("middle"));
      for (const auto& x : j.value("suffix", json::array())) suf.push_back(rational_from_json(x));
      all = pre;
      all.push_back(mid);
      all.insert(all.end(), suf.begin(), suf.end());
      auto ints = clear_denominators(all);
      FamilySpec f;
      f.prefix.assign(ints.begin(), ints.begin() + static_cast<std::ptrdiff_t>(pre.size()));
      f.middle = ints[pre.size()];
      f.suffix.assign(ints.begin() + static_cast<std::ptrdiff_t>(pre.size() + 1), ints.end());
      f.validate();
      return f;
    }
    if (kind == "named") {
      const std::string name = j.at("name").get<std::string>();
      if (name == "borda") return BordaFamily{};
      if (name == "plurality") return k_approval(1);
      std::size_t k = size_from_json(j.at("k"), "k");
      if (name == "k-approval") return k_approval(k);
      if (name == "k-veto") return k_veto(k);
      throw DomainError("unknown named rule '" + name + "'");
    }
    if (kind == "vector") {
      ScoringVector v(integers_from_json(j.at("coefficients")));
      return ExplicitTable{v.size(), {v}};
    }
    throw DomainError("unknown rule kind '" + kind + "'");
  });
}

inline json rule_to_json(const GeneratorSpec& g) {
  auto arr = [](const std::vector<Integer>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(integer_to_json(x));
    return a;
  };
  if (const auto* f = std::get_if<FamilySpec>(&g))
    return {{"kind", "family"}, {"prefix", arr(f->prefix)}, {"middle", integer_to_json(f->middle)},
            {"suffix", arr(f->suffix)}};
  if (const auto* b = std::get_if<BordaFamily>(&g)) {
    if (b->dual) throw DomainError("the reversed Borda family has no JSON form");
    return {{"kind", "named"}, {"name", "borda"}};
  }
  const auto& t = std::get<ExplicitTable>(g);
  if (t.table.size() != 1) throw DomainError("only single-vector tables have a JSON form");
  std::vector<Integer> c(t.table[0].coefficients().begin(), t.table[0].coefficients().end());
  return {{"kind", "vector"}, {"coefficients", arr(c)}};
}

inline json scoring_vector_to_json(const ScoringVector& v) {
  json a = json::array();
  for (const auto& x : v.coefficients()) a.push_back(integer_to_json(x));
  return a;
}

// {"X":[...],"Y":[...],"Z":[...],"M":[[x,y,z],...]}
inline ThreeDmInstance three_dm_from_json(const json& j) {
  return guarded("3dm", [&] {
    ThreeDmInstance inst;
    inst.xs = names_from_json(j.at("X"));
    inst.ys = names_from_json(j.at("Y"));
    inst.zs = names_from_json(j.at("Z"));
    auto find = [](const std::vector<std::string>& side, const std::string& n) {
      for (std::size_t i = 0; i < side.size(); ++i)
        if (side[i] == n) return i;
      throw DomainError("unknown 3DM element '" + n + "'");
    };
    for (const auto& t : j.at("M")) {
      if (!t.is_array() || t.size() != 3) throw ParseError("each triple needs three elements");
      inst.triples.push_back({find(inst.xs, t[0].get<std::string>()), find(inst.ys, t[1].get<std::string>()),
                              find(inst.zs, t[2].get<std::string>())});
    }
    inst.validate();
    return inst;
  });
}

inline json three_dm_to_json(const ThreeDmInstance& inst) {
  json m = json::array();
  for (const auto& t : inst.triples) m.push_back({inst.xs[t.x], inst.ys[t.y], inst.zs[t.z]});
  return {{"X", inst.xs}, {"Y", inst.ys}, {"Z", inst.zs}, {"M", m}};
}

inline json manifest_to_json(const ReductionOutput& r) {
  json groups = json::array();
  for (const auto& me : r.manifest) {
    json g = {{"group", me.group}, {"role", me.role},
              {"count", r.instance.election.groups().at(me.group).count}};
    if (me.tuple) g["tuple"] = *me.tuple;
    if (!me.slot.empty()) g["slot"] = me.slot;
    if (!me.target.empty()) g["target"] = me.target;
    if (!me.loss.empty()) g["loss"] = me.loss;
    groups.push_back(std::move(g));
  }
  json losses = json::object();
  const auto& names = r.instance.election.names();
  for (std::size_t c = 0; c < names.size(); ++c)
    if (r.setup_loss[c] != 0) losses[names[c]] = integer_to_json(r.setup_loss[c]);
  json out = {{"groups", groups},
              {"setup_loss", losses},
              {"padding", r.padding},
              {"budget", r.instance.budget},
              {"preferred", r.instance.election.name(r.instance.preferred)},
              {"rule", scoring_vector_to_json(r.instance.rule)},
              {"source", three_dm_to_json(r.source)}};
  if (r.target == ReductionTarget::Bribery) out["G"] = r.g_votes;
  return out;
}

}  // namespace scorectl::io
