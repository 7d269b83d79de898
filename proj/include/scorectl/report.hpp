#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "scorectl/io.hpp"
#include "scorectl/outcome.hpp"

namespace scorectl {

inline std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Digest of the canonical (key-sorted, compact) JSON form.
inline std::string digest_of(const io::json& j) { return fnv1a_hex(j.dump()); }

// The outcome of one command, as printed by the CLI. Certificate fields
// ("votes", "deleted", "bribed", "replacements") sit at the top level.
struct RunReport {
  std::string problem;
  std::string digest;
  std::optional<bool> feasible;
  io::json certificate = io::json::object();
  std::string solver;
  std::vector<std::string> notes;
  std::optional<bool> verified;
  std::optional<bool> oracle_agreement;
  std::optional<double> wall_ms;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

inline const char* const kCertificateKeys[] = {"votes", "deleted", "bribed", "replacements", "winners", "scores", "cover"};

inline io::json to_json(const RunReport& r) {
  io::json j = {{"problem", r.problem}, {"digest", r.digest}, {"solver", r.solver}, {"notes", r.notes}};
  j["feasible"] = r.feasible ? io::json(*r.feasible) : io::json(nullptr);
  j["verified"] = r.verified ? io::json(*r.verified) : io::json(nullptr);
  j["oracle_agreement"] = r.oracle_agreement ? io::json(*r.oracle_agreement) : io::json(nullptr);
  if (r.wall_ms) j["wall_ms"] = *r.wall_ms;
  for (const auto& [k, v] : r.certificate.items()) j[k] = v;
  return j;
}

inline RunReport report_from_json(const io::json& j) {
  return io::guarded("report", [&] {
    RunReport r;
    r.problem = j.at("problem").get<std::string>();
    r.digest = j.at("digest").get<std::string>();
    r.solver = j.value("solver", "");
    r.notes = j.value("notes", std::vector<std::string>{});
    auto opt_bool = [&](const char* key) -> std::optional<bool> {
      if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
      return j.at(key).get<bool>();
    };
    r.feasible = opt_bool("feasible");
    r.verified = opt_bool("verified");
    r.oracle_agreement = opt_bool("oracle_agreement");
    if (j.contains("wall_ms")) r.wall_ms = j.at("wall_ms").get<double>();
    for (const char* key : kCertificateKeys)
      if (j.contains(key)) r.certificate[key] = j.at(key);
    return r;
  });
}

// Certificate JSON for a solver outcome, with votes spelled out by name.
inline io::json certificate_json(const Election& roster, Problem problem, const SolverOutcome& o) {
  io::json c = io::json::object();
  if (!o.feasible) return c;
  auto votes = [&](const std::vector<Vote>& vs) {
    io::json a = io::json::array();
    for (const auto& v : vs) a.push_back(io::vote_to_json(roster, v));
    return a;
  };
  switch (problem) {
    case Problem::Manipulation:
      c["votes"] = votes(o.votes);
      break;
    case Problem::Ccdv:
      c["deleted"] = o.deleted;
      break;
    case Problem::Bribery:
      c["bribed"] = o.bribed;
      c["replacements"] = votes(o.votes);
      break;
  }
  return c;
}

}  // namespace scorectl
