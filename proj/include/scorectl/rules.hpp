#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scorectl/election.hpp"

namespace scorectl {

// (prefix..., middle, ..., middle, suffix...): the middle value fills whatever
// positions the prefix and suffix leave over.
struct FamilySpec {
  std::vector<Integer> prefix;
  Integer middle = 0;
  std::vector<Integer> suffix;

  void validate() const {
    std::vector<Integer> seq = prefix;
    seq.push_back(middle);
    seq.insert(seq.end(), suffix.begin(), suffix.end());
    for (std::size_t i = 1; i < seq.size(); ++i)
      if (seq[i] > seq[i - 1]) throw DomainError("family coefficients are not weakly decreasing");
  }

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

// One vector per length, starting at first_m.
struct ExplicitTable {
  std::size_t first_m = 1;
  std::vector<ScoringVector> table;

  friend bool operator==(const ExplicitTable&, const ExplicitTable&) = default;
};

// (m-1, m-2, ..., 0); the dual flag gives (0, -1, ..., -(m-1)).
struct BordaFamily {
  bool dual = false;
  friend bool operator==(const BordaFamily&, const BordaFamily&) = default;
};

using GeneratorSpec = std::variant<ExplicitTable, FamilySpec, BordaFamily>;

inline FamilySpec k_approval(std::size_t k) {
  return FamilySpec{std::vector<Integer>(k, Integer(1)), 0, {}};
}

inline FamilySpec k_veto(std::size_t k) {
  return FamilySpec{{}, 1, std::vector<Integer>(k, Integer(0))};
}

inline ScoringVector instantiate(const FamilySpec& f, std::size_t m) {
  f.validate();
  if (m < f.prefix.size() + f.suffix.size())
    throw DimensionError("family needs at least " + std::to_string(f.prefix.size() + f.suffix.size()) +
                         " candidates, got " + std::to_string(m));
  std::vector<Integer> c = f.prefix;
  c.insert(c.end(), m - f.prefix.size() - f.suffix.size(), f.middle);
  c.insert(c.end(), f.suffix.begin(), f.suffix.end());
  return ScoringVector(std::move(c));
}

inline ScoringVector instantiate(const ExplicitTable& t, std::size_t m) {
  if (m < t.first_m || m - t.first_m >= t.table.size())
    throw DimensionError("explicit table has no vector for " + std::to_string(m) + " candidates");
  const auto& v = t.table[m - t.first_m];
  if (v.size() != m) throw DimensionError("explicit table entry has the wrong length");
  return v;
}

inline ScoringVector instantiate(const BordaFamily& b, std::size_t m) {
  std::vector<Integer> c;
  for (std::size_t i = 0; i < m; ++i)
    c.emplace_back(b.dual ? -static_cast<long long>(i) : static_cast<long long>(m - 1 - i));
  return ScoringVector(std::move(c));
}

inline ScoringVector instantiate(const GeneratorSpec& g, std::size_t m) {
  return std::visit([m](const auto& x) { return instantiate(x, m); }, g);
}

// w = gamma * v + delta with gamma > 0.
struct AffineMap {
  Rational gamma;
  Rational delta;
};

inline std::optional<AffineMap> equivalent(const ScoringVector& v, const ScoringVector& w) {
  if (v.size() != w.size()) return std::nullopt;
  const std::size_t m = v.size();
  if (m == 0) return AffineMap{1, 0};
  std::optional<std::size_t> j;
  for (std::size_t i = 1; i < m; ++i)
    if (v[i] != v[0]) {
      j = i;
      break;
    }
  AffineMap a;
  if (!j) {
    a.gamma = 1;
    a.delta = Rational(w[0] - v[0]);
  } else {
    a.gamma = Rational(w[0] - w[*j], v[0] - v[*j]);
    if (a.gamma <= 0) return std::nullopt;
    a.delta = Rational(w[0]) - a.gamma * Rational(v[0]);
  }
  for (std::size_t i = 0; i < m; ++i)
    if (a.gamma * Rational(v[i]) + a.delta != Rational(w[i])) return std::nullopt;
  return a;
}

// Each vector arises from the previous one by inserting a single coefficient.
inline bool is_pure(const ExplicitTable& t) {
  for (std::size_t i = 0; i + 1 < t.table.size(); ++i) {
    auto a = t.table[i].coefficients();
    auto b = t.table[i + 1].coefficients();
    if (b.size() != a.size() + 1) return false;
    bool found = false;
    for (std::size_t skip = 0; skip < b.size() && !found; ++skip) {
      bool ok = true;
      for (std::size_t k = 0, q = 0; k < b.size() && ok; ++k) {
        if (k == skip) continue;
        ok = b[k] == a[q++];
      }
      found = ok;
    }
    if (!found) return false;
  }
  return true;
}

inline bool is_pure(const GeneratorSpec& g) {
  if (const auto* t = std::get_if<ExplicitTable>(&g)) return is_pure(*t);
  return true;
}

inline FamilySpec dualize(const FamilySpec& f) {
  FamilySpec d;
  for (auto it = f.suffix.rbegin(); it != f.suffix.rend(); ++it) d.prefix.push_back(-*it);
  d.middle = -f.middle;
  for (auto it = f.prefix.rbegin(); it != f.prefix.rend(); ++it) d.suffix.push_back(-*it);
  return d;
}

inline GeneratorSpec dualize(const GeneratorSpec& g) {
  if (const auto* f = std::get_if<FamilySpec>(&g)) return dualize(*f);
  if (const auto* b = std::get_if<BordaFamily>(&g)) return BordaFamily{!b->dual};
  const auto& t = std::get<ExplicitTable>(g);
  ExplicitTable d{t.first_m, {}};
  for (const auto& v : t.table) d.table.push_back(v.dual());
  return d;
}

enum class Problem { Manipulation, Ccdv, Bribery };

enum class RuleTag {
  ThreeVeto,
  OneApproval,
  TwoApproval,
  LastTwo,
  TwoOneOneZero,
  HardFewCoefficients,
  HardManyCoefficients,
};

inline const char* to_string(RuleTag t) {
  switch (t) {
    case RuleTag::ThreeVeto: return "ThreeVeto";
    case RuleTag::OneApproval: return "OneApproval";
    case RuleTag::TwoApproval: return "TwoApproval";
    case RuleTag::LastTwo: return "LastTwo";
    case RuleTag::TwoOneOneZero: return "TwoOneOneZero";
    case RuleTag::HardFewCoefficients: return "HardFewCoefficients";
    case RuleTag::HardManyCoefficients: return "HardManyCoefficients";
  }
  return "?";
}

inline const char* to_string(Problem p) {
  switch (p) {
    case Problem::Manipulation: return "manipulation";
    case Problem::Ccdv: return "ccdv";
    case Problem::Bribery: return "bribery";
  }
  return "?";
}

struct RuleClass {
  RuleTag tag = RuleTag::HardManyCoefficients;
  Problem problem = Problem::Ccdv;
  // Tail penalties for LastTwo: the family is (0,...,0,-beta,-alpha).
  Integer beta = 0;
  Integer alpha = 0;
  // Which coefficient pattern makes a hard rule hard.
  std::string shape;

  bool polynomial() const {
    return tag != RuleTag::HardFewCoefficients && tag != RuleTag::HardManyCoefficients;
  }
};

// Reduce to (a1, a2, a3 | a4, a5, a6) with a3 the middle value, shifted so
// a3 = 0 and scaled by the gcd, then walk the case tree. Control by deleting
// voters and bribery share the same polynomial/hard split.
inline RuleClass classify(const FamilySpec& spec, Problem problem) {
  spec.validate();
  RuleClass rc;
  rc.problem = problem;
  std::vector<Integer> pre = spec.prefix;
  std::vector<Integer> suf = spec.suffix;
  while (!pre.empty() && pre.back() == spec.middle) pre.pop_back();
  while (!suf.empty() && suf.front() == spec.middle) suf.erase(suf.begin());
  if (pre.size() >= 3 || suf.size() >= 4) {
    rc.tag = RuleTag::HardManyCoefficients;
    rc.shape = "third coefficient or fourth-from-last differs from the bulk value";
    return rc;
  }
  while (pre.size() < 2) pre.push_back(spec.middle);
  while (suf.size() < 3) suf.insert(suf.begin(), spec.middle);
  Integer a[7] = {0, pre[0], pre[1], spec.middle, suf[0], suf[1], suf[2]};
  for (int i = 1; i <= 6; ++i) a[i] -= spec.middle;
  Integer g = 0;
  for (int i = 1; i <= 6; ++i) g = integer_gcd(g, a[i]);
  if (g > 1)
    for (int i = 1; i <= 6; ++i) a[i] /= g;

  auto hard = [&](std::string shape) {
    rc.tag = RuleTag::HardFewCoefficients;
    rc.shape = std::move(shape);
    return rc;
  };

  if (a[1] == a[3]) {
    if (a[3] == a[4]) {
      rc.tag = RuleTag::LastTwo;
      rc.beta = -a[5];
      rc.alpha = -a[6];
      return rc;
    }
    if (a[4] == a[6]) {
      rc.tag = RuleTag::ThreeVeto;
      return rc;
    }
    return hard("0,...,0,-c,-b,-a with three distinct tail penalties");
  }
  if (a[3] > a[4]) return hard("a1 > a3 > a(m-2)");
  if (a[2] == a[5]) {
    if (a[6] == a[3]) {
      rc.tag = RuleTag::OneApproval;
      return rc;
    }
    if (a[1] - a[3] == a[3] - a[6]) {
      rc.tag = RuleTag::TwoOneOneZero;
      return rc;
    }
    return hard("a,0,...,0,-b with a != b");
  }
  if (a[3] == a[6]) {
    if (a[1] == a[2]) {
      rc.tag = RuleTag::TwoApproval;
      return rc;
    }
    return hard("a1 > a2 > a3 = ... = am");
  }
  if (a[5] < a[3]) return hard("a1 > a3 > a(m-1)");
  return hard("a1 > a3 = a(m-1) > am with a2 > a3");
}

inline RuleClass classify(const GeneratorSpec& g, Problem problem) {
  if (const auto* f = std::get_if<FamilySpec>(&g)) return classify(*f, problem);
  if (std::holds_alternative<BordaFamily>(g)) {
    RuleClass rc;
    rc.problem = problem;
    rc.tag = RuleTag::HardManyCoefficients;
    rc.shape = "unboundedly many distinct coefficients";
    return rc;
  }
  throw DomainError("explicit tables cannot be classified; give a family");
}

// Read a fixed vector as a family: three leading and three trailing
// positions around a constant bulk. Needs m >= 7 so the bulk is nonempty.
inline std::optional<FamilySpec> family_of_vector(const ScoringVector& v) {
  const std::size_t m = v.size();
  if (m < 7) return std::nullopt;
  for (std::size_t i = 4; i + 3 < m; ++i)
    if (v[i] != v[3]) return std::nullopt;
  return FamilySpec{{v[0], v[1], v[2]}, v[3], {v[m - 3], v[m - 2], v[m - 1]}};
}

// Shape tests on a concrete vector, all up to positive affine maps.

struct LastTwoParams {
  Integer beta;
  Integer alpha;
};

// (0,...,0,-beta,-alpha) after shifting by the top coefficient.
inline std::optional<LastTwoParams> match_last_two(const ScoringVector& v) {
  const std::size_t m = v.size();
  if (m < 3 || v[0] != v[m - 3]) return std::nullopt;
  return LastTwoParams{v[0] - v[m - 2], v[0] - v[m - 1]};
}

inline bool is_plurality(const ScoringVector& v) {
  const std::size_t m = v.size();
  return m >= 2 && v[0] > v[1] && v[1] == v[m - 1];
}

// Equivalent to (1,0,...,0,-1), i.e. to (2,1,...,1,0).
inline bool is_front_back(const ScoringVector& v) {
  const std::size_t m = v.size();
  if (m == 2) return v[0] > v[1];
  return m >= 3 && v[1] == v[m - 2] && v[0] > v[1] && v[0] - v[1] == v[m - 2] - v[m - 1];
}

inline bool is_two_approval(const ScoringVector& v) {
  const std::size_t m = v.size();
  return m >= 3 && v[0] == v[1] && v[1] > v[2] && v[2] == v[m - 1];
}

inline bool is_three_veto(const ScoringVector& v) {
  const std::size_t m = v.size();
  return m >= 4 && v[0] == v[m - 4] && v[m - 4] > v[m - 3] && v[m - 3] == v[m - 1];
}

}  // namespace scorectl
