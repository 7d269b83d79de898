#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "scorectl/errors.hpp"

namespace scorectl {

struct Triple {
  std::size_t x = 0, y = 0, z = 0;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// Three equal-size ground sets and a multiset of triples over them.
struct ThreeDmInstance {
  std::vector<std::string> xs, ys, zs;
  std::vector<Triple> triples;

  std::size_t k() const noexcept { return xs.size(); }

  void validate() const {
    if (xs.size() != ys.size() || ys.size() != zs.size())
      throw DomainError("3DM ground sets must have equal size");
    for (const auto& t : triples)
      if (t.x >= xs.size() || t.y >= ys.size() || t.z >= zs.size())
        throw DomainError("3DM triple refers to an unknown element");
  }

  // Occurrence counts per element, one vector per coordinate.
  std::array<std::vector<std::size_t>, 3> degrees() const {
    std::array<std::vector<std::size_t>, 3> d{std::vector<std::size_t>(xs.size(), 0),
                                              std::vector<std::size_t>(ys.size(), 0),
                                              std::vector<std::size_t>(zs.size(), 0)};
    for (const auto& t : triples) {
      ++d[0][t.x];
      ++d[1][t.y];
      ++d[2][t.z];
    }
    return d;
  }

  bool is_regular(std::size_t degree) const {
    for (const auto& side : degrees())
      for (auto v : side)
        if (v != degree) return false;
    return true;
  }

  static ThreeDmInstance with_size(std::size_t k) {
    ThreeDmInstance inst;
    for (std::size_t i = 0; i < k; ++i) {
      inst.xs.push_back("x" + std::to_string(i + 1));
      inst.ys.push_back("y" + std::to_string(i + 1));
      inst.zs.push_back("z" + std::to_string(i + 1));
    }
    return inst;
  }
};

// Indices into triples forming a perfect cover.
inline bool is_cover(const ThreeDmInstance& inst, const std::vector<std::size_t>& chosen) {
  if (chosen.size() != inst.k()) return false;
  std::vector<bool> ux(inst.k()), uy(inst.k()), uz(inst.k());
  std::vector<bool> used_idx(inst.triples.size());
  for (auto i : chosen) {
    if (i >= inst.triples.size() || used_idx[i]) return false;
    used_idx[i] = true;
    const auto& t = inst.triples[i];
    if (ux[t.x] || uy[t.y] || uz[t.z]) return false;
    ux[t.x] = uy[t.y] = uz[t.z] = true;
  }
  return true;
}

// Smallest 3-regular instance without a cover (nine triples, three per side).
inline ThreeDmInstance canonical_negative_instance() {
  auto inst = ThreeDmInstance::with_size(3);
  inst.triples = {{0, 0, 0}, {0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0},
                  {1, 2, 2}, {2, 1, 2}, {2, 2, 1}, {2, 2, 2}};
  return inst;
}

struct NormalizedThreeDm {
  ThreeDmInstance instance;
  // Set when pruning proved the input has no cover; `instance` is then the
  // canonical negative instance.
  bool forced_negative = false;
  // Input triples every cover has to use (degree-one elements).
  std::vector<std::size_t> forced;
};

// Make every element occur exactly three times without changing whether a
// cover exists. Input elements must occur at most three times.
inline NormalizedThreeDm normalize_3dm(const ThreeDmInstance& in) {
  in.validate();
  for (const auto& side : in.degrees())
    for (auto d : side)
      if (d > 3) throw DomainError("3DM element occurs more than three times");

  const std::size_t k = in.k();
  std::array<std::vector<bool>, 3> alive{std::vector<bool>(k, true), std::vector<bool>(k, true),
                                         std::vector<bool>(k, true)};
  std::vector<bool> keep(in.triples.size(), true);
  NormalizedThreeDm out;
  auto negative = [&] {
    out.instance = canonical_negative_instance();
    out.forced_negative = true;
    return out;
  };
  auto coord = [](const Triple& t, int s) { return s == 0 ? t.x : s == 1 ? t.y : t.z; };

  for (bool changed = true; changed;) {
    changed = false;
    std::array<std::vector<std::size_t>, 3> deg{std::vector<std::size_t>(k, 0), std::vector<std::size_t>(k, 0),
                                                std::vector<std::size_t>(k, 0)};
    for (std::size_t i = 0; i < in.triples.size(); ++i)
      if (keep[i])
        for (int s = 0; s < 3; ++s) ++deg[s][coord(in.triples[i], s)];
    for (int s = 0; s < 3; ++s)
      for (std::size_t e = 0; e < k; ++e)
        if (alive[s][e] && deg[s][e] == 0) return negative();
    for (int s = 0; s < 3 && !changed; ++s)
      for (std::size_t e = 0; e < k && !changed; ++e) {
        if (!alive[s][e] || deg[s][e] != 1) continue;
        std::size_t f = 0;
        while (!(keep[f] && coord(in.triples[f], s) == e)) ++f;
        const Triple t = in.triples[f];
        out.forced.push_back(f);
        alive[0][t.x] = alive[1][t.y] = alive[2][t.z] = false;
        for (std::size_t i = 0; i < in.triples.size(); ++i) {
          const auto& u = in.triples[i];
          if (u.x == t.x || u.y == t.y || u.z == t.z) keep[i] = false;
        }
        changed = true;
      }
  }

  // Re-index surviving elements.
  ThreeDmInstance& res = out.instance;
  std::array<std::vector<std::size_t>, 3> idx{std::vector<std::size_t>(k), std::vector<std::size_t>(k),
                                              std::vector<std::size_t>(k)};
  std::array<std::vector<std::string>*, 3> names{&res.xs, &res.ys, &res.zs};
  std::array<const std::vector<std::string>*, 3> src{&in.xs, &in.ys, &in.zs};
  for (int s = 0; s < 3; ++s)
    for (std::size_t e = 0; e < k; ++e)
      if (alive[s][e]) {
        idx[s][e] = names[s]->size();
        names[s]->push_back((*src[s])[e]);
      }
  if (res.xs.size() != res.ys.size() || res.ys.size() != res.zs.size()) return negative();
  for (std::size_t i = 0; i < in.triples.size(); ++i)
    if (keep[i]) {
      const auto& t = in.triples[i];
      res.triples.push_back({idx[0][t.x], idx[1][t.y], idx[2][t.z]});
    }

  // Degree-two elements come in equal numbers on each side; pair them up and
  // give each triple of them a private gadget that adds one occurrence each.
  auto d = res.degrees();
  std::array<std::vector<std::size_t>, 3> two;
  for (int s = 0; s < 3; ++s)
    for (std::size_t e = 0; e < d[s].size(); ++e)
      if (d[s][e] == 2) two[s].push_back(e);
  if (two[0].size() != two[1].size() || two[1].size() != two[2].size())
    throw InternalError("degree-two elements are unbalanced");
  for (std::size_t i = 0; i < two[0].size(); ++i) {
    std::size_t x = two[0][i], y = two[1][i], z = two[2][i];
    std::size_t x2 = res.xs.size(), y2 = res.ys.size(), z2 = res.zs.size();
    res.xs.push_back(res.xs[x] + "'");
    res.ys.push_back(res.ys[y] + "'");
    res.zs.push_back(res.zs[z] + "'");
    res.triples.push_back({x, y2, z2});
    res.triples.push_back({x2, y, z2});
    res.triples.push_back({x2, y2, z});
    res.triples.push_back({x2, y2, z2});
  }
  return out;
}

// Every triple repeated f times.
inline ThreeDmInstance to_f3dm(const ThreeDmInstance& in, std::size_t f) {
  if (f == 0) throw DomainError("multiplicity must be at least 1");
  ThreeDmInstance out = in;
  out.triples.clear();
  for (const auto& t : in.triples)
    for (std::size_t i = 0; i < f; ++i) out.triples.push_back(t);
  return out;
}

// Add `extra` private components, each three copies of a fresh triple. Cover
// existence is unchanged and k grows by `extra`.
inline ThreeDmInstance pad_with_forced_components(const ThreeDmInstance& in, std::size_t extra) {
  ThreeDmInstance out = in;
  for (std::size_t i = 0; i < extra; ++i) {
    std::size_t n = out.xs.size();
    out.xs.push_back("xp" + std::to_string(i + 1));
    out.ys.push_back("yp" + std::to_string(i + 1));
    out.zs.push_back("zp" + std::to_string(i + 1));
    for (int c = 0; c < 3; ++c) out.triples.push_back({n, n, n});
  }
  return out;
}

}  // namespace scorectl
