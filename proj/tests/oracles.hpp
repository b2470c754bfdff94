#pragma once

// Test-only reference computations, kept independent of the library's
// Gauss-code/Bareiss route.

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "knotint/diagram.hpp"
#include "knotint/polynomial.hpp"

namespace oracle {

using knotint::LaurentPoly;

// X[i, j, k, l]: i incoming under, k outgoing under, labels counter-clockwise.
using PdCrossing = std::array<int, 4>;
using PdCode = std::vector<PdCrossing>;

inline int pd_edges(const PdCode& pd) { return static_cast<int>(2 * pd.size()); }

inline bool pd_succ(int a, int b, int n2) { return b == a % n2 + 1; }

// Over strand runs l -> j for a positive crossing.
inline int pd_sign(const PdCrossing& x, int n2) { return pd_succ(x[3], x[1], n2) ? 1 : -1; }

// Standard table diagrams.
inline const std::map<std::string, PdCode>& pd_table() {
  static const std::map<std::string, PdCode> t = {
      {"3_1", {{1, 5, 2, 4}, {3, 1, 4, 6}, {5, 3, 6, 2}}},
      {"4_1", {{4, 2, 5, 1}, {8, 6, 1, 5}, {6, 3, 7, 4}, {2, 7, 3, 8}}},
      {"5_1", {{2, 8, 3, 7}, {4, 10, 5, 9}, {6, 2, 7, 1}, {8, 4, 9, 3}, {10, 6, 1, 5}}},
      {"5_2", {{1, 5, 2, 4}, {3, 9, 4, 8}, {5, 1, 6, 10}, {7, 3, 8, 2}, {9, 7, 10, 6}}},
      {"6_1", {{1, 7, 2, 6}, {3, 10, 4, 11}, {5, 3, 6, 2}, {7, 1, 8, 12}, {9, 4, 10, 5}, {11, 9, 12, 8}}},
      {"6_2", {{1, 8, 2, 9}, {3, 11, 4, 10}, {5, 1, 6, 12}, {7, 2, 8, 3}, {9, 7, 10, 6}, {11, 5, 12, 4}}},
      {"6_3", {{4, 2, 5, 1}, {8, 4, 9, 3}, {12, 9, 1, 10}, {10, 5, 11, 6}, {6, 11, 7, 12}, {2, 8, 3, 7}}},
  };
  return t;
}

// Splices the two diagrams along the edges closing each one (label 2n).
inline PdCode pd_connected_sum(const PdCode& a, const PdCode& b) {
  const int na = pd_edges(a), nb = pd_edges(b), total = na + nb;
  PdCode out = a;
  PdCode tail = b;
  for (auto& x : tail) {
    for (auto& v : x) v += na;
  }
  // In a, edge na now runs into b's first crossing; b's last edge returns to a.
  for (auto& x : out) {
    const bool has_first = std::find(x.begin(), x.end(), 1) != x.end();
    if (!has_first) continue;
    for (auto& v : x) {
      if (v == na) v = total;
    }
  }
  for (auto& x : tail) {
    const bool has_first = std::find(x.begin(), x.end(), na + 1) != x.end();
    if (!has_first) continue;
    for (auto& v : x) {
      if (v == total) v = na;
    }
  }
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

inline LaurentPoly t_pow(int e) { return LaurentPoly::from_coefficients({1}, e); }

// Wirtinger presentation, abelianized Fox derivatives, Leibniz determinant.
inline LaurentPoly wirtinger_alexander(const PdCode& pd) {
  const int n = static_cast<int>(pd.size());
  if (n == 0) return LaurentPoly::constant(1);
  const int n2 = pd_edges(pd);
  std::vector<int> parent(n2 + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& x : pd) parent[find(x[1])] = find(x[3]);
  std::map<int, int> arc_of_root;
  auto arc = [&](int edge) {
    const int r = find(edge);
    return arc_of_root.emplace(r, static_cast<int>(arc_of_root.size())).first->second;
  };
  std::vector<std::vector<LaurentPoly>> m(n, std::vector<LaurentPoly>(n));
  for (int c = 0; c < n; ++c) {
    const auto& x = pd[c];
    const int o = arc(x[1]), in = arc(x[0]), out = arc(x[2]);
    std::vector<std::pair<int, int>> word;
    if (pd_sign(x, n2) > 0) {
      word = {{o, 1}, {in, 1}, {o, -1}, {out, -1}};
    } else {
      word = {{o, -1}, {in, 1}, {o, 1}, {out, -1}};
    }
    int prefix = 0;
    for (const auto& [g, e] : word) {
      if (e > 0) {
        m[c][g] = m[c][g] + t_pow(prefix);
      } else {
        m[c][g] = m[c][g] - t_pow(prefix - 1);
      }
      prefix += e;
    }
  }
  if (static_cast<int>(arc_of_root.size()) != n) throw std::logic_error("arc count mismatch");
  const int k = n - 1;
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  LaurentPoly det;
  do {
    int inversions = 0;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) inversions += perm[i] > perm[j];
    }
    LaurentPoly term = LaurentPoly::constant(inversions % 2 ? -1 : 1);
    for (int i = 0; i < k && !term.is_zero(); ++i) term = term * m[i][perm[i]];
    det = det + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (k == 0) det = LaurentPoly::constant(1);
  return det.normalized();
}

// Gauss code of a PD diagram, ordered by the incoming edge label of each passage.
inline knotint::KnotDiagram pd_to_gauss(const PdCode& pd) {
  const int n2 = pd_edges(pd);
  std::vector<std::pair<int, knotint::GaussEntry>> passages;
  for (int c = 0; c < static_cast<int>(pd.size()); ++c) {
    const auto& x = pd[c];
    const int sign = pd_sign(x, n2);
    const int over_in = sign > 0 ? x[3] : x[1];
    passages.push_back({x[0], {c, false, sign}});
    passages.push_back({over_in, {c, true, sign}});
  }
  std::sort(passages.begin(), passages.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  knotint::KnotDiagram d;
  for (const auto& p : passages) d.code.push_back(p.second);
  return d;
}

// Concatenation of two Gauss codes is a diagram of the connected sum.
inline knotint::KnotDiagram gauss_connected_sum(const knotint::KnotDiagram& a, const knotint::KnotDiagram& b) {
  knotint::KnotDiagram d = a;
  const int offset = static_cast<int>(a.crossing_count()) + 1000;
  for (auto e : b.code) {
    e.crossing += offset;
    d.code.push_back(e);
  }
  return d;
}

}  // namespace oracle
