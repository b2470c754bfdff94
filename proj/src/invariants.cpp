#include "knotint/invariants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "knotint/errors.hpp"
#include "knotint/random.hpp"

namespace knotint {

namespace {

// Fixed evaluation points of the modular fingerprint.
constexpr std::uint64_t kT1 = 0x1d2c3b4a59687ULL;
constexpr std::uint64_t kT2 = 0x0f1e2d3c4b5a6ULL;

std::uint64_t combine_key(std::uint64_t sq1, std::uint64_t sq2) { return splitmix64(sq1) ^ sq2; }

std::uint64_t other_key_of(const LaurentPoly& p) {
  const auto sq = [&](std::uint64_t t) { return modp::mul(p.evaluate_mod(t), p.evaluate_mod(modp::inverse(t))); };
  return combine_key(sq(kT1), sq(kT2));
}

std::vector<CatalogEntry> build_catalog() {
  using P = LaurentPoly;
  std::vector<CatalogEntry> c = {
      {"0_1", 0, P::constant(1)},
      {"3_1", 3, P::from_coefficients({1, -1, 1}, -1)},
      {"4_1", 4, P::from_coefficients({1, -3, 1}, -1)},
      {"5_1", 5, P::from_coefficients({1, -1, 1, -1, 1}, -2)},
      {"5_2", 5, P::from_coefficients({2, -3, 2}, -1)},
      {"6_1", 6, P::from_coefficients({2, -5, 2}, -1)},
      {"6_2", 6, P::from_coefficients({1, -3, 3, -3, 1}, -2)},
      {"6_3", 6, P::from_coefficients({1, -3, 5, -3, 1}, -2)},
      {"3_1#3_1", 6, P::from_coefficients({1, -2, 3, -2, 1}, -2)},
      {"3_1#4_1", 7, P::from_coefficients({1, -4, 5, -4, 1}, -2)},
  };
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].poly != c[i].poly.normalized()) throw std::logic_error("catalog entry not normalized: " + c[i].name);
    for (std::size_t j = 0; j < i; ++j) {
      if (c[i].poly == c[j].poly) throw std::logic_error("catalog collision: " + c[i].name + " / " + c[j].name);
    }
  }
  return c;
}

struct CatalogFingerprint {
  std::uint64_t at_t1;
  std::uint64_t at_t2;
};

const std::vector<CatalogFingerprint>& catalog_fingerprints() {
  static const std::vector<CatalogFingerprint> fp = [] {
    std::vector<CatalogFingerprint> out;
    for (const auto& e : catalog()) out.push_back({e.poly.evaluate_mod(kT1), e.poly.evaluate_mod(kT2)});
    return out;
  }();
  return fp;
}

// One relation per crossing over the arcs of the diagram.
struct Relation {
  int over;
  int in;
  int out;
  int sign;
};

std::vector<Relation> crossing_relations(const KnotDiagram& d) {
  std::unordered_map<int, int> dense;
  for (const auto& e : d.code) dense.emplace(e.crossing, static_cast<int>(dense.size()));
  const int k = static_cast<int>(dense.size());
  std::vector<Relation> rel(k, Relation{-1, -1, -1, 0});
  int unders = 0;
  for (const auto& e : d.code) {
    auto& r = rel[dense.at(e.crossing)];
    r.sign = e.sign;
    if (e.over) {
      r.over = unders % k;
    } else {
      r.in = unders % k;
      r.out = (unders + 1) % k;
      ++unders;
    }
  }
  return rel;
}

// Entry c0 + c1 t of the relation matrix.
struct LinearEntry {
  long long c0 = 0;
  long long c1 = 0;
};

std::vector<std::vector<LinearEntry>> reduced_matrix(const KnotDiagram& d) {
  const auto rel = crossing_relations(d);
  const std::size_t k = rel.size();
  std::vector<std::vector<LinearEntry>> m(k, std::vector<LinearEntry>(k));
  for (std::size_t row = 0; row < k; ++row) {
    const auto& r = rel[row];
    m[row][r.over].c0 += 1;
    m[row][r.over].c1 -= 1;
    if (r.sign > 0) {
      m[row][r.in].c1 += 1;
      m[row][r.out].c0 -= 1;
    } else {
      m[row][r.in].c0 -= 1;
      m[row][r.out].c1 += 1;
    }
  }
  if (k == 0) return m;
  m.pop_back();
  for (auto& row : m) row.pop_back();
  return m;
}

// Reduced relation matrix by rows, each row sorted by column.
using SparseMatrix = std::vector<std::vector<std::pair<std::size_t, LinearEntry>>>;

SparseMatrix sparse_reduced_matrix(const KnotDiagram& d) {
  const auto rel = crossing_relations(d);
  const std::size_t k = rel.size();
  if (k == 0) return {};
  SparseMatrix m(k - 1);
  for (std::size_t row = 0; row + 1 < k; ++row) {
    const auto& r = rel[row];
    auto& out = m[row];
    const auto add = [&](std::size_t col, long long c0, long long c1) {
      if (col + 1 == k) return;
      for (auto& [c, e] : out) {
        if (c == col) {
          e.c0 += c0;
          e.c1 += c1;
          return;
        }
      }
      out.push_back({col, LinearEntry{c0, c1}});
    };
    add(static_cast<std::size_t>(r.over), 1, -1);
    if (r.sign > 0) {
      add(static_cast<std::size_t>(r.in), 0, 1);
      add(static_cast<std::size_t>(r.out), -1, 0);
    } else {
      add(static_cast<std::size_t>(r.in), -1, 0);
      add(static_cast<std::size_t>(r.out), 0, 1);
    }
    std::ranges::sort(out, {}, &std::pair<std::size_t, LinearEntry>::first);
  }
  return m;
}

// Checked 64-bit integer; overflow escalates the computation to BigInt.
struct Overflow {};
struct Checked {
  long long v = 0;
  Checked() = default;
  Checked(long long x) : v(x) {}
  friend Checked operator+(Checked a, Checked b) {
    long long r;
    if (__builtin_add_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend Checked operator-(Checked a, Checked b) {
    long long r;
    if (__builtin_sub_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend Checked operator*(Checked a, Checked b) {
    long long r;
    if (__builtin_mul_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend Checked operator/(Checked a, Checked b) { return a.v / b.v; }
  friend Checked operator%(Checked a, Checked b) { return a.v % b.v; }
  friend bool operator==(Checked a, Checked b) { return a.v == b.v; }
  bool is_zero() const { return v == 0; }
};

template <class Int>
bool is_zero(const Int& x) {
  if constexpr (std::is_same_v<Int, Checked>) {
    return x.v == 0;
  } else {
    return x == 0;
  }
}

template <class Int>
using Poly = std::vector<Int>;  // dense, lowest degree first, trimmed

template <class Int>
void trim(Poly<Int>& p) {
  while (!p.empty() && is_zero(p.back())) p.pop_back();
}

template <class Int>
Poly<Int> mul(const Poly<Int>& a, const Poly<Int>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<Int> r(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  }
  trim(r);
  return r;
}

template <class Int>
Poly<Int> sub(const Poly<Int>& a, const Poly<Int>& b) {
  Poly<Int> r(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] - b[i];
  trim(r);
  return r;
}

template <class Int>
Poly<Int> div_exact(Poly<Int> a, const Poly<Int>& b) {
  if (a.empty()) return {};
  if (a.size() < b.size()) throw std::logic_error("inexact polynomial division");
  Poly<Int> q(a.size() - b.size() + 1, Int(0));
  const Int lead = b.back();
  for (std::size_t i = q.size(); i-- > 0;) {
    const Int top = a[i + b.size() - 1];
    if (is_zero(top)) continue;
    if (!is_zero(top % lead)) throw std::logic_error("inexact polynomial division");
    const Int c = top / lead;
    q[i] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[i + j] = a[i + j] - c * b[j];
  }
  trim(q);
  return q;
}

// Fraction-free Gaussian elimination over Z[t].
template <class Int>
Poly<Int> bareiss_det(const std::vector<std::vector<LinearEntry>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return {Int(1)};
  std::vector<std::vector<Poly<Int>>> a(n, std::vector<Poly<Int>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Poly<Int> p{Int(m[i][j].c0), Int(m[i][j].c1)};
      trim(p);
      a[i][j] = std::move(p);
    }
  }
  bool negate = false;
  Poly<Int> prev{Int(1)};
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].empty()) {
      std::size_t r = k + 1;
      while (r < n && a[r][k].empty()) ++r;
      if (r == n) return {};
      std::swap(a[k], a[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = div_exact(sub(mul(a[k][k], a[i][j]), mul(a[i][k], a[k][j])), prev);
      }
      a[i][k].clear();
    }
    prev = a[k][k];
  }
  Poly<Int> det = a[n - 1][n - 1];
  if (negate) {
    for (auto& c : det) c = Int(0) - c;
  }
  return det;
}

LaurentPoly to_laurent(const Poly<BigInt>& p) {
  std::map<int, BigInt> t;
  for (std::size_t i = 0; i < p.size(); ++i) t[static_cast<int>(i)] = p[i];
  return LaurentPoly(std::move(t));
}

// Is `value` equal to +-t^j * `target` for some |j| <= span?
bool matches_up_to_unit(std::uint64_t value, std::uint64_t target, std::uint64_t t, int span,
                        int& exponent, bool& negated) {
  if (target == 0) return false;
  const std::uint64_t ratio = modp::mul(value, modp::inverse(target));
  std::uint64_t p = modp::pow(modp::inverse(t), static_cast<std::uint64_t>(span));
  for (int j = -span; j <= span; ++j) {
    if (ratio == p || ratio == modp::neg(p)) {
      exponent = j;
      negated = ratio != p;
      return true;
    }
    p = modp::mul(p, t);
  }
  return false;
}

bool fingerprint_matches(std::uint64_t v1, std::uint64_t v2, int span, const CatalogFingerprint& fp) {
  int j = 0;
  bool neg = false;
  if (!matches_up_to_unit(v1, fp.at_t1, kT1, span, j, neg)) return false;
  std::uint64_t unit = j >= 0 ? modp::pow(kT2, static_cast<std::uint64_t>(j))
                              : modp::pow(modp::inverse(kT2), static_cast<std::uint64_t>(-j));
  if (neg) unit = modp::neg(unit);
  return v2 == modp::mul(unit, fp.at_t2);
}

}  // namespace

std::span<const CatalogEntry> catalog() {
  static const std::vector<CatalogEntry> c = build_catalog();
  return c;
}

KnotLabel KnotLabel::from_catalog(std::size_t index) {
  if (index >= catalog().size()) throw IndexOutOfRange("catalog index " + std::to_string(index));
  KnotLabel l;
  l.index_ = static_cast<int>(index);
  return l;
}

KnotLabel KnotLabel::other(LaurentPoly poly) {
  KnotLabel l;
  l.index_ = -1;
  l.key_ = other_key_of(poly);
  l.other_ = std::move(poly);
  l.has_poly_ = true;
  return l;
}

KnotLabel KnotLabel::other_key(std::uint64_t key) {
  KnotLabel l;
  l.index_ = -1;
  l.key_ = key;
  return l;
}

std::string KnotLabel::name() const {
  if (index_ >= 0) return catalog()[index_].name;
  if (has_poly_) return "OTHER(" + other_.to_string() + ")";
  char buf[32];
  std::snprintf(buf, sizeof buf, "OTHER[%016llx]", static_cast<unsigned long long>(key_));
  return buf;
}

int KnotLabel::crossing_number() const noexcept {
  return index_ >= 0 ? catalog()[index_].crossing_number : std::numeric_limits<int>::max();
}

const LaurentPoly& KnotLabel::poly() const {
  if (index_ >= 0) return catalog()[index_].poly;
  if (!has_poly_) throw UnresolvedType("polynomial of " + name() + " was not computed");
  return other_;
}

bool operator<(const KnotLabel& a, const KnotLabel& b) {
  if (a.is_other() != b.is_other()) return b.is_other();
  if (a.is_other()) return a.key_ < b.key_;
  if (a.crossing_number() != b.crossing_number()) return a.crossing_number() < b.crossing_number();
  return a.name() < b.name();
}

std::optional<KnotLabel> label_from_name(const std::string& name) {
  const auto c = catalog();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].name == name) return KnotLabel::from_catalog(i);
  }
  return std::nullopt;
}

LaurentPoly alexander(const KnotDiagram& diagram) {
  const auto m = reduced_matrix(simplify(diagram));
  LaurentPoly raw;
  try {
    const auto det = bareiss_det<Checked>(m);
    std::map<int, BigInt> t;
    for (std::size_t i = 0; i < det.size(); ++i) t[static_cast<int>(i)] = det[i].v;
    raw = LaurentPoly(std::move(t));
  } catch (const Overflow&) {
    raw = to_laurent(bareiss_det<BigInt>(m));
  }
  return raw.normalized();
}

namespace {

// Sparse Gaussian elimination mod p. Columns are eliminated in order, so a
// remaining row has a nonzero in column k exactly when its first entry is k;
// among those the shortest row is the pivot, which keeps fill-in low. Rows
// are updated as r_i <- pivot * r_i - a_ik * r_p, so a single modular inverse
// of the accumulated scaling is taken at the end.
std::uint64_t mod_determinant(const SparseMatrix& m, std::uint64_t t) {
  using Row = std::vector<std::pair<std::size_t, std::uint64_t>>;
  const std::size_t n = m.size();
  std::vector<Row> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [j, e] : m[i]) {
      const std::uint64_t v = modp::add(modp::from_signed(e.c0), modp::mul(modp::from_signed(e.c1), t));
      if (v != 0) rows[i].emplace_back(j, v);
    }
  }
  std::vector<std::size_t> remaining(n);
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<std::size_t> pivot_row(n);
  std::uint64_t det = 1;
  std::uint64_t scale = 1;
  Row merged;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = remaining.size();
    for (std::size_t r = 0; r < remaining.size(); ++r) {
      const Row& row = rows[remaining[r]];
      if (!row.empty() && row.front().first == k && (best == remaining.size() || row.size() < rows[remaining[best]].size())) {
        best = r;
      }
    }
    if (best == remaining.size()) return 0;
    const std::size_t p = remaining[best];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    pivot_row[k] = p;
    const Row& prow = rows[p];
    const std::uint64_t pivot = prow.front().second;
    det = modp::mul(det, pivot);
    for (std::size_t i : remaining) {
      Row& row = rows[i];
      if (row.empty() || row.front().first != k) continue;
      const std::uint64_t f = row.front().second;
      scale = modp::mul(scale, pivot);
      merged.clear();
      std::size_t x = 1, y = 1;
      while (x < row.size() || y < prow.size()) {
        if (y == prow.size() || (x < row.size() && row[x].first < prow[y].first)) {
          merged.emplace_back(row[x].first, modp::mul(pivot, row[x].second));
          ++x;
        } else if (x == row.size() || prow[y].first < row[x].first) {
          merged.emplace_back(prow[y].first, modp::neg(modp::mul(f, prow[y].second)));
          ++y;
        } else {
          const std::uint64_t v =
              modp::sub(modp::mul(pivot, row[x].second), modp::mul(f, prow[y].second));
          if (v != 0) merged.emplace_back(row[x].first, v);
          ++x;
          ++y;
        }
      }
      row.swap(merged);
    }
  }
  // Sign of the row permutation k -> pivot_row[k].
  std::vector<char> seen(n, 0);
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::size_t len = 0;
    for (std::size_t c = start; !seen[c]; c = pivot_row[c]) {
      seen[c] = 1;
      ++len;
    }
    if (len % 2 == 0) det = modp::neg(det);
  }
  return scale == 1 ? det : modp::mul(det, modp::inverse(scale));
}

std::pair<std::uint64_t, std::uint64_t> alexander_mod_pair(const KnotDiagram& d) {
  const auto m = sparse_reduced_matrix(d);
  return {mod_determinant(m, kT1), mod_determinant(m, kT2)};
}

}  // namespace

std::uint64_t alexander_mod(const KnotDiagram& diagram, std::uint64_t t) {
  return mod_determinant(sparse_reduced_matrix(diagram), t);
}

KnotLabel classify(const LaurentPoly& poly) {
  const auto normal = poly.normalized();
  const auto c = catalog();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].poly == normal) return KnotLabel::from_catalog(i);
  }
  return KnotLabel::other(normal);
}

KnotLabel classify(const KnotDiagram& diagram) {
  const KnotDiagram d = simplify(diagram);
  if (d.code.empty()) return KnotLabel::unknot();
  const auto [v1, v2] = alexander_mod_pair(d);
  const int span = static_cast<int>(d.crossing_count()) + 4;
  const auto& fps = catalog_fingerprints();
  for (std::size_t i = 0; i < fps.size(); ++i) {
    if (fingerprint_matches(v1, v2, span, fps[i])) return KnotLabel::from_catalog(i);
  }
  return classify(alexander(d));
}

KnotLabel classify_modular(const KnotDiagram& diagram) {
  const KnotDiagram d = simplify(diagram);
  if (d.code.empty()) return KnotLabel::unknot();
  const auto m = sparse_reduced_matrix(d);
  const std::uint64_t v1 = mod_determinant(m, kT1);
  const std::uint64_t v2 = mod_determinant(m, kT2);
  const int span = static_cast<int>(d.crossing_count()) + 4;
  const auto& fps = catalog_fingerprints();
  for (std::size_t i = 0; i < fps.size(); ++i) {
    if (fingerprint_matches(v1, v2, span, fps[i])) return KnotLabel::from_catalog(i);
  }
  const std::uint64_t w1 = mod_determinant(m, modp::inverse(kT1));
  const std::uint64_t w2 = mod_determinant(m, modp::inverse(kT2));
  return KnotLabel::other_key(combine_key(modp::mul(v1, w1), modp::mul(v2, w2)));
}

bool has_type(const KnotDiagram& diagram, const KnotLabel& label) {
  const KnotDiagram d = simplify(diagram);
  if (label.is_other()) return classify_modular(d) == label;
  if (d.code.empty()) return label.is_unknot();
  const int span = static_cast<int>(d.crossing_count()) + 4;
  const auto [v1, v2] = alexander_mod_pair(d);
  return fingerprint_matches(v1, v2, span,
                             catalog_fingerprints()[static_cast<std::size_t>(label.catalog_index())]);
}

KnotDiagram generic_projection(const PLCurve& curve, std::uint64_t seed) {
  for (std::uint64_t attempt = 0; attempt < 256; ++attempt) {
    Rng rng(derive_seed(seed, StreamTag::kClassify, attempt));
    try {
      return project(curve, uniform_unit_vector(rng));
    } catch (const DegenerateProjection&) {
    }
  }
  throw DegenerateProjection("no generic direction found in 256 attempts");
}

KnotLabel classify_curve(const PLCurve& curve, std::uint64_t seed) {
  return classify_modular(generic_projection(curve, seed));
}

double edge_pair_writhe(const Point3& p1, const Point3& p2, const Point3& p3, const Point3& p4) {
  const Vec3 r13 = p3 - p1, r14 = p4 - p1, r23 = p3 - p2, r24 = p4 - p2;
  const Vec3 c[4] = {cross(r13, r14), cross(r14, r24), cross(r24, r23), cross(r23, r13)};
  Vec3 n[4];
  for (int i = 0; i < 4; ++i) {
    const double len = norm(c[i]);
    if (len < 1e-300) return 0.0;
    n[i] = c[i] * (1.0 / len);
  }
  double omega = 0.0;
  for (int i = 0; i < 4; ++i) omega += std::asin(std::clamp(dot(n[i], n[(i + 1) % 4]), -1.0, 1.0));
  const double orient = dot(cross(p4 - p3, p2 - p1), r13);
  if (orient == 0.0) return 0.0;
  // The solid angle over 2 pi counts the pair's expected signed crossings.
  return (orient > 0 ? omega : -omega) / (2.0 * std::numbers::pi);
}

namespace {

template <class F>
double pair_sum(const PLCurve& curve, F&& f) {
  const std::size_t n = curve.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      total += f(edge_pair_writhe(curve[i], curve.vertex(i + 1), curve[j], curve.vertex(j + 1)));
    }
  }
  return total;
}

}  // namespace

double writhe(const PLCurve& curve) {
  return pair_sum(curve, [](double w) { return w; });
}

double acn(const PLCurve& curve) {
  return pair_sum(curve, [](double w) { return std::abs(w); });
}

}  // namespace knotint
