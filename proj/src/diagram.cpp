#include "knotint/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "knotint/errors.hpp"
#include "knotint/random.hpp"

namespace knotint {

bool KnotDiagram::valid() const {
  if (code.size() % 2 != 0) return false;
  struct Seen {
    int overs = 0;
    int unders = 0;
    int sign = 0;
  };
  std::unordered_map<int, Seen> seen;
  for (const auto& e : code) {
    auto& s = seen[e.crossing];
    (e.over ? s.overs : s.unders) += 1;
    if (s.sign != 0 && s.sign != e.sign) return false;
    if (e.sign != 1 && e.sign != -1) return false;
    s.sign = e.sign;
  }
  return std::all_of(seen.begin(), seen.end(),
                     [](const auto& kv) { return kv.second.overs == 1 && kv.second.unders == 1; });
}

int KnotDiagram::writhe() const noexcept {
  int w = 0;
  for (const auto& e : code) {
    if (e.over) w += e.sign;
  }
  return w;
}

Projector::Projector(const Vec3& direction) : d_(normalized(direction)) {
  const auto basis = orthonormal_basis(d_);
  e1_ = basis[0];
  e2_ = basis[1];
}

PairTest test_edge_pair(const Projected& a0, const Projected& a1, const Projected& b0,
                        const Projected& b1, const ProjectionSettings& settings,
                        EdgePairCrossing& out) noexcept {
  const double rx = a1.u - a0.u, ry = a1.v - a0.v;
  const double qx = b1.u - b0.u, qy = b1.v - b0.v;
  const double wx = b0.u - a0.u, wy = b0.v - a0.v;
  const double denom = rx * qy - ry * qx;
  const double lr = std::hypot(rx, ry);
  const double lq = std::hypot(qx, qy);
  if (lr < 1e-14 || lq < 1e-14) return PairTest::kDegenerate;
  if (denom == 0.0) {
    return std::abs(wx * ry - wy * rx) < 1e-14 * lr ? PairTest::kDegenerate : PairTest::kNone;
  }
  const double s = (wx * qy - wy * qx) / denom;
  const double t = (wx * ry - wy * rx) / denom;
  const double m = settings.min_param;
  if (s < -m || s > 1.0 + m || t < -m || t > 1.0 + m) return PairTest::kNone;
  if (s < m || s > 1.0 - m || t < m || t > 1.0 - m) return PairTest::kDegenerate;
  if (std::abs(denom) / (lr * lq) < settings.min_sin_angle) return PairTest::kDegenerate;
  const double da = a0.depth + s * (a1.depth - a0.depth);
  const double db = b0.depth + t * (b1.depth - b0.depth);
  const double gap = da - db;
  if (std::abs(gap) < settings.min_depth) return PairTest::kDegenerate;
  out.s = s;
  out.t = t;
  out.first_over = gap > 0.0;
  // (over x under) . d reduces to the planar cross product in the (e1, e2) frame.
  const double handed = out.first_over ? denom : -denom;
  out.sign = handed > 0.0 ? 1 : -1;
  return PairTest::kCross;
}

std::vector<Crossing> find_crossings(std::span<const Projected> pts, bool closed,
                                     const ProjectionSettings& settings) {
  const std::size_t n = pts.size();
  const std::size_t edges = closed ? n : (n == 0 ? 0 : n - 1);
  struct Box {
    double umin, umax, vmin, vmax;
  };
  std::vector<Box> box(edges);
  for (std::size_t e = 0; e < edges; ++e) {
    const auto& p = pts[e];
    const auto& q = pts[(e + 1) % n];
    box[e] = {std::min(p.u, q.u), std::max(p.u, q.u), std::min(p.v, q.v), std::max(p.v, q.v)};
  }
  std::vector<std::size_t> order(edges);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return box[a].umin < box[b].umin; });

  const double pad = 1e-9;
  std::vector<Crossing> out;
  for (std::size_t oi = 0; oi < edges; ++oi) {
    const std::size_t i = order[oi];
    for (std::size_t oj = oi + 1; oj < edges && box[order[oj]].umin <= box[i].umax + pad; ++oj) {
      std::size_t a = i, b = order[oj];
      if (a > b) std::swap(a, b);
      if (b == a + 1 || (closed && a == 0 && b == edges - 1)) continue;
      if (box[a].vmax + pad < box[b].vmin || box[b].vmax + pad < box[a].vmin) continue;
      EdgePairCrossing c;
      const auto r = test_edge_pair(pts[a], pts[(a + 1) % n], pts[b], pts[(b + 1) % n], settings, c);
      if (r == PairTest::kDegenerate) {
        throw DegenerateProjection("degenerate projection at edges " + std::to_string(a) + "," +
                                   std::to_string(b));
      }
      if (r == PairTest::kCross) {
        out.push_back(c.first_over ? Crossing{a, b, c.sign, c.s, c.t} : Crossing{b, a, c.sign, c.t, c.s});
      }
    }
  }
  return out;
}

KnotDiagram diagram_from_placed(std::span<const PlacedCrossing> crossings, bool closed) {
  struct Event {
    double pos;
    int id;
    bool over;
  };
  std::vector<Event> events;
  events.reserve(crossings.size() * 2);
  for (std::size_t c = 0; c < crossings.size(); ++c) {
    events.push_back({crossings[c].over_pos, static_cast<int>(c), true});
    events.push_back({crossings[c].under_pos, static_cast<int>(c), false});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return a.pos < b.pos || (a.pos == b.pos && a.id < b.id);
  });
  KnotDiagram d;
  d.closed = closed;
  d.code.reserve(events.size());
  for (const auto& e : events) d.code.push_back({e.id, e.over, crossings[e.id].sign});
  return d;
}

namespace {

KnotDiagram project_points(std::span<const Point3> vertices, bool closed, const Vec3& direction,
                           const ProjectionSettings& settings) {
  const Projector proj(direction);
  std::vector<Projected> pts;
  pts.reserve(vertices.size());
  for (const auto& p : vertices) pts.push_back(proj(p));
  const auto crossings = find_crossings(pts, closed, settings);
  std::vector<PlacedCrossing> placed;
  placed.reserve(crossings.size());
  for (const auto& c : crossings) {
    placed.push_back({static_cast<double>(c.over_edge) + c.over_param,
                      static_cast<double>(c.under_edge) + c.under_param, c.sign});
  }
  return diagram_from_placed(placed, closed);
}

}  // namespace

KnotDiagram project(const PLCurve& curve, const Vec3& direction, const ProjectionSettings& settings) {
  return project_points(curve.vertices(), curve.closed(), direction, settings);
}

KnotDiagram project(const OpenChain& chain, const Vec3& direction, const ProjectionSettings& settings) {
  return project_points(chain.vertices, false, direction, settings);
}

KnotDiagram simplify(const KnotDiagram& diagram) {
  const auto& code = diagram.code;
  const int len = static_cast<int>(code.size());
  KnotDiagram out;
  out.closed = diagram.closed;
  if (len == 0) return out;

  std::vector<int> next(len), prev(len), other(len, -1);
  std::vector<char> alive(len, 1);
  for (int i = 0; i < len; ++i) {
    next[i] = i + 1 < len ? i + 1 : (diagram.closed ? 0 : -1);
    prev[i] = i > 0 ? i - 1 : (diagram.closed ? len - 1 : -1);
  }
  {
    std::unordered_map<int, int> first;
    for (int i = 0; i < len; ++i) {
      auto [it, inserted] = first.emplace(code[i].crossing, i);
      if (!inserted) {
        other[i] = it->second;
        other[it->second] = i;
      }
    }
  }

  auto unlink = [&](int i) {
    alive[i] = 0;
    if (prev[i] >= 0) next[prev[i]] = next[i];
    if (next[i] >= 0) prev[next[i]] = prev[i];
  };
  std::vector<int> work(len);
  std::iota(work.rbegin(), work.rend(), 0);
  auto requeue_around = [&](int r) {
    int p = prev[r];
    for (int guard = 0; p >= 0 && !alive[p] && guard < len; ++guard) p = prev[p];
    if (p >= 0 && alive[p]) work.push_back(p);
    int n = next[r];
    for (int guard = 0; n >= 0 && !alive[n] && guard < len; ++guard) n = next[n];
    if (n >= 0 && alive[n]) work.push_back(n);
  };

  while (!work.empty()) {
    const int i = work.back();
    work.pop_back();
    if (!alive[i]) continue;
    const int j = next[i];
    if (j < 0 || j == i) continue;
    if (code[j].crossing == code[i].crossing) {
      unlink(i);
      unlink(j);
      requeue_around(i);
      requeue_around(j);
      continue;
    }
    if (code[i].over != code[j].over) continue;
    const int oi = other[i];
    const int oj = other[j];
    if (oi < 0 || oj < 0) continue;
    const bool adjacent = next[oi] == oj || next[oj] == oi;
    if (!adjacent || code[oi].over == code[i].over || code[i].sign == code[j].sign) continue;
    for (int r : {i, j, oi, oj}) unlink(r);
    for (int r : {i, j, oi, oj}) requeue_around(r);
  }

  std::unordered_map<int, int> renumber;
  for (int i = 0; i < len; ++i) {
    if (!alive[i]) continue;
    const auto [it, inserted] = renumber.emplace(code[i].crossing, static_cast<int>(renumber.size()));
    out.code.push_back({it->second, code[i].over, code[i].sign});
  }
  return out;
}

Vec3 random_direction(std::uint64_t seed) {
  Rng rng(derive_seed(seed, StreamTag::kDirection, 0));
  return uniform_unit_vector(rng);
}

nlohmann::json gauss_code_json(const KnotDiagram& diagram) {
  auto arr = nlohmann::json::array();
  for (const auto& e : diagram.code) arr.push_back({e.crossing, e.over ? "O" : "U", e.sign});
  return arr;
}

KnotDiagram diagram_from_json(const nlohmann::json& j, bool closed) {
  KnotDiagram d;
  d.closed = closed;
  for (const auto& e : j) {
    d.code.push_back({e.at(0).get<int>(), e.at(1).get<std::string>() == "O", e.at(2).get<int>()});
  }
  return d;
}

}  // namespace knotint
