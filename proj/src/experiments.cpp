#include "knotint/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "knotint/errors.hpp"
#include "knotint/parallel.hpp"
#include "knotint/random.hpp"

namespace knotint {

std::vector<std::size_t> crankshaft_arc(std::size_t n, std::size_t i, std::size_t j) {
  if (i >= n || j >= n) throw IndexOutOfRange("crankshaft pivot out of range");
  if (i == j) throw IndexOutOfRange("crankshaft pivots must differ");
  const std::size_t forward = (j + n - i - 1) % n;
  const std::size_t backward = n - 2 - forward;
  if (std::min(forward, backward) == 0) throw IndexOutOfRange("crankshaft pivots are adjacent");
  const std::size_t from = forward <= backward ? i : j;
  const std::size_t len = std::min(forward, backward);
  std::vector<std::size_t> arc(len);
  for (std::size_t k = 0; k < len; ++k) arc[k] = (from + 1 + k) % n;
  return arc;
}

namespace {

Mat3 crankshaft_rotation(const Point3& a, const Point3& b, double angle) {
  const double len = distance(a, b);
  if (!(len > 1e-12)) throw DegenerateAxis("crankshaft pivots coincide");
  return axis_angle((b - a) * (1.0 / len), angle);
}

void rotate_arc(std::vector<Point3>& pts, std::span<const std::size_t> arc, std::size_t i, std::size_t j,
                double angle) {
  const Point3 origin = pts[i];
  const Mat3 r = crankshaft_rotation(origin, pts[j], angle);
  for (auto k : arc) pts[k] = origin + r * (pts[k] - origin);
}

double signed_volume(const Point3& p1, const Point3& q1, const Point3& p2, const Point3& q2) {
  return dot(cross(q1 - p1, p2 - p1), q2 - p1);
}

// Parameters of the closest points of the lines through two segments.
bool line_params(const Point3& p1, const Point3& q1, const Point3& p2, const Point3& q2, double& s, double& t) {
  const Vec3 d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
  const double a = dot(d1, d1), b = dot(d1, d2), c = dot(d1, r), e = dot(d2, d2), f = dot(d2, r);
  const double den = a * e - b * b;
  if (!(den > 1e-14 * a * e)) return false;
  s = (b * f - c * e) / den;
  t = (a * f - b * c) / den;
  return true;
}

}  // namespace

PLCurve crankshaft(const PLCurve& curve, std::size_t i, std::size_t j, double angle) {
  const auto arc = crankshaft_arc(curve.size(), i, j);
  std::vector<Point3> pts(curve.vertices().begin(), curve.vertices().end());
  rotate_arc(pts, arc, i, j, angle);
  return PLCurve(std::move(pts), curve.closed());
}

std::vector<PassageSite> detect_passages(const PLCurve& curve, std::size_t i, std::size_t j, double angle,
                                         std::size_t steps) {
  if (steps < 8) throw IndexOutOfRange("passage sweep needs at least 8 steps");
  const std::size_t n = curve.size();
  const auto arc = crankshaft_arc(n, i, j);
  std::vector<char> moving(n, 0);
  for (auto k : arc) moving[k] = 1;
  const Point3 origin = curve[i];
  const Vec3 axis = curve[j] - origin;
  crankshaft_rotation(origin, curve[j], 0.0);

  std::vector<std::size_t> moving_edges, static_edges;
  for (std::size_t e = 0; e < n; ++e) {
    (moving[e] || moving[(e + 1) % n] ? moving_edges : static_edges).push_back(e);
  }
  auto at = [&](std::size_t v, const Mat3& r) { return moving[v] ? origin + r * (curve[v] - origin) : curve[v]; };
  auto rotation = [&](double theta) { return axis_angle(normalized(axis), theta); };
  auto volume = [&](std::size_t a, std::size_t b, const Mat3& r) {
    return signed_volume(at(a, r), at((a + 1) % n, r), curve[b], curve[(b + 1) % n]);
  };

  double scale = 0.0;
  for (std::size_t e = 0; e < n; ++e) scale = std::max(scale, curve.edge_length(e));
  // Volumes this small are rounding noise, e.g. in a planar starting position.
  const double zero = 1e-12 * scale * scale * scale;

  std::vector<std::vector<double>> vol(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    const Mat3 r = rotation(angle * static_cast<double>(k) / static_cast<double>(steps));
    vol[k].reserve(moving_edges.size() * static_edges.size());
    for (auto a : moving_edges) {
      for (auto b : static_edges) vol[k].push_back(volume(a, b, r));
    }
  }

  std::vector<PassageSite> sites;
  for (std::size_t ai = 0; ai < moving_edges.size(); ++ai) {
    const std::size_t a = moving_edges[ai];
    for (std::size_t bi = 0; bi < static_edges.size(); ++bi) {
      const std::size_t b = static_edges[bi];
      if (a == b || (a + 1) % n == b || (b + 1) % n == a) continue;
      const std::size_t slot = ai * static_edges.size() + bi;
      auto sign_at = [&](std::size_t k) {
        const double v = vol[k][slot];
        return v > zero ? 1 : (v < -zero ? -1 : 0);
      };
      int last_sign = 0;
      std::size_t last_frame = 0;
      for (std::size_t k = 0; k <= steps; ++k) {
        const int sk = sign_at(k);
        if (sk == 0) continue;
        const bool change = last_sign != 0 && sk != last_sign;
        const std::size_t from = last_frame;
        last_sign = sk;
        last_frame = k;
        if (!change) continue;
        double lo = angle * static_cast<double>(from) / static_cast<double>(steps);
        double hi = angle * static_cast<double>(k) / static_cast<double>(steps);
        const bool lo_negative = sk > 0;
        while (std::abs(hi - lo) > 1e-6) {
          const double mid = 0.5 * (lo + hi);
          ((volume(a, b, rotation(mid)) < 0.0) == lo_negative ? lo : hi) = mid;
        }
        const double theta = 0.5 * (lo + hi);
        const Mat3 r = rotation(theta);
        const Point3 p1 = at(a, r), q1 = at((a + 1) % n, r);
        double s = 0.0, t = 0.0;
        if (!line_params(p1, q1, curve[b], curve[(b + 1) % n], s, t)) continue;
        if (s < 0.0 || s > 1.0 || t < 0.0 || t > 1.0) continue;
        const Point3 x1 = p1 + (q1 - p1) * s;
        const Point3 x2 = curve[b] + (curve[(b + 1) % n] - curve[b]) * t;
        if (distance(x1, x2) > 1e-5 * scale) continue;
        PassageSite site;
        site.moving_edge = a;
        site.static_edge = b;
        site.angle = theta;
        site.moving_vertex = s < 0.5 ? a : (a + 1) % n;
        site.static_vertex = t < 0.5 ? b : (b + 1) % n;
        sites.push_back(site);
      }
    }
  }
  std::ranges::sort(sites, [](const PassageSite& x, const PassageSite& y) {
    return std::tie(x.moving_edge, x.static_edge, x.angle) < std::tie(y.moving_edge, y.static_edge, y.angle);
  });
  return sites;
}

// ---- random polygons ----

namespace {

struct Move {
  std::size_t i, j;
  double angle;
};

Move random_move(Rng& rng, std::size_t n) {
  const std::size_t i = uniform_index(rng, n);
  std::size_t j;
  do {
    j = uniform_index(rng, n);
  } while (j == i || (j + 1) % n == i || (i + 1) % n == j);
  return {i, j, 2.0 * std::numbers::pi * uniform01(rng)};
}

void apply_move(std::vector<Point3>& pts, const Move& m) {
  rotate_arc(pts, crankshaft_arc(pts.size(), m.i, m.j), m.i, m.j, m.angle);
}

PLCurve sample_one(std::size_t n, const KnotLabel& target, std::uint64_t seed, const SamplerSettings& settings) {
  Rng rng(seed);
  const PLCurve start = regular_polygon(n);
  std::vector<Point3> pts(start.vertices().begin(), start.vertices().end());
  for (std::size_t k = 0; k < settings.burn_in_factor * n; ++k) apply_move(pts, random_move(rng, n));
  for (std::size_t attempt = 1;; ++attempt) {
    for (std::size_t k = 0; k < n; ++k) apply_move(pts, random_move(rng, n));
    PLCurve curve(pts);
    if (classify_curve(curve, derive_seed(seed, StreamTag::kClassify, attempt)) == target) return curve;
    if (attempt >= settings.budget_factor) {
      throw SamplingTimeout("no " + target.name() + " polygon of length " + std::to_string(n), attempt);
    }
  }
}

}  // namespace

std::vector<PLCurve> sample_curves(std::size_t n, const KnotLabel& target, std::size_t count, std::uint64_t seed,
                                   const SamplerSettings& settings) {
  if (n < 6) throw IndexOutOfRange("polygon sampling needs at least 6 edges");
  if (target.is_other()) throw UnresolvedType("sampling target must be a catalog type");
  std::vector<PLCurve> out(count);
  parallel_for(count, settings.workers, [&](std::size_t k) {
    out[k] = sample_one(n, target, derive_seed(seed, StreamTag::kSampler, k), settings);
  });
  return out;
}

PolygonSample analyse_sample(const PLCurve& curve, std::uint64_t seed, const IntensitySettings& settings) {
  PolygonSample s;
  s.curve = curve;
  s.label = classify_curve(curve, derive_seed(seed, StreamTag::kClassify, 0));
  if (s.label.is_unknot()) {
    s.intensity = IntensityDistribution(std::vector<std::uint32_t>(curve.size(), 0), s.label);
  } else {
    s.intensity = intensity_distribution(curve, seed, settings);
  }
  s.density = density(s.intensity);
  s.writhe = writhe(curve);
  s.acn = acn(curve);
  return s;
}

std::uint64_t population_seed(std::uint64_t seed, std::size_t n, const KnotLabel& target) {
  const auto index = static_cast<std::uint64_t>(n) << 16 | static_cast<std::uint64_t>(target.catalog_index());
  return derive_seed(seed, StreamTag::kSampler, splitmix64(index));
}

std::vector<PolygonSample> sample_polygons(std::size_t n, const KnotLabel& target, std::size_t count,
                                           std::uint64_t seed, const SamplerSettings& sampler,
                                           const IntensitySettings& intensity) {
  const auto curves = sample_curves(n, target, count, seed, sampler);
  std::vector<PolygonSample> out(count);
  IntensitySettings inner = intensity;
  inner.workers = 1;
  parallel_for(count, intensity.workers, [&](std::size_t k) {
    out[k] = analyse_sample(curves[k], derive_seed(seed, StreamTag::kOpening, k), inner);
  });
  return out;
}

// ---- population statistics ----

const GroupStats* PopulationStats::find(std::size_t length, const KnotLabel& label) const {
  for (const auto& g : groups) {
    if (g.length == length && g.label == label) return &g;
  }
  return nullptr;
}

PopulationStats population_stats(const std::vector<PolygonSample>& samples) {
  std::map<std::pair<std::size_t, KnotLabel>, std::vector<const PolygonSample*>> grouped;
  for (const auto& s : samples) grouped[{s.length(), s.label}].push_back(&s);

  PopulationStats out;
  for (const auto& [key, members] : grouped) {
    GroupStats g;
    g.length = key.first;
    g.label = key.second;
    g.count = members.size();
    std::vector<double> d;
    g.mean_fingerprint.assign(kFingerprintGrid, 0.0);
    for (const auto* s : members) {
      d.push_back(s->density);
      const Fingerprint fp(s->intensity);
      for (std::size_t k = 0; k < kFingerprintGrid; ++k) {
        g.mean_fingerprint[k] += fp(static_cast<double>(k) / (kFingerprintGrid - 1)) / static_cast<double>(g.count);
      }
    }
    g.density = stats::quartiles(d);
    g.max_density = *std::ranges::max_element(d);
    out.groups.push_back(std::move(g));
  }

  std::vector<double> dens, wr, ac;
  for (const auto& s : samples) {
    dens.push_back(s.density);
    wr.push_back(s.writhe);
    ac.push_back(s.acn);
  }
  if (samples.size() >= 2) {
    out.pearson_writhe = stats::pearson(dens, wr);
    out.pearson_acn = stats::pearson(dens, ac);
  }
  return out;
}

void to_json(nlohmann::json& j, const GroupStats& g) {
  j = nlohmann::json{{"length", g.length},
                     {"label", g.label.name()},
                     {"count", g.count},
                     {"density_q1", g.density.q1},
                     {"density_median", g.density.median},
                     {"density_q3", g.density.q3},
                     {"density_max", g.max_density},
                     {"mean_fingerprint", g.mean_fingerprint}};
}

void to_json(nlohmann::json& j, const PopulationStats& p) {
  j = nlohmann::json{{"groups", p.groups}, {"pearson_density_writhe", p.pearson_writhe},
                     {"pearson_density_acn", p.pearson_acn}};
}

std::string samples_csv(const std::vector<PolygonSample>& samples) {
  std::ostringstream out;
  out.precision(17);
  out << "length,label,density,writhe,acn\n";
  for (const auto& s : samples) {
    out << s.length() << ',' << s.label.name() << ',' << s.density << ',' << s.writhe << ',' << s.acn << '\n';
  }
  return out.str();
}

// ---- strand passages ----

std::vector<PassageRecord> run_passage_experiment(std::size_t n, std::size_t moves, std::uint64_t seed,
                                                  const PassageSettings& settings) {
  if (n < 12) throw IndexOutOfRange("passage experiment needs at least 12 edges");
  const auto trefoil = *label_from_name("3_1");
  PLCurve current = sample_curves(n, trefoil, 1, seed, settings.sampler).front();
  KnotLabel label = trefoil;
  Rng rng(derive_seed(seed, StreamTag::kPassage, 0));
  IntensitySettings intensity = settings.intensity;

  std::vector<PassageRecord> records;
  for (std::size_t m = 0; m < moves; ++m) {
    if (settings.max_records && records.size() >= settings.max_records) break;
    const Move mv = random_move(rng, n);
    auto sites = detect_passages(current, mv.i, mv.j, mv.angle, settings.steps);
    PLCurve next = crankshaft(current, mv.i, mv.j, mv.angle);
    if (sites.empty()) {
      current = std::move(next);
      continue;
    }
    // One move may sweep through several strands. Each passage is recorded
    // separately, between the states halfway to the neighbouring passages.
    std::ranges::sort(sites, {}, &PassageSite::angle);
    const std::size_t k = sites.size();
    std::vector<double> state_angle(k + 1);
    state_angle[0] = 0.0;
    state_angle[k] = mv.angle;
    for (std::size_t p = 1; p < k; ++p) state_angle[p] = 0.5 * (sites[p - 1].angle + sites[p].angle);
    const std::uint64_t move_seed = derive_seed(seed, StreamTag::kPassage, m + 1);

    PLCurve before = current;
    KnotLabel before_label = label;
    for (std::size_t p = 0; p < k; ++p) {
      PLCurve after = p + 1 == k ? next : crankshaft(current, mv.i, mv.j, state_angle[p + 1]);
      const KnotLabel after_label = classify_curve(after, derive_seed(move_seed, StreamTag::kClassify, p));
      const KnotLabel pre = before_label;
      const KnotLabel post = after_label;
      PLCurve pre_curve = std::exchange(before, after);
      before_label = after_label;
      if (pre.is_unknot() && post.is_unknot()) continue;
      if (settings.max_records && records.size() >= settings.max_records) continue;

      // Score on the pre-passage curve; an unknotted pre-passage curve has no
      // distribution, so the knotted post-passage curve is scored instead.
      const PLCurve& scored = pre.is_unknot() ? after : pre_curve;
      const KnotLabel& scored_label = pre.is_unknot() ? post : pre;
      if (scored_label.is_other()) continue;
      const auto dist = intensity_distribution(scored, derive_seed(move_seed, StreamTag::kOpening, p), intensity);

      PassageRecord r;
      r.move = m;
      r.i = mv.i;
      r.j = mv.j;
      r.angle = mv.angle;
      r.from_angle = state_angle[p];
      r.to_angle = state_angle[p + 1];
      r.pre_label = pre;
      r.post_label = post;
      r.cosmetic = pre == post;
      r.site = sites[p];
      const auto peak = *std::ranges::max_element(dist.counts());
      r.normalized_profile.assign(n, 0.0);
      if (peak > 0) {
        for (std::size_t v = 0; v < n; ++v) r.normalized_profile[v] = static_cast<double>(dist.count(v)) / peak;
      }
      r.normalized_intensity =
          std::max(r.normalized_profile[r.site.moving_vertex], r.normalized_profile[r.site.static_vertex]);
      r.pre_curve = std::move(pre_curve);
      r.post_curve = std::move(after);
      records.push_back(std::move(r));
    }
    label = before_label;
    current = std::move(next);
  }
  return records;
}

std::vector<HistogramRow> passage_histogram(const std::vector<PassageRecord>& records, std::size_t bins) {
  if (bins == 0) throw IndexOutOfRange("histogram needs at least one bin");
  std::vector<HistogramRow> rows(bins);
  auto bin_of = [bins](double x) { return std::min(static_cast<std::size_t>(x * static_cast<double>(bins)), bins - 1); };
  std::vector<double> cos(bins, 0), non(bins, 0), all(bins, 0);
  double n_cos = 0, n_non = 0, n_all = 0;
  for (const auto& r : records) {
    (r.cosmetic ? cos : non)[bin_of(r.normalized_intensity)] += 1;
    (r.cosmetic ? n_cos : n_non) += 1;
    for (double v : r.normalized_profile) {
      all[bin_of(v)] += 1;
      n_all += 1;
    }
  }
  for (std::size_t b = 0; b < bins; ++b) {
    rows[b].lo = static_cast<double>(b) / static_cast<double>(bins);
    rows[b].hi = static_cast<double>(b + 1) / static_cast<double>(bins);
    rows[b].cosmetic = n_cos > 0 ? cos[b] / n_cos : 0.0;
    rows[b].noncosmetic = n_non > 0 ? non[b] / n_non : 0.0;
    rows[b].overall = n_all > 0 ? all[b] / n_all : 0.0;
  }
  return rows;
}

std::string histogram_csv(const std::vector<HistogramRow>& rows) {
  std::ostringstream out;
  out << "bin,cosmetic_fraction,noncosmetic_fraction,overall_fraction\n";
  for (const auto& r : rows) {
    out.precision(6);
    out << r.lo << '-' << r.hi << ',';
    out.precision(17);
    out << r.cosmetic << ',' << r.noncosmetic << ',' << r.overall << '\n';
  }
  return out.str();
}

void to_json(nlohmann::json& j, const PassageSite& s) {
  j = nlohmann::json{{"moving_edge", s.moving_edge},
                     {"static_edge", s.static_edge},
                     {"angle", s.angle},
                     {"moving_vertex", s.moving_vertex},
                     {"static_vertex", s.static_vertex}};
}

void to_json(nlohmann::json& j, const PassageRecord& r) {
  j = nlohmann::json{{"move", r.move},
                     {"pivots", {r.i, r.j}},
                     {"angle", r.angle},
                     {"from_angle", r.from_angle},
                     {"to_angle", r.to_angle},
                     {"pre_label", r.pre_label.name()},
                     {"post_label", r.post_label.name()},
                     {"cosmetic", r.cosmetic},
                     {"site", r.site},
                     {"normalized_intensity", r.normalized_intensity},
                     {"normalized_profile", r.normalized_profile},
                     {"pre_curve", r.pre_curve},
                     {"post_curve", r.post_curve}};
}

// ---- stick trefoil with an unknotted tail ----

PLCurve stick_trefoil() {
  return PLCurve({{0.3198222316404582, -0.041882782981105038, 0.36228290407209984},
                  {-0.34980526700397263, 0.39824328163254563, -0.23595455740366367},
                  {0.48925418898582507, -0.14213271216058843, -0.29898641154816596},
                  {-0.07638955909591516, -0.13873494156453603, 0.52565630224569437},
                  {0.22148535811325587, 0.15440170311018164, -0.38282674176187603},
                  {-0.60436695263960871, -0.22989454803638409, 0.029828504395908784}});
}

PLCurve esn_tail_construction(std::size_t tail) {
  const auto hex = stick_trefoil();
  if (tail == 0) return hex;
  constexpr std::size_t kEdge = 0;
  const Point3 v0 = hex.vertex(kEdge), v1 = hex.vertex(kEdge + 1);
  Point3 centroid{0, 0, 0};
  for (const auto& p : hex.vertices()) centroid += p * (1.0 / 6.0);

  const Vec3 e = normalized(v1 - v0);
  Vec3 r = (v0 + v1) * 0.5 - centroid;
  r -= e * dot(r, e);
  const Vec3 o = normalized(r);  // away from the knot
  const Vec3 s = cross(o, e);    // e x s = o

  std::vector<Point3> path;
  if (tail == 1) {
    path.push_back((v0 + v1) * 0.5 + o * std::sqrt(0.75));
  } else {
    // Out along u for a edges, one sidestep s, back along w for b = T + 1 - a - 1 edges.
    const std::size_t a = tail / 2;
    const std::size_t b = tail - a;
    const double ad = static_cast<double>(a), bd = static_cast<double>(b);
    const Vec3 d = normalized(e - s);
    const double c = (2.0 + ad * ad - bd * bd) / (2.0 * std::sqrt(2.0) * ad);
    const Vec3 u = o * std::sqrt(1.0 - c * c) + d * c;
    const Vec3 w = (e - s - u * ad) * (1.0 / bd);
    Point3 p = v0;
    for (std::size_t k = 0; k < a; ++k) path.push_back(p += u);
    path.push_back(p += s);
    for (std::size_t k = 0; k + 1 < b; ++k) path.push_back(p += w);
  }

  std::vector<Point3> pts{v0};
  pts.insert(pts.end(), path.begin(), path.end());
  for (std::size_t k = 1; k < 6; ++k) pts.push_back(hex.vertex(kEdge + k));
  return PLCurve(std::move(pts));
}

}  // namespace knotint
