#include <doctest.h>

#include <numbers>

#include <nlohmann/json.hpp>

#include "knotint/errors.hpp"
#include "knotint/experiments.hpp"

using namespace knotint;

namespace {

// Pivots 0 and 2 rotate v1 about the x axis: v1(θ) = (1, cos θ, sin θ). Edge
// v0v1 meets the static edge v5v6 (the segment z = 0.6, y = 0) exactly when
// θ = π/2, at the point (0.6, 0, 0.6).
PLCurve obstruction() {
  return PLCurve({{0, 0, 0},
                  {1, 1, 0},
                  {2, 0, 0},
                  {2, -2, 0},
                  {1, -2, 0.6},
                  {1, 0, 0.6},
                  {0.3, 0, 0.6},
                  {0.3, -2, 0.6},
                  {0, -2, 0}});
}

double max_deviation(const PLCurve& a, const PLCurve& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, distance(a[k], b[k]));
  return d;
}

}  // namespace

TEST_CASE("crankshaft arcs take the shorter side") {
  CHECK(crankshaft_arc(10, 2, 5) == std::vector<std::size_t>{3, 4});
  CHECK(crankshaft_arc(10, 5, 2) == std::vector<std::size_t>{3, 4});
  CHECK(crankshaft_arc(10, 8, 1) == std::vector<std::size_t>{9, 0});
  CHECK(crankshaft_arc(10, 0, 5).size() == 4);
  CHECK_THROWS_AS(crankshaft_arc(10, 3, 4), IndexOutOfRange);
  CHECK_THROWS_AS(crankshaft_arc(10, 0, 9), IndexOutOfRange);
  CHECK_THROWS_AS(crankshaft_arc(10, 3, 3), IndexOutOfRange);
}

TEST_CASE("crankshaft moves are isometries of the rotated block") {
  const auto knot = torus_trefoil(40);
  CHECK(max_deviation(crankshaft(knot, 3, 17, 0.0), knot) < 1e-12);
  CHECK(max_deviation(crankshaft(knot, 3, 17, 2.0 * std::numbers::pi), knot) < 1e-9);

  const auto polygon = regular_polygon(30);
  auto moved = polygon;
  for (int k = 0; k < 50; ++k) moved = crankshaft(moved, (7 * k) % 30, (7 * k + 11) % 30, 0.37 * k);
  CHECK(is_equilateral(moved));
  for (std::size_t e = 0; e < 30; ++e) CHECK(moved.edge_length(e) == doctest::Approx(1.0).epsilon(1e-9));

  const auto twisted = crankshaft(knot, 0, 10, 1.1);
  for (std::size_t e = 0; e < 40; ++e) CHECK(twisted.edge_length(e) == doctest::Approx(knot.edge_length(e)).epsilon(1e-9));
}

TEST_CASE("coincident pivots are rejected") {
  const PLCurve c({{0, 0, 0}, {1, 0, 0}, {0, 0, 0}, {0, 1, 0}, {0, 1, 1}});
  CHECK_THROWS_AS(crankshaft(c, 0, 2, 1.0), DegenerateAxis);
}

TEST_CASE("unobstructed moves have no passages") {
  const auto polygon = regular_polygon(12);
  CHECK(detect_passages(polygon, 0, 4, std::numbers::pi / 2, 64).empty());
  CHECK(detect_passages(polygon, 2, 8, 1.0, 64).empty());
}

TEST_CASE("constructed obstruction yields exactly one site") {
  const auto curve = obstruction();
  const double angle = 2.0 * std::numbers::pi / 3.0;
  const auto sites = detect_passages(curve, 0, 2, angle, 64);
  REQUIRE(sites.size() == 1);
  CHECK(sites[0].moving_edge == 0);
  CHECK(sites[0].static_edge == 5);
  CHECK(sites[0].angle == doctest::Approx(std::numbers::pi / 2).epsilon(1e-6));
  CHECK(sites[0].moving_vertex == 1);
  CHECK(sites[0].static_vertex == 6);

  CHECK(detect_passages(curve, 0, 2, angle, 128) == sites);
  CHECK(detect_passages(curve, 0, 2, 1.0, 64).empty());

  // Sweeping back from the end position meets the same pair.
  const auto back = detect_passages(crankshaft(curve, 0, 2, angle), 0, 2, -angle, 64);
  REQUIRE(back.size() == 1);
  CHECK(back[0].moving_edge == sites[0].moving_edge);
  CHECK(back[0].static_edge == sites[0].static_edge);
  CHECK(back[0].moving_vertex == sites[0].moving_vertex);
  CHECK(back[0].static_vertex == sites[0].static_vertex);
  CHECK_THROWS_AS(detect_passages(curve, 0, 2, angle, 4), IndexOutOfRange);
}

TEST_CASE("passage detection is symmetric on random moves") {
  auto curve = torus_trefoil(30);
  for (int k = 0; k < 20; ++k) {
    const std::size_t i = (5 * k) % 30, j = (5 * k + 9) % 30;
    const double angle = 0.4 + 0.25 * k;
    const auto fwd = detect_passages(curve, i, j, angle, 64);
    const auto bwd = detect_passages(crankshaft(curve, i, j, angle), i, j, -angle, 64);
    REQUIRE(fwd.size() == bwd.size());
    for (std::size_t s = 0; s < fwd.size(); ++s) {
      CHECK(fwd[s].moving_edge == bwd[s].moving_edge);
      CHECK(fwd[s].static_edge == bwd[s].static_edge);
    }
    curve = crankshaft(curve, i, j, angle);
  }
}

TEST_CASE("unknotted polygons are sampled immediately") {
  const auto curves = sample_curves(20, KnotLabel::unknot(), 5, 1);
  REQUIRE(curves.size() == 5);
  for (const auto& c : curves) {
    CHECK(c.size() == 20);
    CHECK(is_equilateral(c));
    CHECK(classify_curve(c, 99).is_unknot());
  }
}

TEST_CASE("sampled trefoils are trefoils") {
  const auto trefoil = *label_from_name("3_1");
  const auto curves = sample_curves(60, trefoil, 30, 8);
  for (const auto& c : curves) {
    CHECK(is_equilateral(c));
    CHECK(classify_curve(c, 12345) == trefoil);
  }
  SamplerSettings serial, parallel;
  serial.workers = 1;
  parallel.workers = 3;
  CHECK(sample_curves(30, trefoil, 4, 2, serial) == sample_curves(30, trefoil, 4, 2, parallel));
}

TEST_CASE("rare targets time out") {
  SamplerSettings settings;
  settings.budget_factor = 3;
  try {
    sample_curves(8, *label_from_name("6_2"), 1, 0, settings);
    FAIL("expected a timeout");
  } catch (const SamplingTimeout& e) {
    CHECK(e.attempts() == 3);
  }
}

TEST_CASE("population statistics of small groups") {
  const auto s = analyse_sample(torus_trefoil(30), 4);
  const auto single = population_stats({s});
  REQUIRE(single.groups.size() == 1);
  const auto& g = single.groups[0];
  CHECK(g.count == 1);
  CHECK(g.density.q1 == s.density);
  CHECK(g.density.median == s.density);
  CHECK(g.density.q3 == s.density);
  CHECK(g.max_density == s.density);

  const auto triple = population_stats({s, s, s});
  const Fingerprint fp(s.intensity);
  REQUIRE(triple.groups[0].mean_fingerprint.size() == kFingerprintGrid);
  for (std::size_t k = 0; k < kFingerprintGrid; ++k) {
    CHECK(triple.groups[0].mean_fingerprint[k] == doctest::Approx(fp(k / 100.0)).epsilon(1e-12));
  }
  CHECK(triple.find(30, s.label) != nullptr);
  CHECK(triple.find(31, s.label) == nullptr);

  const auto csv = samples_csv({s});
  CHECK(csv.rfind("length,label,density,writhe,acn\n30,3_1,", 0) == 0);
  const auto j = nlohmann::json(triple);
  CHECK(j.at("groups").at(0).at("label") == "3_1");
}

TEST_CASE("passage records are consistent") {
  PassageSettings settings;
  const auto records = run_passage_experiment(24, 60, 3, settings);
  CHECK(!records.empty());
  for (const auto& r : records) {
    CHECK(r.cosmetic == (r.pre_label == r.post_label));
    CHECK(!(r.pre_label.is_unknot() && r.post_label.is_unknot()));
    CHECK(classify_curve(r.pre_curve, 5) == r.pre_label);
    CHECK(classify_curve(r.post_curve, 5) == r.post_label);
    CHECK(r.from_angle < r.site.angle);
    CHECK(r.site.angle < r.to_angle);
    CHECK(r.to_angle <= r.angle);
    CHECK(r.normalized_intensity >= 0.0);
    CHECK(r.normalized_intensity <= 1.0);
    CHECK(r.normalized_intensity ==
          std::max(r.normalized_profile.at(r.site.moving_vertex), r.normalized_profile.at(r.site.static_vertex)));
    CHECK(max_deviation(crankshaft(r.pre_curve, r.i, r.j, r.to_angle - r.from_angle), r.post_curve) < 1e-9);
    // Exactly one passage lies between the recorded states.
    CHECK(detect_passages(r.pre_curve, r.i, r.j, r.to_angle - r.from_angle, 64).size() == 1);
  }
  const auto again = run_passage_experiment(24, 60, 3, settings);
  REQUIRE(again.size() == records.size());
  for (std::size_t k = 0; k < records.size(); ++k) CHECK(nlohmann::json(again[k]) == nlohmann::json(records[k]));

  const auto rows = passage_histogram(records);
  double c = 0, nc = 0, all = 0;
  for (const auto& row : rows) {
    c += row.cosmetic;
    nc += row.noncosmetic;
    all += row.overall;
  }
  CHECK(all == doctest::Approx(1.0));
  CHECK((c == doctest::Approx(1.0) || c == 0.0));
  CHECK((nc == doctest::Approx(1.0) || nc == 0.0));
  CHECK(run_passage_experiment(24, 0, 3, settings).empty());
}

TEST_CASE("stick trefoil with tails") {
  const auto hex = esn_tail_construction(0);
  CHECK(hex.size() == 6);
  CHECK(is_equilateral(hex));
  CHECK(classify_curve(hex) == *label_from_name("3_1"));
  for (std::size_t t : {1u, 2u, 3u, 7u, 20u, 41u, 60u, 120u}) {
    const auto c = esn_tail_construction(t);
    CHECK(c.size() == t + 6);
    CHECK(is_equilateral(c));
    CHECK(classify_curve(c, t) == *label_from_name("3_1"));
  }
}

TEST_CASE("tail vertices are excluded from almost every core") {
  const std::size_t tail = 30, n = tail + 6;
  const auto curve = esn_tail_construction(tail);
  const auto dist = intensity_distribution(curve, 6);
  // Interior tail vertices are curve vertices 3 .. tail - 2; only the openings
  // on the knotted block keep the whole tail inside their core.
  std::size_t block_openings = 0;
  for (const auto& o : dist.openings) {
    if (o.status == OpeningStatus::kCore && o.core.size() == open_at_edge(curve, o.edge).size()) ++block_openings;
  }
  CHECK(block_openings <= 3);
  for (std::size_t v = 3; v + 2 <= tail; ++v) CHECK(dist.count(v) <= block_openings);
  const double d = density(dist);
  CHECK(std::abs(d - 6.0 / n) <= 3.0 / n);

  double previous = 1.0;
  for (std::size_t t : {20u, 60u, 120u}) {
    const double dt = density(intensity_distribution(esn_tail_construction(t), 1));
    CHECK(dt < previous);
    previous = dt;
  }
  CHECK(previous < 0.2);
}
