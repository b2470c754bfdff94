#include <doctest.h>

#include <algorithm>
#include <map>

#include <nlohmann/json.hpp>

#include "knotint/diagram.hpp"
#include "knotint/errors.hpp"
#include "knotint/invariants.hpp"
#include "knotint/random.hpp"

using namespace knotint;

namespace {

KnotDiagram code(std::initializer_list<GaussEntry> entries) { return KnotDiagram{entries, true}; }

// Every non-adjacent edge pair tested directly.
std::vector<std::pair<std::size_t, std::size_t>> brute_force_pairs(std::span<const Projected> pts) {
  const std::size_t n = pts.size();
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 2; b < n; ++b) {
      if (a == 0 && b == n - 1) continue;
      EdgePairCrossing c;
      const auto r = test_edge_pair(pts[a], pts[a + 1], pts[b], pts[(b + 1) % n], ProjectionSettings{}, c);
      REQUIRE(r != PairTest::kDegenerate);
      if (r == PairTest::kCross) out.emplace_back(a, b);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("planar triangle seen from above has no crossings") {
  const PLCurve tri({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
  const auto d = project(tri, {0, 0, 1});
  CHECK(d.code.empty());
  CHECK(d.valid());
}

TEST_CASE("projection along an edge is degenerate") {
  const auto knot = torus_trefoil(30);
  CHECK_THROWS_AS(project(knot, normalized(knot[1] - knot[0])), DegenerateProjection);
}

TEST_CASE("crossing sign follows the right-hand rule") {
  // Over strand along +x above the under strand along +y, viewed from +z.
  const std::vector<Projected> pts{{-1, 0, 1}, {1, 0, 1}, {1, -2, 0.5}, {0, -1, 0}, {0, 1, 0}, {-2, 1, 0.5}};
  const auto cs = find_crossings(pts, true);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].over_edge == 0);
  CHECK(cs[0].under_edge == 3);
  CHECK(cs[0].sign == 1);
  // Reversing the under strand flips the sign.
  const std::vector<Projected> flipped{{-1, 0, 1}, {1, 0, 1}, {1, 2, 0.5}, {0, 1, 0}, {0, -1, 0}, {-2, -1, 0.5}};
  REQUIRE(find_crossings(flipped, true).size() == 1);
  CHECK(find_crossings(flipped, true)[0].sign == -1);
  CHECK(cs[0].over_param == doctest::Approx(0.5));
  CHECK(cs[0].under_param == doctest::Approx(0.5));
}

TEST_CASE("sweep finds the same crossings as all-pairs testing") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Projected> pts(40);
    for (auto& p : pts) p = {uniform01(rng) * 10, uniform01(rng) * 10, uniform01(rng)};
    const auto cs = find_crossings(pts, true);
    std::vector<std::pair<std::size_t, std::size_t>> got;
    for (const auto& c : cs) got.emplace_back(std::min(c.over_edge, c.under_edge), std::max(c.over_edge, c.under_edge));
    std::ranges::sort(got);
    CHECK(got == brute_force_pairs(pts));
  }
}

TEST_CASE("trefoil projections") {
  const auto knot = torus_trefoil(120);
  std::map<std::size_t, int> reduced;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto d = project(knot, random_direction(seed));
    CHECK(d.valid());
    CHECK(d.crossing_count() >= 3);
    const auto s = simplify(d);
    CHECK(s.valid());
    CHECK(s.crossing_count() <= d.crossing_count());
    CHECK(s.crossing_count() >= 3);
    ++reduced[s.crossing_count()];
    CHECK(alexander(s) == LaurentPoly::from_coefficients({1, -1, 1}, -1));
  }
  CHECK(reduced[3] > 25);
}

TEST_CASE("Reidemeister reductions") {
  CHECK(simplify(code({{0, true, 1}, {0, false, 1}})).code.empty());
  CHECK(simplify(code({{0, false, -1}, {0, true, -1}})).code.empty());
  CHECK(simplify(code({{0, true, 1}, {1, true, -1}, {0, false, 1}, {1, false, -1}})).code.empty());
  CHECK(simplify(code({{0, true, 1}, {1, true, -1}, {1, false, -1}, {0, false, 1}})).code.empty());

  // Trefoil with an extra kink keeps its three essential crossings.
  const auto trefoil = code({{0, true, 1}, {1, false, 1}, {2, true, 1}, {0, false, 1}, {1, true, 1}, {2, false, 1}});
  const auto kinked = code({{0, true, 1}, {1, false, 1}, {3, true, -1}, {3, false, -1}, {2, true, 1}, {0, false, 1},
                            {1, true, 1}, {2, false, 1}});
  CHECK(simplify(kinked).crossing_count() == 3);
  CHECK(simplify(trefoil) == trefoil);
  CHECK(simplify(simplify(kinked)) == simplify(kinked));
}

TEST_CASE("simplification keeps the knot type of random polygons") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Point3> v(25);
    for (auto& p : v) p = uniform_unit_vector(rng) * 2.0;
    const PLCurve c(v);
    const auto d1 = project(c, random_direction(2 * trial));
    const auto d2 = project(c, random_direction(2 * trial + 1));
    const auto s1 = simplify(d1);
    CHECK(s1.valid());
    CHECK(s1.crossing_count() <= d1.crossing_count());
    CHECK(simplify(s1) == s1);
    CHECK(alexander(s1) == alexander(d2));
  }
}

TEST_CASE("random directions") {
  CHECK(random_direction(42) == random_direction(42));
  Vec3 sum{0, 0, 0};
  for (std::uint64_t s = 0; s < 10000; ++s) {
    const auto d = random_direction(s);
    CHECK(std::abs(norm(d) - 1.0) < 1e-12);
    sum += d;
  }
  CHECK(norm(sum * 1e-4) < 0.05);
}

TEST_CASE("gauss code json") {
  const auto d = code({{0, true, 1}, {1, false, -1}, {0, false, 1}, {1, true, -1}});
  const auto j = gauss_code_json(d);
  CHECK(j.dump() == R"([[0,"O",1],[1,"U",-1],[0,"U",1],[1,"O",-1]])");
  CHECK(diagram_from_json(j) == d);
}
