#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "knotint/curve.hpp"
#include "knotint/errors.hpp"

using namespace knotint;

TEST_CASE("parsing xyz text") {
  const auto tri = parse_xyz("0 0 0\n1 0 0\n0 1 0\n");
  CHECK(tri.size() == 3);
  CHECK(tri.closed());
  CHECK(tri[1] == Point3{1, 0, 0});

  const auto commented = parse_xyz("# header\n\n0 0 0   # origin\n  1.5e0 0 0\n\t0 2 -1\n");
  CHECK(commented.size() == 3);
  CHECK(commented[2] == Point3{0, 2, -1});

  try {
    parse_xyz("0 0 0\n1 0 0\n0 x 0\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_xyz("0 0 0\n1 0 0 4\n0 1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_xyz("0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_xyz("0 0 0\n1 0 0\n"), DegenerateCurve);
  CHECK_THROWS_AS(parse_xyz("0 0 0\n1 0 0\n1 0 0\n0 1 0\n"), DegenerateCurve);
  CHECK_THROWS_AS(parse_xyz("0 0 0\n1 0 nan\n0 1 0\n"), Error);
}

TEST_CASE("xyz files round-trip") {
  const auto poly = regular_polygon(60);
  const auto path = std::filesystem::temp_directory_path() / "knotint_test_60gon.xyz";
  save_xyz(poly, path);
  const auto back = load_xyz(path);
  std::filesystem::remove(path);
  CHECK(back == poly);
  CHECK(back.size() == 60);
  for (std::size_t e = 0; e < 60; ++e) CHECK(back.edge_length(e) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(load_xyz("/nonexistent/knotint.xyz"), ParseError);
}

TEST_CASE("curve validation") {
  CHECK_THROWS_AS(PLCurve({{0, 0, 0}, {1, 0, 0}}), DegenerateCurve);
  CHECK_NOTHROW(PLCurve({{0, 0, 0}, {1, 0, 0}}, false));
  CHECK_THROWS_AS(PLCurve({{0, 0, 0}, {1, 0, 0}, {0, 0, 0}}), DegenerateCurve);
  CHECK_THROWS_AS(PLCurve({{0, 0, 0}}, false), DegenerateCurve);
}

TEST_CASE("opening at an edge") {
  const PLCurve square({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}});
  const auto chain = open_at_edge(square, 0);
  CHECK(chain.vertices == std::vector<Point3>{{1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 0}});
  CHECK(chain.origin_edge == 0);
  CHECK(chain.parent_vertex(0, 4) == 1);
  CHECK(chain.parent_vertex(3, 4) == 0);
  CHECK_THROWS_AS(open_at_edge(square, 4), IndexOutOfRange);

  const auto knot = torus_trefoil(25);
  for (std::size_t e = 0; e < 25; ++e) {
    const auto c = open_at_edge(knot, e);
    REQUIRE(c.size() == 25);
    for (std::size_t k = 0; k < 25; ++k) CHECK(c.vertices[k] == knot[c.parent_vertex(k, 25)]);
    CHECK(reclose(c) == knot);
  }
}

TEST_CASE("rigid motions") {
  const auto knot = torus_trefoil(40);
  CHECK(apply_rigid_motion(knot, Mat3{}, Vec3{0, 0, 0}) == knot);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto moved = random_rigid_motion(knot, seed);
    CHECK(moved == random_rigid_motion(knot, seed));
    for (std::size_t e = 0; e < 40; ++e) {
      CHECK(std::abs(moved.edge_length(e) - knot.edge_length(e)) < 1e-9 * knot.edge_length(e));
    }
    CHECK(distance(moved[3], moved[29]) == doctest::Approx(distance(knot[3], knot[29])).epsilon(1e-12));
  }
  const auto m = mirror(knot);
  CHECK(m[5].z == -knot[5].z);
  CHECK(scaled(knot, 2.0)[7] == knot[7] * 2.0);
}

TEST_CASE("equilateral validation") {
  const auto poly = regular_polygon(17);
  CHECK(is_equilateral(poly));
  CHECK_FALSE(is_equilateral(regular_polygon(17, 2.5)));
  std::vector<Point3> v(poly.vertices().begin(), poly.vertices().end());
  // Stretch edge 0 by 1.01 by moving vertex 1 along it.
  v[1] = v[0] + (v[1] - v[0]) * 1.01;
  CHECK_FALSE(is_equilateral(PLCurve(v)));
  CHECK_FALSE(is_equilateral(torus_trefoil(30)));
}

TEST_CASE("edge keys follow geometry, not indices") {
  const auto knot = torus_trefoil(30);
  const auto shifted = cyclic_shift(knot, 11);
  for (std::size_t e = 0; e < 30; ++e) CHECK(edge_key(shifted, e) == edge_key(knot, (e + 11) % 30));
  CHECK(edge_key(knot, 0) != edge_key(knot, 1));
}

TEST_CASE("curve json round-trip") {
  const auto knot = torus_trefoil(12);
  const nlohmann::json j = knot;
  CHECK(j.at("closed") == true);
  CHECK(j.at("vertices").size() == 12);
  CHECK(j.get<PLCurve>() == knot);
  const PLCurve open({{0, 0, 0}, {1, 2, 3}}, false);
  CHECK(nlohmann::json(open).get<PLCurve>() == open);
}
