#include "knotint/curve.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "knotint/errors.hpp"
#include "knotint/random.hpp"

namespace knotint {

PLCurve::PLCurve(std::vector<Point3> vertices, bool closed, const CurveTolerances& tol)
    : vertices_(std::move(vertices)), closed_(closed) {
  const std::size_t min_size = closed_ ? 3 : 2;
  if (vertices_.size() < min_size) {
    throw DegenerateCurve("curve needs at least " + std::to_string(min_size) + " vertices, got " +
                          std::to_string(vertices_.size()));
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!is_finite(vertices_[i])) throw DegenerateCurve("non-finite vertex " + std::to_string(i));
  }
  for (std::size_t i = 0; i < edge_count(); ++i) {
    if (edge_length(i) <= tol.min_vertex_separation) {
      throw DegenerateCurve("coincident consecutive vertices at " + std::to_string(i));
    }
  }
}

double PLCurve::edge_length(std::size_t i) const {
  return distance(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
}

namespace {

bool parse_double(std::string_view token, double& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

PLCurve parse_xyz(const std::string& text) {
  std::vector<Point3> vertices;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens.size() != 3) throw ParseError("expected 3 coordinates, got " + std::to_string(tokens.size()), line_no);
    double c[3];
    for (int k = 0; k < 3; ++k) {
      if (!parse_double(tokens[k], c[k])) throw ParseError("not a number: '" + tokens[k] + "'", line_no);
    }
    vertices.push_back({c[0], c[1], c[2]});
  }
  return PLCurve(std::move(vertices), true);
}

PLCurve load_xyz(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_xyz(buf.str());
}

std::string format_xyz(const PLCurve& curve) {
  std::string out;
  char buf[96];
  for (const auto& v : curve.vertices()) {
    const int n = std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v.x, v.y, v.z);
    out.append(buf, static_cast<std::size_t>(n));
  }
  return out;
}

void save_xyz(const PLCurve& curve, const std::filesystem::path& path) {
  std::ofstream out(path);
  out << format_xyz(curve);
}

OpenChain open_at_edge(const PLCurve& curve, std::size_t edge) {
  if (!curve.closed()) throw IndexOutOfRange("open_at_edge needs a closed curve");
  const std::size_t n = curve.size();
  if (edge >= n) {
    throw IndexOutOfRange("edge " + std::to_string(edge) + " out of range for N=" + std::to_string(n));
  }
  OpenChain chain;
  chain.origin_edge = edge;
  chain.vertices.reserve(n);
  for (std::size_t k = 0; k < n; ++k) chain.vertices.push_back(curve[(edge + 1 + k) % n]);
  return chain;
}

PLCurve reclose(const OpenChain& chain) {
  const std::size_t n = chain.size();
  std::vector<Point3> v(n);
  for (std::size_t k = 0; k < n; ++k) v[(chain.origin_edge + 1 + k) % n] = chain.vertices[k];
  return PLCurve(std::move(v), true);
}

bool is_equilateral(const PLCurve& curve, double relative_tol) {
  for (std::size_t i = 0; i < curve.edge_count(); ++i) {
    if (std::abs(curve.edge_length(i) - 1.0) > relative_tol) return false;
  }
  return true;
}

PLCurve apply_rigid_motion(const PLCurve& curve, const Mat3& rotation, const Vec3& translation) {
  std::vector<Point3> v;
  v.reserve(curve.size());
  for (const auto& p : curve.vertices()) v.push_back(rotation * p + translation);
  return PLCurve(std::move(v), curve.closed());
}

PLCurve random_rigid_motion(const PLCurve& curve, std::uint64_t seed) {
  Rng rng(derive_seed(seed, StreamTag::kMotion, 0));
  const Mat3 r = uniform_rotation(rng);
  const Vec3 t{20 * uniform01(rng) - 10, 20 * uniform01(rng) - 10, 20 * uniform01(rng) - 10};
  return apply_rigid_motion(curve, r, t);
}

PLCurve mirror(const PLCurve& curve) {
  std::vector<Point3> v;
  v.reserve(curve.size());
  for (const auto& p : curve.vertices()) v.push_back({p.x, p.y, -p.z});
  return PLCurve(std::move(v), curve.closed());
}

PLCurve scaled(const PLCurve& curve, double factor) {
  std::vector<Point3> v;
  v.reserve(curve.size());
  for (const auto& p : curve.vertices()) v.push_back(p * factor);
  return PLCurve(std::move(v), curve.closed());
}

PLCurve cyclic_shift(const PLCurve& curve, std::size_t shift) {
  const std::size_t n = curve.size();
  std::vector<Point3> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = curve[(k + shift) % n];
  return PLCurve(std::move(v), curve.closed());
}

std::uint64_t edge_key(const PLCurve& curve, std::size_t edge) noexcept {
  std::uint64_t h = 0x6b6e6f74ULL;
  for (const Point3* p : {&curve.vertex(edge), &curve.vertex(edge + 1)}) {
    for (double c : {p->x, p->y, p->z}) h = splitmix64(h ^ std::bit_cast<std::uint64_t>(c + 0.0));
  }
  return h;
}

void to_json(nlohmann::json& j, const PLCurve& curve) {
  auto verts = nlohmann::json::array();
  for (const auto& p : curve.vertices()) verts.push_back({p.x, p.y, p.z});
  j = nlohmann::json{{"closed", curve.closed()}, {"vertices", std::move(verts)}};
}

void from_json(const nlohmann::json& j, PLCurve& curve) {
  std::vector<Point3> v;
  for (const auto& row : j.at("vertices")) {
    v.push_back({row.at(0).get<double>(), row.at(1).get<double>(), row.at(2).get<double>()});
  }
  curve = PLCurve(std::move(v), j.at("closed").get<bool>());
}

PLCurve regular_polygon(std::size_t n, double edge) {
  const double radius = edge / (2.0 * std::sin(std::numbers::pi / static_cast<double>(n)));
  std::vector<Point3> v;
  v.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    v.push_back({radius * std::cos(t), radius * std::sin(t), 0.0});
  }
  return PLCurve(std::move(v), true);
}

PLCurve torus_trefoil(std::size_t n) {
  std::vector<Point3> v;
  v.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    const double r = 2.0 + std::cos(3 * t);
    v.push_back({r * std::cos(2 * t), r * std::sin(2 * t), std::sin(3 * t)});
  }
  return PLCurve(std::move(v), true);
}

}  // namespace knotint
