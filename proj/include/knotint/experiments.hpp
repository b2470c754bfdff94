#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "knotint/intensity.hpp"
#include "knotint/stats.hpp"

namespace knotint {

// ---- crankshaft moves ----

// Vertices strictly between i and j along the shorter arc (forward from i on
// ties), in curve order.
std::vector<std::size_t> crankshaft_arc(std::size_t n, std::size_t i, std::size_t j);

// Rotates the shorter arc between pivots i and j about the axis through them.
PLCurve crankshaft(const PLCurve& curve, std::size_t i, std::size_t j, double angle);

struct PassageSite {
  std::size_t moving_edge = 0;  // edge k joins vertices k and k+1
  std::size_t static_edge = 0;
  double angle = 0.0;           // rotation angle at which the edges meet
  std::size_t moving_vertex = 0;
  std::size_t static_vertex = 0;

  friend bool operator==(const PassageSite&, const PassageSite&) = default;
};

// Strand passages met while rotating from 0 to `angle` in `steps` frames.
// Sites are sorted by (moving_edge, static_edge).
std::vector<PassageSite> detect_passages(const PLCurve& curve, std::size_t i, std::size_t j, double angle,
                                         std::size_t steps = 64);

// ---- random polygons ----

struct SamplerSettings {
  std::size_t burn_in_factor = 10;      // burn-in of factor * N moves
  std::size_t budget_factor = 10000;    // classified samples allowed per requested curve
  unsigned workers = 0;
};

// Equilateral polygons of the target type. Curve k comes from its own chain
// (seeded by the sample index) started at the regular N-gon: burn-in, then one
// classification every N moves until the target type appears.
std::vector<PLCurve> sample_curves(std::size_t n, const KnotLabel& target, std::size_t count, std::uint64_t seed,
                                   const SamplerSettings& settings = {});

struct PolygonSample {
  PLCurve curve;
  KnotLabel label;
  double density = 0.0;
  double writhe = 0.0;
  double acn = 0.0;
  IntensityDistribution intensity;

  std::size_t length() const noexcept { return curve.size(); }
};

PolygonSample analyse_sample(const PLCurve& curve, std::uint64_t seed, const IntensitySettings& settings = {});

// Seed of one (length, type) population group, keyed to the group itself so
// that adding or reordering groups leaves the others unchanged.
std::uint64_t population_seed(std::uint64_t seed, std::size_t n, const KnotLabel& target);

std::vector<PolygonSample> sample_polygons(std::size_t n, const KnotLabel& target, std::size_t count,
                                           std::uint64_t seed, const SamplerSettings& sampler = {},
                                           const IntensitySettings& intensity = {});

// ---- population statistics ----

inline constexpr std::size_t kFingerprintGrid = 101;

struct GroupStats {
  std::size_t length = 0;
  KnotLabel label;
  std::size_t count = 0;
  stats::Quartiles density;
  double max_density = 0.0;
  std::vector<double> mean_fingerprint;  // on t = k / 100
};

struct PopulationStats {
  std::vector<GroupStats> groups;  // sorted by (length, label)
  double pearson_writhe = 0.0;
  double pearson_acn = 0.0;

  const GroupStats* find(std::size_t length, const KnotLabel& label) const;
};

PopulationStats population_stats(const std::vector<PolygonSample>& samples);

void to_json(nlohmann::json& j, const GroupStats& g);
void to_json(nlohmann::json& j, const PopulationStats& p);
std::string samples_csv(const std::vector<PolygonSample>& samples);

// ---- strand passages ----

struct PassageSettings {
  std::size_t steps = 64;
  IntensitySettings intensity;
  SamplerSettings sampler;
  std::size_t max_records = 0;  // stop early once reached; 0 = run all moves
};

// One strand passage. A move through several strands yields one record per
// passage; pre_curve and post_curve are the move's start curve rotated by
// from_angle and to_angle, which bracket the site's angle.
struct PassageRecord {
  std::size_t move = 0;
  PLCurve pre_curve;
  PLCurve post_curve;
  std::size_t i = 0, j = 0;
  double angle = 0.0;  // full move
  double from_angle = 0.0;
  double to_angle = 0.0;
  KnotLabel pre_label;
  KnotLabel post_label;
  bool cosmetic = false;
  PassageSite site;
  // Larger normalized value at the site's moving and static vertex.
  double normalized_intensity = 0.0;
  std::vector<double> normalized_profile;  // scored distribution divided by its maximum
};

std::vector<PassageRecord> run_passage_experiment(std::size_t n, std::size_t moves, std::uint64_t seed,
                                                  const PassageSettings& settings = {});

struct HistogramRow {
  double lo = 0.0, hi = 0.0;
  double cosmetic = 0.0, noncosmetic = 0.0, overall = 0.0;
};
std::vector<HistogramRow> passage_histogram(const std::vector<PassageRecord>& records, std::size_t bins = 10);
std::string histogram_csv(const std::vector<HistogramRow>& rows);

void to_json(nlohmann::json& j, const PassageSite& s);
void to_json(nlohmann::json& j, const PassageRecord& r);

// ---- stick trefoil with an unknotted tail ----

// Equilateral hexagonal trefoil with unit edges.
PLCurve stick_trefoil();

// The stick trefoil with one edge replaced by a planar-ish hairpin of T + 1
// unit edges, giving an equilateral curve of T + 6 edges.
PLCurve esn_tail_construction(std::size_t tail);

}  // namespace knotint
