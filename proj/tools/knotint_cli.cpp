#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "knotint/closure.hpp"
#include "knotint/curve.hpp"
#include "knotint/errors.hpp"
#include "knotint/experiments.hpp"
#include "knotint/intensity.hpp"
#include "knotint/invariants.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace knotint;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUser = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitTimeout = 4;

// Raised for invalid arguments that CLI11 cannot check by itself.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::uint64_t seed = 1;
  std::size_t closures = 64;
  std::size_t steps = 64;
  double radius_factor = 10.0;
  double acceptance_fraction = 0.5;
  std::string format = "json";
  unsigned workers = 0;
  std::string out_dir = ".";
  std::size_t budget_factor = SamplerSettings{}.budget_factor;

  void validate() const {
    if (closures < 1) throw UsageError("--closures must be at least 1");
    if (steps < 8) throw UsageError("--steps must be at least 8");
    if (budget_factor < 1) throw UsageError("--budget-factor must be at least 1");
    if (!(radius_factor >= 2.0)) throw UsageError("--radius-factor must be at least 2");
    if (!(acceptance_fraction >= 0.5 && acceptance_fraction <= 1.0)) {
      throw UsageError("--acceptance-fraction must lie in [0.5, 1]");
    }
  }

  IntensitySettings intensity() const {
    IntensitySettings s;
    s.core.closures = closures;
    s.core.acceptance_fraction = acceptance_fraction;
    s.core.closure.radius_factor = radius_factor;
    s.workers = workers;
    return s;
  }

  SamplerSettings sampler() const {
    SamplerSettings s;
    s.workers = workers;
    s.budget_factor = budget_factor;
    return s;
  }
};

std::string real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out << text;
  if (!out) throw UsageError("failed writing " + path.string());
}

KnotLabel parse_label(const std::string& name) {
  if (auto label = label_from_name(name)) return *label;
  std::string known;
  for (const auto& entry : catalog()) known += (known.empty() ? "" : ", ") + entry.name;
  throw UsageError("unknown knot type '" + name + "'; catalog: " + known);
}

int cmd_identify(const RunConfig& cfg, const std::string& input) {
  const auto curve = load_xyz(input);
  const auto spectrum = projection_spectrum(curve, cfg.closures, cfg.seed);
  if (cfg.format == "csv") {
    std::cout << "dominant,label,count\n";
    for (const auto& [label, count] : spectrum.counts) {
      std::cout << spectrum.dominant.name() << ',' << label.name() << ',' << count << '\n';
    }
  } else {
    json j = spectrum;
    j["N"] = curve.size();
    std::cout << j.dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_intensity(const RunConfig& cfg, const std::string& input) {
  const auto curve = load_xyz(input);
  const std::size_t n = curve.size();
  IntensityDistribution dist;
  try {
    dist = intensity_distribution(curve, cfg.seed, cfg.intensity());
  } catch (const TrivialCurve&) {
    std::cerr << "warning: curve is unknotted; reporting an all-zero distribution\n";
    dist = IntensityDistribution(std::vector<std::uint32_t>(n, 0), KnotLabel::unknot());
  }

  const fs::path dir = cfg.out_dir;
  std::string csv = "vertex_index,value\n";
  for (std::size_t v = 0; v < n; ++v) csv += std::to_string(v) + ',' + real(dist.value(v)) + '\n';
  write_file(dir / "intensity.csv", csv);

  const auto fp = fingerprint(dist);
  const auto ts = fp.breakpoints();
  const auto fs_ = fp.values();
  std::string fcsv = "t,f\n";
  for (std::size_t k = 0; k < ts.size(); ++k) fcsv += real(ts[k]) + ',' + real(fs_[k]) + '\n';
  write_file(dir / "fingerprint.csv", fcsv);

  json points = json::array();
  for (std::size_t v = 0; v < n; ++v) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(v) / static_cast<double>(n);
    points.push_back({{"vertex_index", v}, {"angle", angle}, {"radius", dist.value(v)}});
  }
  write_file(dir / "radar.json", json{{"N", n}, {"label", dist.label().name()}, {"points", points}}.dump(2) + '\n');

  const auto maxima = local_maxima(dist, default_window(n));
  const json summary{{"N", n},
                     {"label", dist.label().name()},
                     {"density", fp.density()},
                     {"writhe", writhe(curve)},
                     {"acn", acn(curve)},
                     {"window", default_window(n)},
                     {"maxima", maxima}};
  write_file(dir / "density.json", summary.dump(2) + '\n');

  if (cfg.format == "csv") {
    std::cout << "label,density,writhe,acn,maxima\n"
              << dist.label().name() << ',' << real(fp.density()) << ',' << real(summary["writhe"].get<double>())
              << ',' << real(summary["acn"].get<double>()) << ',' << maxima.size() << '\n';
  } else {
    std::cout << summary.dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_population(const RunConfig& cfg, const std::vector<std::size_t>& lengths,
                   const std::vector<std::string>& names, std::size_t count) {
  std::vector<KnotLabel> labels;
  for (const auto& name : names) labels.push_back(parse_label(name));

  std::vector<PolygonSample> samples;
  for (auto n : lengths) {
    for (const auto& label : labels) {
      auto group = sample_polygons(n, label, count, population_seed(cfg.seed, n, label), cfg.sampler(),
                                   cfg.intensity());
      for (auto& s : group) samples.push_back(std::move(s));
    }
  }
  const auto stats = population_stats(samples);
  const json j = stats;
  const fs::path dir = cfg.out_dir;
  write_file(dir / "population.json", j.dump(2) + '\n');
  write_file(dir / "samples.csv", samples_csv(samples));
  if (cfg.format == "csv") {
    std::cout << samples_csv(samples);
  } else {
    std::cout << j.dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_passages(const RunConfig& cfg, std::size_t length, std::size_t moves, std::size_t max_records) {
  PassageSettings settings;
  settings.steps = cfg.steps;
  settings.intensity = cfg.intensity();
  settings.sampler = cfg.sampler();
  settings.max_records = max_records;

  std::vector<PassageRecord> records;
  if (moves > 0) records = run_passage_experiment(length, moves, cfg.seed, settings);

  std::string lines;
  for (const auto& r : records) lines += json(r).dump() + '\n';
  const fs::path dir = cfg.out_dir;
  write_file(dir / "passages.jsonl", lines);
  const auto rows = records.empty() ? std::vector<HistogramRow>{} : passage_histogram(records);
  write_file(dir / "histogram.csv", histogram_csv(rows));

  std::size_t cosmetic = 0;
  for (const auto& r : records) cosmetic += r.cosmetic ? 1 : 0;
  if (cfg.format == "csv") {
    std::cout << histogram_csv(rows);
  } else {
    std::cout << json{{"records", records.size()}, {"cosmetic", cosmetic}, {"noncosmetic", records.size() - cosmetic}}
                     .dump(2)
              << '\n';
  }
  return kExitOk;
}

int cmd_esn_tail(const RunConfig& cfg, const std::vector<std::size_t>& tails) {
  std::string csv = "tail,N,density\n";
  json rows = json::array();
  for (auto t : tails) {
    const auto curve = esn_tail_construction(t);
    const auto dist = intensity_distribution(curve, cfg.seed, cfg.intensity());
    const double d = density(dist);
    csv += std::to_string(t) + ',' + std::to_string(curve.size()) + ',' + real(d) + '\n';
    rows.push_back({{"tail", t}, {"N", curve.size()}, {"density", d}, {"label", dist.label().name()}});
  }
  const fs::path dir = cfg.out_dir;
  write_file(dir / "esn.csv", csv);
  write_file(dir / "esn.json", rows.dump(2) + '\n');
  if (cfg.format == "csv") {
    std::cout << csv;
  } else {
    std::cout << rows.dump(2) << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knot intensity distributions of polygonal curves"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");

  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "Global random seed")->capture_default_str();
  app.add_option("--closures", cfg.closures, "Closures per identification (M)")->capture_default_str();
  app.add_option("--steps", cfg.steps, "Crankshaft sweep resolution")->capture_default_str();
  app.add_option("--radius-factor", cfg.radius_factor, "Closure sphere radius over bounding radius")
      ->capture_default_str();
  app.add_option("--acceptance-fraction", cfg.acceptance_fraction, "Trim acceptance fraction")
      ->capture_default_str();
  app.add_option("--format", cfg.format, "Standard output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--workers", cfg.workers, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--out-dir", cfg.out_dir, "Directory for output files")->capture_default_str();
  app.add_option("--budget-factor", cfg.budget_factor, "Sampling attempts per polygon, times its length")
      ->capture_default_str();

  std::string input;
  auto* identify = app.add_subcommand("identify", "Classify a closed curve");
  identify->add_option("input", input, "XYZ file")->required();
  auto* intensity = app.add_subcommand("intensity", "Intensity distribution, fingerprint and density");
  intensity->add_option("input", input, "XYZ file")->required();

  std::vector<std::size_t> lengths{60};
  std::vector<std::string> labels{"3_1"};
  std::size_t count = 30;
  auto* population = app.add_subcommand("population", "Random polygon population statistics");
  population->add_option("--lengths", lengths, "Polygon lengths")->delimiter(',')->capture_default_str();
  population->add_option("--labels", labels, "Knot types")->delimiter(',')->capture_default_str();
  population->add_option("--count", count, "Samples per length and type")->capture_default_str();

  std::size_t length = 40;
  std::size_t moves = 100;
  std::size_t max_records = 0;
  auto* passages = app.add_subcommand("passages", "Crankshaft strand-passage experiment");
  passages->add_option("--length", length, "Polygon length")->capture_default_str();
  passages->add_option("--moves", moves, "Number of crankshaft moves")->capture_default_str();
  passages->add_option("--max-records", max_records, "Stop after this many records (0 = no limit)")
      ->capture_default_str();

  std::vector<std::size_t> tails{20, 60, 120};
  auto* esn = app.add_subcommand("esn-tail", "Density of a minimal trefoil with a growing tail");
  esn->add_option("--tails", tails, "Tail lengths")->delimiter(',')->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUser;
  }

  try {
    cfg.validate();
    if (identify->parsed()) return cmd_identify(cfg, input);
    if (intensity->parsed()) return cmd_intensity(cfg, input);
    if (population->parsed()) return cmd_population(cfg, lengths, labels, count);
    if (passages->parsed()) return cmd_passages(cfg, length, moves, max_records);
    if (esn->parsed()) return cmd_esn_tail(cfg, tails);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUser;
  } catch (const IndexOutOfRange& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUser;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUser;
  } catch (const SamplingTimeout& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitTimeout;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUser;
  }
  return kExitUser;
}
