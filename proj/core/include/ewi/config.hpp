#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ewi/initial.hpp"
#include "ewi/integrator.hpp"
#include "ewi/potential.hpp"
#include "ewi/strichartz.hpp"

namespace ewi {

enum class ExperimentKind { convergence, strichartz, dynamics, single_run };

struct GridBlock {
  std::vector<Interval> bounds;
  std::vector<int> n;
};

struct PotentialBlock {
  /// Empty spec means V = 0.
  std::optional<PotentialSpec> spec;
  RealizeOptions options;
  /// Load fine-grid samples from a binary field artifact instead of realizing.
  std::optional<std::string> artifact;
};

struct SchemeBlock {
  std::optional<double> tau;
  std::vector<double> tau_list;
  double final_time = 1.0;
  double beta = 0.0;
  double sigma = 1.0;
  FilterMode filter = FilterMode::smooth;
};

struct ReferenceBlock {
  double tau = 0.0;
  bool check = false;
};

struct StrichartzBlock {
  Exponent q{2};
  Exponent r{2};
};

struct DynamicsBlock {
  std::size_t track_stride = 10;
  double approach_radius = 1.0;
  double ground_state_tol = 1e-8;
  /// Empty: use the inverse-power centers of the potential.
  std::vector<Point3> centers;
  std::optional<std::string> ground_state_artifact;
};

struct IoBlock {
  std::string out = "runs";
  std::size_t snapshot_stride = 0;
  std::uint64_t seed = 0;
  int threads = 1;
};

/// Fully resolved description of one run. Every output directory receives
/// this structure back as config.json.
struct RunConfig {
  std::string name;
  ExperimentKind kind = ExperimentKind::single_run;
  GridBlock grid;
  PotentialBlock potential;
  SchemeBlock scheme;
  std::optional<ReferenceBlock> reference;
  InitialSpec initial;
  std::optional<StrichartzBlock> strichartz;
  std::optional<DynamicsBlock> dynamics;
  IoBlock io;
};

std::string to_string(ExperimentKind kind);
std::string to_string(FilterMode mode);

/// Parses and validates a JSON document. Unknown keys raise ConfigError
/// naming the key (with a suggestion when one is close).
RunConfig parse_config(const std::string& json_text);
std::string serialize_config(const RunConfig& config);

const std::vector<std::string>& preset_names();
/// One-line description per preset, same order as preset_names().
std::string preset_summary(const std::string& name);
/// Throws ConfigError listing valid names when unknown.
RunConfig preset(const std::string& name);

/// A file path (if it exists) or a preset name.
RunConfig load_config(const std::string& path_or_preset);

/// Sets the run seed and every random-potential seed.
void override_seed(RunConfig& config, std::uint64_t seed);

/// Grid, potential and scheme objects for a config.
GridPtr build_grid(const RunConfig& config);
std::shared_ptr<const PotentialField> build_potential(const RunConfig& config, const GridPtr& grid);
EwiParams build_params(const RunConfig& config, const GridPtr& grid,
                       std::shared_ptr<const PotentialField> potential);

/// Closest allowed key for a misspelt one, or empty.
std::string suggest_key(const std::string& key, const std::vector<std::string>& allowed);

}  // namespace ewi
