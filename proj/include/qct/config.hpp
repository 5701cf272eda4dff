#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qct/ensemble.hpp"
#include "qct/quadrature.hpp"

namespace qct {

enum class RunKind { density, trajectories, arrival, observables, wigner };
enum class SeedMode { uniform, born };

std::string_view to_string(RunKind kind);
std::string_view to_string(EnsembleKind kind);
std::optional<RunKind> parse_run_kind(std::string_view text);

struct TrajectoryConfig {
  double dt = 1e-3;
  double t_end = 15.0;
  SeedMode seeding = SeedMode::uniform;
  std::size_t count = 20;
  /// Uniform seeding interval; defaults to the packets' [min x0 - 2 sigma0, max x0 + 2 sigma0].
  std::optional<double> lo;
  std::optional<double> hi;
  /// Explicit seeds override `seeding` when non-empty.
  std::vector<double> positions;
  /// Write every n-th integration step (the final sample is always written).
  std::size_t record_every = 10;

  friend bool operator==(const TrajectoryConfig&, const TrajectoryConfig&) = default;
};

struct ArrivalConfig {
  double detector_x = -30.0;
  UniformGrid window{0.0, 40.0, 4001};

  friend bool operator==(const ArrivalConfig&, const ArrivalConfig&) = default;
};

struct WignerConfig {
  std::vector<double> times{0.0, 7.0};
  UniformGrid R{-30.0, 0.0, 121};
  UniformGrid u{-6.0, 6.0, 121};
  /// Defaults to 12 sigma0.
  std::optional<double> r_half_width;
  std::size_t r_points = 2401;

  friend bool operator==(const WignerConfig&, const WignerConfig&) = default;
};

struct ExperimentConfig {
  RunKind run = RunKind::density;
  std::vector<double> epsilons{1.0};
  double hbar = 1.0;
  GaussianPacket packet_a;
  GaussianPacket packet_b;
  std::vector<EnsembleKind> kinds{EnsembleKind::pure, EnsembleKind::mixed};
  Boundary boundary = Boundary::hard_wall;
  SpatialGrid grid;
  UniformGrid time{0.0, 20.0, 41};
  double dt_fd = 1e-3;
  TrajectoryConfig trajectories;
  ArrivalConfig arrival;
  WignerConfig wigner;
  std::string output_dir = "out";

  EnsembleSpec ensemble(EnsembleKind kind) const {
    return {kind, packet_a, packet_b, boundary};
  }

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses and validates a JSON configuration document. Unknown keys and
/// invariant violations throw ConfigError naming the field path.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// Re-validates an assembled config (e.g. after CLI overrides).
void validate(const ExperimentConfig& config);

/// JSON document with every field explicit; parse_config inverts it.
std::string serialize_config(const ExperimentConfig& config);

}  // namespace qct
