#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qct/config.hpp"

namespace qct {

/// Outcome of `run_experiment`. CSV bodies are deterministic; only the
/// manifest's wall-clock entry varies between runs.
struct RunManifest {
  std::filesystem::path output_dir;
  std::vector<std::string> files;  ///< CSV files, relative to output_dir, in write order
  std::string manifest_file = "manifest.json";
};

/// Formats a double with 17 significant digits.
std::string format_number(double value);

/// Shortest round-trip text of epsilon, used in file names.
std::string epsilon_tag(double epsilon);

/// Runs `config.run` for every epsilon and writes one CSV per (run kind, epsilon)
/// plus a manifest. Files already written are removed if the run fails.
RunManifest run_experiment(const ExperimentConfig& config);

}  // namespace qct
