// qctl: run one hard-wall scattering experiment from a JSON config.
//
//   qctl <density|trajectories|arrival|observables|wigner> --config <path>
//        [--epsilon <v>] [--out <dir>]
//
// Exit codes: 0 success, 2 config error, 3 numerical guard, 1 anything else.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qct/config.hpp"
#include "qct/errors.hpp"
#include "qct/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Scaled quantum-to-classical hard-wall scattering experiments"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::optional<double> epsilon;
  std::optional<std::string> out_dir;

  for (const char* name : {"density", "trajectories", "arrival", "observables", "wigner"}) {
    CLI::App* sub = app.add_subcommand(name, std::string("run the ") + name + " experiment");
    sub->add_option("--config", config_path, "JSON experiment configuration")->required();
    sub->add_option("--epsilon", epsilon, "override the epsilon list with one value");
    sub->add_option("--out", out_dir, "output directory (overrides output_dir)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    qct::ExperimentConfig config = qct::load_config(config_path);
    config.run = *qct::parse_run_kind(app.get_subcommands().front()->get_name());
    if (epsilon) config.epsilons = {*epsilon};
    if (out_dir) config.output_dir = *out_dir;
    qct::validate(config);

    const qct::RunManifest manifest = qct::run_experiment(config);
    for (const std::string& f : manifest.files) std::cout << (manifest.output_dir / f).string() << '\n';
    std::cout << (manifest.output_dir / manifest.manifest_file).string() << '\n';
    return 0;
  } catch (const qct::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const qct::NumericalGuardError& e) {
    std::cerr << "numerical guard: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
