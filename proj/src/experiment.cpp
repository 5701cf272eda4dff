#include "qct/experiment.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qct/arrival.hpp"
#include "qct/errors.hpp"
#include "qct/hydrodynamics.hpp"
#include "qct/observables.hpp"
#include "qct/phase_space.hpp"

namespace qct {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string epsilon_tag(double epsilon) {
  char buffer[40];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, epsilon);
  return std::string(buffer, result.ptr);
}

namespace {

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::vector<std::string>& header) : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
  }

  CsvWriter& text(std::string_view v) { return field(std::string(v)); }
  CsvWriter& num(double v) { return field(format_number(v)); }
  CsvWriter& integer(std::size_t v) { return field(std::to_string(v)); }
  void end_row() {
    out_ << '\n';
    first_ = true;
  }
  void close() {
    out_.close();
    if (!out_) throw std::runtime_error("failed writing CSV output");
  }

 private:
  CsvWriter& field(const std::string& v) {
    if (!first_) out_ << ',';
    out_ << v;
    first_ = false;
    return *this;
  }

  std::ofstream out_;
  bool first_ = true;
};

struct RunContext {
  const ExperimentConfig& config;
  fs::path dir;
  std::vector<std::string>& written;
  json& diagnostics;

  fs::path claim(const std::string& name) {
    written.push_back(name);
    return dir / name;
  }
};

std::vector<double> trajectory_seeds(const ExperimentConfig& c, const Ensemble& ensemble) {
  const TrajectoryConfig& tr = c.trajectories;
  if (!tr.positions.empty()) return tr.positions;
  if (tr.seeding == SeedMode::born) return born_seeds(ensemble, c.grid, tr.count);
  const double lo = tr.lo.value_or(std::min(c.packet_a.x0 - 2.0 * c.packet_a.sigma0,
                                            c.packet_b.x0 - 2.0 * c.packet_b.sigma0));
  const double hi = tr.hi.value_or(std::max(c.packet_a.x0 + 2.0 * c.packet_a.sigma0,
                                            c.packet_b.x0 + 2.0 * c.packet_b.sigma0));
  return uniform_seeds(lo, hi, tr.count);
}

json norm_diagnostics(const ExperimentConfig& c, const Ensemble& ensemble) {
  double drift = 0.0;
  for (double t : c.time.nodes()) drift = std::max(drift, std::abs(trace(ensemble, t, c.grid) - 1.0));
  return {{"norm_constant", ensemble.norm_constant()},
          {"raw_initial_trace", ensemble.raw_initial_trace()},
          {"max_trace_drift", drift}};
}

void run_density(RunContext& ctx, const Regime& regime, const std::vector<Ensemble>& ensembles) {
  std::vector<std::string> header{"t[time]", "x[length]"};
  for (const Ensemble& e : ensembles) header.push_back("density_" + std::string(to_string(e.kind())) + "[1/length]");
  CsvWriter csv(ctx.claim("density_eps" + epsilon_tag(regime.epsilon()) + ".csv"), header);
  const std::vector<double> xs = ctx.config.grid.nodes();
  for (double t : ctx.config.time.nodes()) {
    for (double x : xs) {
      csv.num(t).num(x);
      for (const Ensemble& e : ensembles) csv.num(e.position_density(x, t));
      csv.end_row();
    }
  }
  csv.close();
}

void run_trajectories(RunContext& ctx, const Regime& regime, const std::vector<Ensemble>& ensembles,
                      json& diag) {
  const TrajectoryConfig& tr = ctx.config.trajectories;
  CsvWriter csv(ctx.claim("trajectories_eps" + epsilon_tag(regime.epsilon()) + ".csv"),
                {"kind", "seed", "x_initial[length]", "t[time]", "x[length]"});
  for (const Ensemble& e : ensembles) {
    const std::vector<double> seeds = trajectory_seeds(ctx.config, e);
    const std::vector<Trajectory> fan = trajectory_fan(e, seeds, tr.t_end, tr.dt);
    json status = json::array();
    for (std::size_t s = 0; s < fan.size(); ++s) {
      const Trajectory& traj = fan[s];
      for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        if (i % tr.record_every != 0 && i + 1 != traj.samples.size()) continue;
        csv.text(to_string(e.kind())).integer(s).num(traj.initial_position)
            .num(traj.samples[i].t).num(traj.samples[i].x);
        csv.end_row();
      }
      status.push_back(traj.status == TrajectoryStatus::completed ? "completed" : "stalled-low-density");
    }
    diag[std::string(to_string(e.kind()))]["trajectory_status"] = status;
  }
  csv.close();
}

void run_arrival(RunContext& ctx, const Regime& regime, const std::vector<Ensemble>& ensembles,
                 CsvWriter& summary, json& diag) {
  const ArrivalConfig& ac = ctx.config.arrival;
  std::vector<ArrivalStatistics> stats;
  for (const Ensemble& e : ensembles) stats.push_back(arrival_distribution(e, ac.detector_x, ac.window));

  std::vector<std::string> header{"t[time]"};
  for (const Ensemble& e : ensembles) header.push_back("pdf_" + std::string(to_string(e.kind())) + "[1/time]");
  CsvWriter csv(ctx.claim("arrival_eps" + epsilon_tag(regime.epsilon()) + ".csv"), header);
  for (std::size_t i = 0; i < ac.window.n; ++i) {
    csv.num(stats.front().t_grid[i]);
    for (const ArrivalStatistics& s : stats) csv.num(s.pdf[i]);
    csv.end_row();
  }
  csv.close();

  for (std::size_t k = 0; k < ensembles.size(); ++k) {
    summary.num(regime.epsilon()).num(regime.hbar_tilde()).text(to_string(ensembles[k].kind()))
        .num(stats[k].mean_t).num(stats[k].sd_t);
    summary.end_row();
    diag[std::string(to_string(ensembles[k].kind()))]["arrival_tail_ratio"] = stats[k].tail_ratio;
  }
}

void run_observables(RunContext& ctx, const Regime& regime, const std::vector<Ensemble>& ensembles) {
  CsvWriter csv(ctx.claim("observables_eps" + epsilon_tag(regime.epsilon()) + ".csv"),
                {"kind", "t[time]", "mean_x[length]", "sd_x[length]", "mean_p[momentum]",
                 "sd_p[momentum]", "uncertainty_product[action]", "heisenberg_margin[action]",
                 "f_nc[force]", "trace[1]", "purity[1]"});
  for (const Ensemble& e : ensembles) {
    for (double t : ctx.config.time.nodes()) {
      const ObservableRecord r = observe(e, t, ctx.config.grid);
      const HeisenbergCheck h = heisenberg_check(r, regime);
      if (!h.satisfied) {
        throw NumericalGuardError("uncertainty product below hbar_tilde/2 at t=" + format_number(t));
      }
      csv.text(to_string(e.kind())).num(t).num(r.mean_x).num(r.sd_x).num(r.mean_p).num(r.sd_p)
          .num(r.uncertainty_product).num(h.margin).num(r.f_nc)
          .num(trace(e, t, ctx.config.grid)).num(purity(e, t, ctx.config.grid));
      csv.end_row();
    }
  }
  csv.close();
}

void run_wigner(RunContext& ctx, const Regime& regime, const std::vector<Ensemble>& ensembles,
                json& diag) {
  const WignerConfig& wc = ctx.config.wigner;
  CsvWriter csv(ctx.claim("wigner_eps" + epsilon_tag(regime.epsilon()) + ".csv"),
                {"kind", "t[time]", "R[length]", "u[momentum]", "W[1/action]"});
  for (const Ensemble& e : ensembles) {
    json norms = json::array();
    for (double t : wc.times) {
      const WignerField field = wigner_transform(e, t, wc.R, wc.u, {wc.r_half_width, wc.r_points});
      for (std::size_t i = 0; i < field.R_grid.size(); ++i) {
        for (std::size_t j = 0; j < field.u_grid.size(); ++j) {
          csv.text(to_string(e.kind())).num(t).num(field.R_grid[i]).num(field.u_grid[j]).num(field.at(i, j));
          csv.end_row();
        }
      }
      norms.push_back(wigner_norm(field));
    }
    diag[std::string(to_string(e.kind()))]["wigner_norm"] = norms;
  }
  csv.close();
}

}  // namespace

RunManifest run_experiment(const ExperimentConfig& config) {
  validate(config);
  const auto started = std::chrono::steady_clock::now();

  RunManifest manifest;
  manifest.output_dir = config.output_dir;
  fs::create_directories(manifest.output_dir);
  json diagnostics = json::object();
  RunContext ctx{config, manifest.output_dir, manifest.files, diagnostics};

  try {
    std::optional<CsvWriter> summary;
    if (config.run == RunKind::arrival) {
      summary.emplace(ctx.claim("arrival_summary.csv"),
                      std::vector<std::string>{"epsilon[1]", "hbar_tilde[action]", "kind",
                                               "mean_t[time]", "sd_t[time]"});
    }
    for (double epsilon : config.epsilons) {
      const Regime regime(epsilon, config.hbar);
      std::vector<Ensemble> ensembles;
      for (EnsembleKind k : config.kinds) ensembles.emplace_back(config.ensemble(k), regime);

      json& diag = diagnostics[epsilon_tag(epsilon)];
      for (const Ensemble& e : ensembles) diag[std::string(to_string(e.kind()))] = norm_diagnostics(config, e);

      switch (config.run) {
        case RunKind::density: run_density(ctx, regime, ensembles); break;
        case RunKind::trajectories: run_trajectories(ctx, regime, ensembles, diag); break;
        case RunKind::arrival: run_arrival(ctx, regime, ensembles, *summary, diag); break;
        case RunKind::observables: run_observables(ctx, regime, ensembles); break;
        case RunKind::wigner: run_wigner(ctx, regime, ensembles, diag); break;
      }
    }
    if (summary) summary->close();

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    const json doc = {{"config", json::parse(serialize_config(config))},
                      {"files", manifest.files},
                      {"diagnostics", diagnostics},
                      {"wall_clock_seconds", seconds}};
    std::ofstream out(manifest.output_dir / manifest.manifest_file, std::ios::binary);
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing manifest");
  } catch (...) {
    std::error_code ignored;
    for (const std::string& name : manifest.files) fs::remove(manifest.output_dir / name, ignored);
    fs::remove(manifest.output_dir / manifest.manifest_file, ignored);
    throw;
  }
  return manifest;
}

}  // namespace qct
