// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qct/arrival.hpp"
#include "qct/ensemble.hpp"
#include "qct/experiment.hpp"
#include "qct/hydrodynamics.hpp"
#include "qct/observables.hpp"
#include "qct/packets.hpp"
#include "qct/phase_space.hpp"

using namespace qct;
namespace fs = std::filesystem;

namespace {

const GaussianPacket packet_a{1.0, -5.0, -2.0, 1.0};
const GaussianPacket packet_b{1.0, -15.0, 2.0, 1.0};
const double detector_x = -30.0;

// Holds both packets at eps = 1 out to t = 20.
const SpatialGrid wide{-150.0, 0.0, 6001};

Ensemble reference(EnsembleKind kind, double eps) {
  return Ensemble(EnsembleSpec{kind, packet_a, packet_b, Boundary::hard_wall}, Regime(eps, 1.0));
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string join(const std::vector<double>& v, const char* f = "%.6g") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(f, v[i]);
  return s;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

struct Outcome {
  bool pass;
  std::string detail;
};

// ---------------------------------------------------------------- 1
std::vector<std::vector<std::string>> read_rows(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

Outcome scaling_equivalence() {
  const fs::path root = fs::temp_directory_path() / "qct_acceptance_scaling";
  fs::remove_all(root);
  double worst = 0.0;
  std::size_t cells = 0;
  bool shape_ok = true;

  for (RunKind run : {RunKind::density, RunKind::trajectories, RunKind::arrival, RunKind::observables,
                      RunKind::wigner}) {
    for (double eps : {0.5, 0.01}) {
      ExperimentConfig c;
      c.run = run;
      c.packet_a = packet_a;
      c.packet_b = packet_b;
      c.grid = {-60.0, 0.0, 1201};
      c.time = {0.0, 10.0, 11};
      c.trajectories.t_end = 2.0;
      c.trajectories.count = 6;
      c.wigner.times = {0.0, 7.0};
      c.wigner.R = {-20.0, -2.0, 19};
      c.wigner.u = {-4.0, 4.0, 33};
      c.wigner.r_half_width = 40.0;
      c.wigner.r_points = 3201;

      ExperimentConfig scaled_eps = c, scaled_hbar = c;
      scaled_eps.epsilons = {eps};
      scaled_eps.hbar = 1.0;
      scaled_eps.output_dir = (root / "eps").string();
      scaled_hbar.epsilons = {1.0};
      scaled_hbar.hbar = std::sqrt(eps);
      scaled_hbar.output_dir = (root / "hbar").string();

      const RunManifest m1 = run_experiment(scaled_eps);
      const RunManifest m2 = run_experiment(scaled_hbar);
      if (m1.files.size() != m2.files.size()) shape_ok = false;
      for (std::size_t f = 0; f < std::min(m1.files.size(), m2.files.size()); ++f) {
        const auto r1 = read_rows(m1.output_dir / m1.files[f]);
        const auto r2 = read_rows(m2.output_dir / m2.files[f]);
        if (r1.size() != r2.size() || r1.empty() || r1[0] != r2[0]) {
          shape_ok = false;
          continue;
        }
        for (std::size_t i = 1; i < r1.size(); ++i) {
          if (r1[i].size() != r2[i].size()) {
            shape_ok = false;
            continue;
          }
          for (std::size_t j = 0; j < r1[i].size(); ++j) {
            if (r1[0][j] == "epsilon[1]") continue;
            char* end1 = nullptr;
            char* end2 = nullptr;
            const double a = std::strtod(r1[i][j].c_str(), &end1);
            const double b = std::strtod(r2[i][j].c_str(), &end2);
            if (*end1 != '\0' || *end2 != '\0') {
              if (r1[i][j] != r2[i][j]) shape_ok = false;
              continue;
            }
            const double scale = std::max(std::abs(a), std::abs(b));
            if (scale > 0.0) worst = std::max(worst, std::abs(a - b) / scale);
            ++cells;
          }
        }
      }
      fs::remove_all(root);
    }
  }
  return {shape_ok && worst <= 1e-12,
          std::to_string(cells) + " exported values, max relative difference " + fmt("%.3g", worst)};
}

// ---------------------------------------------------------------- 2
Outcome conservation() {
  double trace_drift = 0.0, purity_drift = 0.0;
  for (double eps : {1.0, 0.01}) {
    for (EnsembleKind kind : {EnsembleKind::pure, EnsembleKind::mixed}) {
      const Ensemble e = reference(kind, eps);
      const double p0 = purity(e, 0.0, wide);
      for (int k = 0; k <= 20; ++k) {
        const double t = k;
        trace_drift = std::max(trace_drift, std::abs(trace(e, t, wide) - 1.0));
        purity_drift = std::max(purity_drift, std::abs(purity(e, t, wide) - p0));
      }
    }
  }
  return {trace_drift < 1e-6 && purity_drift < 1e-4,
          "max |tr - 1| = " + fmt("%.3g", trace_drift) + ", max |purity(t) - purity(0)| = " + fmt("%.3g", purity_drift)};
}

// ---------------------------------------------------------------- 3
Outcome dressing_oracle() {
  const Regime regime(1.0, 1.0);
  const GaussianPacket p = packet_a;
  const Ensemble e(single_packet(p, Boundary::free), regime);
  const std::vector<double> seeds = uniform_seeds(p.x0 - 2.0 * p.sigma0, p.x0 + 2.0 * p.sigma0, 10);
  double worst = 0.0;
  bool complete = true;
  for (double seed : seeds) {
    const Trajectory traj = integrate_trajectory(e, seed, 5.0);
    complete = complete && traj.status == TrajectoryStatus::completed;
    for (const TrajectorySample& s : traj.samples) {
      const double oracle = packet_center(p, s.t) + (seed - p.x0) * std::abs(complex_width(p, regime, s.t)) / p.sigma0;
      worst = std::max(worst, std::abs(s.x - oracle) / std::abs(oracle));
    }
  }
  return {complete && worst < 1e-3, "10 seeds, max relative deviation " + fmt("%.3g", worst)};
}

// ---------------------------------------------------------------- 4
Outcome non_crossing() {
  std::string detail;
  bool pass = true;
  for (double eps : {1.0, 0.01}) {
    const Ensemble e = reference(EnsembleKind::mixed, eps);
    const std::vector<double> seeds = uniform_seeds(-17.0, -3.0, 20);
    const std::vector<Trajectory> fan = trajectory_fan(e, seeds, 15.0);
    std::size_t stalled = 0, violations = 0, steps = fan.front().samples.size();
    for (const Trajectory& t : fan) {
      stalled += t.status != TrajectoryStatus::completed;
      steps = std::min(steps, t.samples.size());
    }
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < steps; ++i) {
      for (std::size_t k = 1; k < fan.size(); ++k) {
        const double d = fan[k].samples[i].x - fan[k - 1].samples[i].x;
        gap = std::min(gap, d);
        violations += !(d > 0.0);
      }
    }
    pass = pass && stalled == 0 && violations == 0;
    detail += (detail.empty() ? "" : "; ") + std::string("eps=") + fmt("%g", eps) + ": " + std::to_string(steps) +
              " steps, " + std::to_string(violations) + " order violations, " + std::to_string(stalled) +
              " stalled, min gap " + fmt("%.3g", gap);
  }
  return {pass, detail};
}

// ---------------------------------------------------------------- 5
Outcome ehrenfest() {
  const Ensemble e = reference(EnsembleKind::mixed, 1.0);
  double v = 0.0, f = 0.0;
  for (double t : {1.0, 5.0, 9.0}) {
    const EhrenfestResidual r = ehrenfest_residual(e, t, wide);
    v = std::max(v, std::abs(r.velocity));
    f = std::max(f, std::abs(r.force));
  }
  return {v < 1e-4 && f < 1e-3,
          "max |d<x>/dt - <p>/m| = " + fmt("%.3g", v) + ", max |d<p>/dt - f_nc| = " + fmt("%.3g", f)};
}

// ---------------------------------------------------------------- 6
Outcome heisenberg() {
  double worst = std::numeric_limits<double>::infinity();
  for (double eps : {1.0, 0.5, 0.01}) {
    for (EnsembleKind kind : {EnsembleKind::pure, EnsembleKind::mixed}) {
      const Ensemble e = reference(kind, eps);
      for (int k = 0; k <= 200; ++k) {
        const HeisenbergCheck h = heisenberg_check(observe(e, 0.1 * k, wide), e.regime());
        worst = std::min(worst, h.margin);
      }
    }
  }
  return {worst >= -1e-9, "min (sd_x sd_p - sqrt(eps)/2) over 201 times, 3 eps, 2 kinds = " + fmt("%.3g", worst)};
}

// ---------------------------------------------------------------- 7
Outcome arrival_monotonicity() {
  bool pass = true;
  std::string detail;
  double worst_norm = 0.0;
  for (EnsembleKind kind : {EnsembleKind::pure, EnsembleKind::mixed}) {
    std::vector<double> means, sds;
    for (double eps : {1.0, 0.1, 0.01}) {
      const ArrivalStatistics s = arrival_distribution(reference(kind, eps), detector_x, default_arrival_window());
      means.push_back(s.mean_t);
      sds.push_back(s.sd_t);
      worst_norm = std::max(worst_norm, std::abs(integrate_uniform(s.pdf, s.t_grid[1] - s.t_grid[0]) - 1.0));
    }
    pass = pass && strictly_decreasing(means) && strictly_decreasing(sds);
    detail += std::string(kind == EnsembleKind::pure ? "pure" : "; mixed") + " mean_t " + join(means, "%.4f") +
              ", sd_t " + join(sds, "%.4f");
  }
  pass = pass && worst_norm < 1e-6;
  return {pass, detail + "; max |norm - 1| = " + fmt("%.3g", worst_norm)};
}

// ---------------------------------------------------------------- 8
Outcome collision_signature() {
  bool pass = true;
  std::string detail;
  for (EnsembleKind kind : {EnsembleKind::pure, EnsembleKind::mixed}) {
    const Ensemble e = reference(kind, 0.01);
    double best = -1.0, best_t = 0.0;
    for (int k = 0; k <= 2000; ++k) {
      const double t = 0.01 * k;
      const double f = std::abs(effective_force(e, t));
      if (f > best) best = f, best_t = t;
    }
    pass = pass && best_t >= 6.5 && best_t <= 8.5;
    detail += std::string(detail.empty() ? "" : "; ") + (kind == EnsembleKind::pure ? "pure" : "mixed") +
              " |f_nc| peaks at t = " + fmt("%.2f", best_t);
  }
  return {pass, detail};
}

// ---------------------------------------------------------------- 9
Outcome wigner_marginals() {
  bool pass = true;
  std::string detail;
  const UniformGrid R{-40.0, 0.0, 81};
  for (EnsembleKind kind : {EnsembleKind::pure, EnsembleKind::mixed}) {
    const Ensemble e = reference(kind, 1.0);
    for (double t : {0.0, 7.0}) {
      // The wall kink gives W a 1/u^2 tail at t = 7; the momentum cutoff has to be generous.
      const double U = t == 0.0 ? 16.0 : 96.0;
      const double du = 0.04;
      const UniformGrid u{-U, U, 2 * static_cast<std::size_t>(std::lround(U / du)) + 1};
      const auto n_r = 2 * static_cast<std::size_t>(std::ceil(80.0 * U / 0.96)) + 1;
      const WignerField f = wigner_transform(e, t, R, u, {80.0, n_r});
      const std::vector<double> m = wigner_position_marginal(f);
      double peak = 0.0, worst = 0.0;
      for (std::size_t i = 0; i < m.size(); ++i) {
        const double rho = e.position_density(f.R_grid[i], t);
        peak = std::max(peak, rho);
        worst = std::max(worst, std::abs(m[i] - rho));
      }
      pass = pass && worst < 1e-4 * peak;
      detail += std::string(detail.empty() ? "" : "; ") + (kind == EnsembleKind::pure ? "pure" : "mixed") + " t=" +
                fmt("%g", t) + " marginal err/peak " + fmt("%.2e", worst / peak);
    }
  }

  const UniformGrid R0{-16.0, -4.0, 49}, u0{-4.0, 4.0, 161};
  const WignerField wp = wigner_transform(reference(EnsembleKind::pure, 1.0), 0.0, R0, u0, {24.0, 2401});
  const WignerField wm = wigner_transform(reference(EnsembleKind::mixed, 1.0), 0.0, R0, u0, {24.0, 2401});
  const double ridge_pure = wigner_ridge_amplitude(wp, -10.0);
  const double ridge_mixed = wigner_ridge_amplitude(wm, -10.0);
  const double ratio = ridge_pure / ridge_mixed;
  pass = pass && ratio > 10.0;
  return {pass, detail + "; ridge amplitude pure/mixed at R=-10: " + fmt("%.3g", ratio)};
}

// ---------------------------------------------------------------- 10
Outcome fringe_washing() {
  bool pass = true;
  std::string detail;
  for (EnsembleKind kind : {EnsembleKind::pure, EnsembleKind::mixed}) {
    std::vector<double> v;
    for (double eps : {1.0, 0.5, 0.1, 0.01}) v.push_back(fringe_visibility(reference(kind, eps), 7.0, -10.0, 0.0));
    pass = pass && strictly_decreasing(v);
    detail += std::string(detail.empty() ? "" : "; ") + (kind == EnsembleKind::pure ? "pure" : "mixed") +
              " visibility at t=7 for eps 1, 0.5, 0.1, 0.01: " + join(v, "%.4f");
  }
  return {pass, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"epsilon-scaling equivalence", scaling_equivalence},
      {"norm and purity conservation", conservation},
      {"free-packet trajectory oracle", dressing_oracle},
      {"trajectory non-crossing", non_crossing},
      {"Ehrenfest relations", ehrenfest},
      {"scaled Heisenberg bound", heisenberg},
      {"arrival-time monotonicity", arrival_monotonicity},
      {"collision-time force signature", collision_signature},
      {"Wigner marginals and ridge", wigner_marginals},
      {"fringe washing", fringe_washing},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("[%s] %2zu %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
