#include "qct/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qct/errors.hpp"

namespace qct {

using nlohmann::json;

std::string_view to_string(RunKind kind) {
  switch (kind) {
    case RunKind::density: return "density";
    case RunKind::trajectories: return "trajectories";
    case RunKind::arrival: return "arrival";
    case RunKind::observables: return "observables";
    case RunKind::wigner: return "wigner";
  }
  return "density";
}

std::string_view to_string(EnsembleKind kind) {
  return kind == EnsembleKind::pure ? "pure" : "mixed";
}

std::optional<RunKind> parse_run_kind(std::string_view text) {
  for (RunKind k : {RunKind::density, RunKind::trajectories, RunKind::arrival,
                    RunKind::observables, RunKind::wigner}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

namespace {

std::string child(const std::string& path, std::string_view key) {
  return path + "/" + std::string(key);
}

void reject_unknown(const json& object, const std::string& path,
                    std::initializer_list<std::string_view> allowed) {
  if (!object.is_object()) throw ConfigError(path.empty() ? "/" : path, "expected an object");
  for (const auto& [key, value] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(child(path, key), "unknown key");
    }
  }
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "expected a finite number");
  return v;
}

std::size_t count(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ConfigError(path, "expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

void read_number(const json& obj, std::string_view key, const std::string& path, double& out) {
  if (auto it = obj.find(std::string(key)); it != obj.end()) out = number(*it, child(path, key));
}

void read_count(const json& obj, std::string_view key, const std::string& path, std::size_t& out) {
  if (auto it = obj.find(std::string(key)); it != obj.end()) out = count(*it, child(path, key));
}

GaussianPacket read_packet(const json& j, const std::string& path) {
  reject_unknown(j, path, {"sigma0", "x0", "p0", "mass"});
  GaussianPacket p;
  for (std::string_view key : {"sigma0", "x0", "p0"}) {
    if (!j.contains(std::string(key))) throw ConfigError(child(path, key), "required");
  }
  read_number(j, "sigma0", path, p.sigma0);
  read_number(j, "x0", path, p.x0);
  read_number(j, "p0", path, p.p0);
  read_number(j, "mass", path, p.mass);
  try {
    validate(p);
  } catch (const DomainError& e) {
    throw ConfigError(path, e.what());
  }
  return p;
}

UniformGrid read_grid(const json& j, const std::string& path, UniformGrid grid) {
  reject_unknown(j, path, {"lo", "hi", "n"});
  read_number(j, "lo", path, grid.lo);
  read_number(j, "hi", path, grid.hi);
  read_count(j, "n", path, grid.n);
  return grid;
}

void check_grid(const UniformGrid& g, const std::string& path, std::size_t min_n = 3) {
  if (!(g.lo < g.hi)) throw ConfigError(path, "needs lo < hi");
  if (g.n < min_n) throw ConfigError(child(path, "n"), "needs at least " + std::to_string(min_n) + " nodes");
}

json grid_json(const UniformGrid& g) { return {{"lo", g.lo}, {"hi", g.hi}, {"n", g.n}}; }

json packet_json(const GaussianPacket& p) {
  return {{"sigma0", p.sigma0}, {"x0", p.x0}, {"p0", p.p0}, {"mass", p.mass}};
}

}  // namespace

void validate(const ExperimentConfig& c) {
  if (c.epsilons.empty()) throw ConfigError("/epsilons", "needs at least one value");
  std::set<double> seen;
  for (std::size_t i = 0; i < c.epsilons.size(); ++i) {
    const std::string path = "/epsilons/" + std::to_string(i);
    try {
      Regime(c.epsilons[i], c.hbar);
    } catch (const DomainError& e) {
      throw ConfigError(path, e.what());
    }
    if (!seen.insert(c.epsilons[i]).second) throw ConfigError(path, "duplicate epsilon");
  }
  try {
    validate(c.packet_a);
  } catch (const DomainError& e) {
    throw ConfigError("/packets/0", e.what());
  }
  try {
    validate(c.packet_b);
  } catch (const DomainError& e) {
    throw ConfigError("/packets/1", e.what());
  }
  if (c.packet_a.mass != c.packet_b.mass) throw ConfigError("/packets/1/mass", "packets must share the mass");
  if (c.kinds.empty()) throw ConfigError("/kinds", "needs at least one ensemble kind");

  if (!(c.grid.x_max == 0.0)) throw ConfigError("/grid/x_max", "the grid must end at the wall");
  if (!(c.grid.x_min < 0.0)) throw ConfigError("/grid/x_min", "must be negative");
  if (c.grid.n_points < 64) throw ConfigError("/grid/n_points", "needs at least 64 points");
  for (const GaussianPacket* p : {&c.packet_a, &c.packet_b}) {
    const double tail = 0.5 * std::erfc((p->x0 - c.grid.x_min) / (std::sqrt(2.0) * p->sigma0));
    if (!(tail < 1e-10)) {
      throw ConfigError("/grid/x_min", "initial packet tail beyond x_min is " + std::to_string(tail));
    }
  }

  check_grid(c.time, "/time");
  if (c.time.lo < 0.0) throw ConfigError("/time/lo", "must be non-negative");
  if (!(c.dt_fd > 0.0)) throw ConfigError("/observables/dt_fd", "must be positive");

  const TrajectoryConfig& tr = c.trajectories;
  if (!(tr.dt > 0.0)) throw ConfigError("/trajectories/dt", "must be positive");
  if (!(tr.t_end > 0.0)) throw ConfigError("/trajectories/t_end", "must be positive");
  if (tr.record_every == 0) throw ConfigError("/trajectories/record_every", "must be positive");
  if (tr.positions.empty() && tr.count == 0) throw ConfigError("/trajectories/count", "must be positive");
  if (tr.lo && tr.hi && !(*tr.lo < *tr.hi)) throw ConfigError("/trajectories/lo", "needs lo < hi");
  if (tr.hi && !(*tr.hi < 0.0)) throw ConfigError("/trajectories/hi", "seeds must lie at x < 0");
  for (std::size_t i = 0; i < tr.positions.size(); ++i) {
    const std::string path = "/trajectories/positions/" + std::to_string(i);
    if (!(tr.positions[i] < 0.0)) throw ConfigError(path, "seeds must lie at x < 0");
    if (i > 0 && !(tr.positions[i - 1] < tr.positions[i])) throw ConfigError(path, "seeds must be strictly increasing");
  }

  if (!(c.arrival.detector_x < 0.0)) throw ConfigError("/arrival/detector_x", "must be negative");
  check_grid(c.arrival.window, "/arrival/window");
  if (c.arrival.window.lo < 0.0) throw ConfigError("/arrival/window/lo", "must be non-negative");

  const WignerConfig& w = c.wigner;
  if (w.times.empty()) throw ConfigError("/wigner/times", "needs at least one time");
  for (std::size_t i = 0; i < w.times.size(); ++i) {
    if (!(w.times[i] >= 0.0)) throw ConfigError("/wigner/times/" + std::to_string(i), "must be non-negative");
  }
  check_grid(w.R, "/wigner/R");
  check_grid(w.u, "/wigner/u");
  if (w.r_half_width && !(*w.r_half_width > 0.0)) throw ConfigError("/wigner/r_half_width", "must be positive");
  if (w.r_points < 3) throw ConfigError("/wigner/r_points", "needs at least 3 points");

  if (c.output_dir.empty()) throw ConfigError("/output_dir", "must not be empty");
}

ExperimentConfig parse_config(std::string_view document) {
  json root;
  try {
    root = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ConfigError("/", std::string("malformed JSON: ") + e.what());
  }
  reject_unknown(root, "", {"run", "epsilons", "hbar", "packets", "kinds", "boundary", "grid",
                            "time", "observables", "trajectories", "arrival", "wigner",
                            "output_dir"});
  ExperimentConfig c;

  if (auto it = root.find("run"); it != root.end()) {
    const auto kind = parse_run_kind(text(*it, "/run"));
    if (!kind) throw ConfigError("/run", "unknown run kind");
    c.run = *kind;
  }
  if (auto it = root.find("epsilons"); it != root.end()) {
    if (!it->is_array()) throw ConfigError("/epsilons", "expected an array");
    c.epsilons.clear();
    for (std::size_t i = 0; i < it->size(); ++i) {
      c.epsilons.push_back(number((*it)[i], "/epsilons/" + std::to_string(i)));
    }
  }
  read_number(root, "hbar", "", c.hbar);

  const auto packets = root.find("packets");
  if (packets == root.end()) throw ConfigError("/packets", "required");
  if (!packets->is_array() || packets->size() != 2) throw ConfigError("/packets", "expected two packets");
  c.packet_a = read_packet((*packets)[0], "/packets/0");
  c.packet_b = read_packet((*packets)[1], "/packets/1");

  if (auto it = root.find("kinds"); it != root.end()) {
    if (!it->is_array()) throw ConfigError("/kinds", "expected an array");
    c.kinds.clear();
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string path = "/kinds/" + std::to_string(i);
      const std::string k = text((*it)[i], path);
      if (k == "pure") c.kinds.push_back(EnsembleKind::pure);
      else if (k == "mixed") c.kinds.push_back(EnsembleKind::mixed);
      else throw ConfigError(path, "expected \"pure\" or \"mixed\"");
      if (std::count(c.kinds.begin(), c.kinds.end(), c.kinds.back()) > 1) throw ConfigError(path, "duplicate kind");
    }
  }
  if (auto it = root.find("boundary"); it != root.end()) {
    const std::string b = text(*it, "/boundary");
    if (b == "hard_wall") c.boundary = Boundary::hard_wall;
    else if (b == "free") c.boundary = Boundary::free;
    else throw ConfigError("/boundary", "expected \"hard_wall\" or \"free\"");
  }
  if (auto it = root.find("grid"); it != root.end()) {
    reject_unknown(*it, "/grid", {"x_min", "x_max", "n_points"});
    read_number(*it, "x_min", "/grid", c.grid.x_min);
    read_number(*it, "x_max", "/grid", c.grid.x_max);
    read_count(*it, "n_points", "/grid", c.grid.n_points);
  }
  if (auto it = root.find("time"); it != root.end()) c.time = read_grid(*it, "/time", c.time);
  if (auto it = root.find("observables"); it != root.end()) {
    reject_unknown(*it, "/observables", {"dt_fd"});
    read_number(*it, "dt_fd", "/observables", c.dt_fd);
  }
  if (auto it = root.find("trajectories"); it != root.end()) {
    const std::string path = "/trajectories";
    reject_unknown(*it, path, {"dt", "t_end", "seeding", "count", "lo", "hi", "positions", "record_every"});
    TrajectoryConfig& tr = c.trajectories;
    read_number(*it, "dt", path, tr.dt);
    read_number(*it, "t_end", path, tr.t_end);
    if (auto s = it->find("seeding"); s != it->end()) {
      const std::string mode = text(*s, path + "/seeding");
      if (mode == "uniform") tr.seeding = SeedMode::uniform;
      else if (mode == "born") tr.seeding = SeedMode::born;
      else throw ConfigError(path + "/seeding", "expected \"uniform\" or \"born\"");
    }
    read_count(*it, "count", path, tr.count);
    if (auto v = it->find("lo"); v != it->end()) tr.lo = number(*v, path + "/lo");
    if (auto v = it->find("hi"); v != it->end()) tr.hi = number(*v, path + "/hi");
    if (auto v = it->find("positions"); v != it->end()) {
      if (!v->is_array()) throw ConfigError(path + "/positions", "expected an array");
      for (std::size_t i = 0; i < v->size(); ++i) {
        tr.positions.push_back(number((*v)[i], path + "/positions/" + std::to_string(i)));
      }
    }
    read_count(*it, "record_every", path, tr.record_every);
  }
  if (auto it = root.find("arrival"); it != root.end()) {
    reject_unknown(*it, "/arrival", {"detector_x", "window"});
    read_number(*it, "detector_x", "/arrival", c.arrival.detector_x);
    if (auto w = it->find("window"); w != it->end()) {
      c.arrival.window = read_grid(*w, "/arrival/window", c.arrival.window);
    }
  }
  if (auto it = root.find("wigner"); it != root.end()) {
    const std::string path = "/wigner";
    reject_unknown(*it, path, {"times", "R", "u", "r_half_width", "r_points"});
    WignerConfig& w = c.wigner;
    if (auto v = it->find("times"); v != it->end()) {
      if (!v->is_array()) throw ConfigError(path + "/times", "expected an array");
      w.times.clear();
      for (std::size_t i = 0; i < v->size(); ++i) w.times.push_back(number((*v)[i], path + "/times/" + std::to_string(i)));
    }
    if (auto v = it->find("R"); v != it->end()) w.R = read_grid(*v, path + "/R", w.R);
    if (auto v = it->find("u"); v != it->end()) w.u = read_grid(*v, path + "/u", w.u);
    if (auto v = it->find("r_half_width"); v != it->end()) w.r_half_width = number(*v, path + "/r_half_width");
    read_count(*it, "r_points", path, w.r_points);
  }
  if (auto it = root.find("output_dir"); it != root.end()) c.output_dir = text(*it, "/output_dir");

  validate(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("/", "cannot open config file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  json kinds = json::array();
  for (EnsembleKind k : c.kinds) kinds.push_back(std::string(to_string(k)));
  json traj = {{"dt", c.trajectories.dt},
               {"t_end", c.trajectories.t_end},
               {"seeding", c.trajectories.seeding == SeedMode::uniform ? "uniform" : "born"},
               {"count", c.trajectories.count},
               {"positions", c.trajectories.positions},
               {"record_every", c.trajectories.record_every}};
  if (c.trajectories.lo) traj["lo"] = *c.trajectories.lo;
  if (c.trajectories.hi) traj["hi"] = *c.trajectories.hi;
  json wigner = {{"times", c.wigner.times},
                 {"R", grid_json(c.wigner.R)},
                 {"u", grid_json(c.wigner.u)},
                 {"r_points", c.wigner.r_points}};
  if (c.wigner.r_half_width) wigner["r_half_width"] = *c.wigner.r_half_width;

  json root = {
      {"run", std::string(to_string(c.run))},
      {"epsilons", c.epsilons},
      {"hbar", c.hbar},
      {"packets", json::array({packet_json(c.packet_a), packet_json(c.packet_b)})},
      {"kinds", kinds},
      {"boundary", c.boundary == Boundary::hard_wall ? "hard_wall" : "free"},
      {"grid", {{"x_min", c.grid.x_min}, {"x_max", c.grid.x_max}, {"n_points", c.grid.n_points}}},
      {"time", grid_json(c.time)},
      {"observables", {{"dt_fd", c.dt_fd}}},
      {"trajectories", traj},
      {"arrival", {{"detector_x", c.arrival.detector_x}, {"window", grid_json(c.arrival.window)}}},
      {"wigner", wigner},
      {"output_dir", c.output_dir},
  };
  return root.dump(2) + "\n";
}

}  // namespace qct
