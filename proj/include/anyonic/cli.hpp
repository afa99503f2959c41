// Copyright 2026 The Anyonic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Batch front-end: flat key=value run configs and the subcommand bodies.
// Each cmd_* writes its report to a stream and returns the process exit code.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "anyonic/analytics.hpp"
#include "anyonic/circuits.hpp"
#include "anyonic/diffusion.hpp"
#include "anyonic/errors.hpp"
#include "anyonic/geometric_gate.hpp"
#include "anyonic/lattice.hpp"
#include "anyonic/pauli.hpp"
#include "anyonic/protocols.hpp"
#include "anyonic/statevector.hpp"
#include "anyonic/tableau.hpp"

namespace anyonic::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kInputError = 2, kContractViolation = 3 };

inline constexpr const char* kSeedEnv = "ANYONIC_SEED";

// ---------------------------------------------------------------------------
// Config.

using Schema = std::vector<std::pair<std::string, std::string>>;  // key, default

inline const Schema& schema_for(const std::string& sub) {
  static const std::map<std::string, Schema> schemas = {
      {"braid",
       {{"lattice", "torus(4)"}, {"program", ""}, {"variant", "none"}, {"t1", "0"}, {"t2", "0"}, {"t3", "0"},
        {"U", "1"}, {"J", "1"}, {"phi_points", "64"}, {"materialize_probe", "false"},
        {"cavity_phase", "false"}, {"seed", "0"}, {"output", "-"}}},
      {"memory",
       {{"lattice", "planar(2)"}, {"theta", "0.7"}, {"axis", "z"}, {"circuit", "x_type"}, {"trials", "20"},
        {"seed", "0"}, {"output", "-"}}},
      {"diffuse",
       {{"lattice", "torus(8)"}, {"xi_h", "1"}, {"tau_c", "10"}, {"dt", "auto"}, {"trials", "50"},
        {"schedules", "0,1,4,10"}, {"particles", "x:0,x:36"}, {"tau_max", "30"}, {"tau_points", "16"},
        {"observable", "amplitude"}, {"seed", "0"}, {"output", "-"}}},
      {"budget",
       {{"g", "1"}, {"kappa", "1e-3"}, {"gamma", "1e-3"}, {"N", "16"}, {"delta_h", "0.1"}, {"J", "1"},
        {"q", "1e-3"}, {"lambda", "6.283185307179586"}, {"epsilon", "1e-5"}, {"t", "1000"},
        {"theta", "1.5707963267948966"}, {"delta", "0.01"}, {"k", "1"}, {"alpha_sq", "1.5707963267948966"},
        {"format", "text"}, {"output", "-"}}},
      {"zd", {{"d", "3"}, {"a", "all"}, {"b", "all"}, {"output", "-"}}},
      {"oracle", {{"lattice", "planar(2)"}, {"programs", "100"}, {"circuits", "50"}, {"seed", "0"}, {"output", "-"}}},
  };
  auto it = schemas.find(sub);
  if (it == schemas.end()) throw ConfigError("unknown subcommand '" + sub + "'");
  return it->second;
}

struct RunConfig {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> entries;  // schema order
  std::string seed_source = "default";

  const std::string& get(const std::string& key) const {
    for (auto& [k, v] : entries) {
      if (k == key) return v;
    }
    throw ConfigError("missing config key '" + key + "'");
  }
  void set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries) {
      if (k == key) {
        v = value;
        return;
      }
    }
    throw ConfigError("unknown config key '" + key + "' for subcommand '" + subcommand + "'");
  }
  bool has(const std::string& key) const {
    for (auto& [k, v] : entries) {
      if (k == key) return true;
    }
    return false;
  }

  double get_double(const std::string& key) const {
    const std::string& s = get(key);
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v)) throw ConfigError("key '" + key + "' needs a number, got '" + s + "'");
    return v;
  }
  long long get_int(const std::string& key) const {
    const std::string& s = get(key);
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw ConfigError("key '" + key + "' needs an integer, got '" + s + "'");
    return v;
  }
  std::uint64_t get_u64(const std::string& key) const {
    const std::string& s = get(key);
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      if (!s.empty() && s[0] == '-') throw std::invalid_argument("negative");
      v = std::stoull(s, &used, 0);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw ConfigError("key '" + key + "' needs an unsigned integer, got '" + s + "'");
    return v;
  }
  bool get_bool(const std::string& key) const {
    const std::string& s = get(key);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ConfigError("key '" + key + "' needs a boolean, got '" + s + "'");
  }
};

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Splits `key=value`; throws ConfigError without '='.
inline std::pair<std::string, std::string> split_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + text + "'");
  std::string key = trim(text.substr(0, eq));
  if (key.empty()) throw ConfigError("empty key in '" + text + "'");
  return {key, trim(text.substr(eq + 1))};
}

/// Config file: one key=value per line, `#` comments, blank lines ignored.
inline std::vector<std::pair<std::string, std::string>> read_config(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      out.push_back(split_assignment(line));
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

inline std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return read_config(in);
}

/// Defaults, then the seed environment variable, then file entries, then
/// overrides. Unknown keys are rejected.
inline RunConfig resolve_config(const std::string& sub,
                                const std::vector<std::pair<std::string, std::string>>& file_entries,
                                const std::vector<std::pair<std::string, std::string>>& overrides,
                                const char* env_seed = std::getenv(kSeedEnv)) {
  RunConfig cfg;
  cfg.subcommand = sub;
  cfg.entries = schema_for(sub);
  if (env_seed && cfg.has("seed")) {
    cfg.set("seed", env_seed);
    cfg.seed_source = "env";
  }
  for (auto& [k, v] : file_entries) {
    cfg.set(k, v);
    if (k == "seed") cfg.seed_source = "config";
  }
  for (auto& [k, v] : overrides) {
    cfg.set(k, v);
    if (k == "seed") cfg.seed_source = "flag";
  }
  if (cfg.has("seed")) cfg.get_u64("seed");
  return cfg;
}

inline void echo_config(std::ostream& out, const RunConfig& cfg) {
  out << "# subcommand=" << cfg.subcommand << "\n";
  for (auto& [k, v] : cfg.entries) out << "# " << k << "=" << v << "\n";
  if (cfg.has("seed")) out << "# seed_source=" << cfg.seed_source << "\n";
}

// ---------------------------------------------------------------------------
// Formatting helpers.

inline std::string fmt(double x) {
  if (x == 0) x = 0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// `re+imi`, e.g. `-1+0i`.
inline std::string fmt_complex(cplx z) {
  const double im = z.imag() == 0 ? 0.0 : z.imag();
  return fmt(z.real()) + (std::signbit(im) ? "-" : "+") + fmt(std::abs(im)) + "i";
}

inline LatticeSpec parse_lattice(const std::string& text) {
  auto open = text.find('('), close = text.find(')');
  if (open == std::string::npos || close != text.size() - 1) {
    throw ConfigError("lattice must look like torus(N) or planar(d), got '" + text + "'");
  }
  const std::string kind = text.substr(0, open), arg = text.substr(open + 1, close - open - 1);
  std::size_t used = 0;
  int n = 0;
  try {
    n = std::stoi(arg, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != arg.size()) throw ConfigError("bad lattice size in '" + text + "'");
  if (kind == "torus") return LatticeSpec::torus(n);
  if (kind == "planar") return LatticeSpec::planar(n);
  throw ConfigError("unknown lattice kind '" + kind + "'");
}

inline std::vector<std::string> split_list(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline std::vector<ParticleSpec> parse_particles(const std::string& text, const Lattice& lat) {
  std::vector<ParticleSpec> out;
  for (const auto& item : split_list(text)) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("particle must look like x:cell or z:cell, got '" + item + "'");
    const std::string kind = item.substr(0, colon), cell = item.substr(colon + 1);
    ParticleSpec p;
    if (kind == "x") {
      p.sector = Sector::x;
    } else if (kind == "z") {
      p.sector = Sector::z;
    } else {
      throw ConfigError("unknown particle kind '" + kind + "'");
    }
    std::size_t used = 0;
    try {
      p.start_cell = std::stoi(cell, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != cell.size()) throw ConfigError("bad particle cell '" + cell + "'");
    const int cells = p.sector == Sector::x ? lat.num_faces() : lat.num_vertices();
    if (p.start_cell < 0 || p.start_cell >= cells) throw ConfigError("particle cell out of range: '" + item + "'");
    out.push_back(p);
  }
  if (out.empty()) throw ConfigError("at least one particle is required");
  return out;
}

// ---------------------------------------------------------------------------
// Subcommands.

inline int cmd_braid(const RunConfig& cfg, std::ostream& out) {
  const Lattice lat(parse_lattice(cfg.get("lattice")));
  const EnergyLedger couplings{cfg.get_double("U"), cfg.get_double("J")};
  const std::string program = cfg.get("program"), variant = cfg.get("variant");
  BraidProgram prog(lat, couplings);
  if (!program.empty() && variant != "none") throw ConfigError("set either program or variant, not both");
  if (!program.empty()) {
    std::ifstream in(program);
    if (!in) throw ConfigError("cannot open program file '" + program + "'");
    prog = parse_program(in, lat, couplings);
  } else if (variant == "tangled" || variant == "untangled") {
    prog = braid_program(lat, variant == "tangled" ? BraidVariant::tangled : BraidVariant::untangled,
                         cfg.get_double("t1"), cfg.get_double("t2"), cfg.get_double("t3"), couplings);
  } else if (variant != "none") {
    throw ConfigError("variant must be tangled, untangled or none");
  }
  const long long points = cfg.get_int("phi_points");
  if (points < 2 || points > 1000000) throw ConfigError("phi_points must lie in [2, 1e6]");

  InterferometryOptions opt;
  opt.materialize_probe = cfg.get_bool("materialize_probe");
  opt.cavity_phase = cfg.get_bool("cavity_phase");
  const Tableau ground = prepare_ground_state(lat, {}, cfg.get_u64("seed"));
  const Coherence c = run_interferometry(prog, ground, opt);

  echo_config(out, cfg);
  out << "# steps=" << prog.steps.size() << "\n";
  out << "alpha=" << fmt_complex(c.alpha) << "\n";
  out << "theta_tot=" << fmt(c.theta_tot()) << "\n";
  out << "contrast=" << fmt(c.contrast()) << "\n";
  const FringeCurve f = fringe(c, phi_grid(static_cast<int>(points)));
  out << "phi,sigma_phi\n";
  for (std::size_t i = 0; i < f.phi.size(); ++i) out << fmt(f.phi[i]) << "," << fmt(f.values[i]) << "\n";
  return kOk;
}

namespace detail {

/// Applies one of the six single-qubit stabilizer states to `probe` (from
/// |0>) and returns its stabilizer.
inline PauliString negated(PauliString p) {
  p.add_phase(2);
  return p;
}

template <class Engine>
PauliString prepare_probe_state(Engine& e, int probe, int which) {
  switch (which) {
    case 0: return PauliString::single(probe, 'Z');
    case 1: e.x(probe); return negated(PauliString::single(probe, 'Z'));
    case 2: e.h(probe); return PauliString::single(probe, 'X');
    case 3: e.x(probe); e.h(probe); return negated(PauliString::single(probe, 'X'));
    case 4: e.h(probe); e.s(probe); return PauliString::single(probe, 'Y');
    default: e.x(probe); e.h(probe); e.s(probe); return negated(PauliString::single(probe, 'Y'));
  }
}

inline const char* probe_state_name(int which) {
  static const char* names[] = {"|0>", "|1>", "|+>", "|->", "|+i>", "|-i>"};
  return names[which];
}

}  // namespace detail

inline int cmd_memory(const RunConfig& cfg, std::ostream& out) {
  const Lattice lat(parse_lattice(cfg.get("lattice")));
  const double theta = cfg.get_double("theta");
  const std::string axis_name = cfg.get("axis"), circuit_name = cfg.get("circuit");
  if (axis_name != "z" && axis_name != "x") throw ConfigError("axis must be z or x");
  if (circuit_name != "x_type" && circuit_name != "z_type") throw ConfigError("circuit must be x_type or z_type");
  const long long trials = cfg.get_int("trials");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  const TeleportCircuit circuit = circuit_name == "x_type" ? TeleportCircuit::x_type : TeleportCircuit::z_type;
  const LogicalOps ops = logical_ops(lat);
  const PauliString& axis = axis_name == "z" ? ops.z : ops.x;
  const int probe = lat.num_qubits();

  std::mt19937_64 rng(cfg.get_u64("seed"));
  std::uniform_int_distribution<int> pick(0, 5);
  const Tableau ground = prepare_ground_state(lat, {}, cfg.get_u64("seed")).with_extra_qubits(1);
  const StateVector dense_ground = state_from_tableau(ground);

  echo_config(out, cfg);
  out << "trial,probe_state,swap_roundtrip,teleport_outcome,fidelity\n";
  bool ok = true;
  for (long long t = 0; t < trials; ++t) {
    const int which = pick(rng);
    Tableau tab = ground;
    const PauliString stab = detail::prepare_probe_state(tab, probe, which);
    swap_in(tab, probe, ops);
    swap_out(tab, probe, ops);
    const bool roundtrip = tab.expectation(stab) == 1 && tab.expectation(ops.z) == 1;

    StateVector direct = dense_ground;
    detail::prepare_probe_state(direct, probe, which);
    swap_in(direct, probe, ops);
    StateVector teleported = direct;
    direct.apply_pauli_exponential(axis, theta);
    const int outcome = teleport_rotation(teleported, probe, axis, theta, circuit, rng);
    const double f = fidelity(direct, teleported);
    ok = ok && roundtrip && f >= 1 - 1e-10;
    out << t << "," << detail::probe_state_name(which) << "," << (roundtrip ? "ok" : "FAIL") << "," << outcome
        << "," << fmt(f) << "\n";
  }
  return ok ? kOk : kCheckFailed;
}

inline int cmd_diffuse(const RunConfig& cfg, std::ostream& out) {
  const Lattice lat(parse_lattice(cfg.get("lattice")));
  NoiseModel model;
  model.xi_h = cfg.get_double("xi_h");
  model.tau_c = cfg.get_double("tau_c");
  if (model.xi_h < 0 || !(model.tau_c > 0)) throw ConfigError("need xi_h >= 0 and tau_c > 0");
  model.dt = cfg.get("dt") == "auto" ? NoiseModel::default_dt(model.xi_h, model.tau_c) : cfg.get_double("dt");
  if (!(model.dt > 0)) throw ConfigError("dt must be positive");
  const long long trials = cfg.get_int("trials");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  const double tau_max = cfg.get_double("tau_max");
  const long long points = cfg.get_int("tau_points");
  if (!(tau_max > 0) || points < 2) throw ConfigError("need tau_max > 0 and tau_points >= 2");
  const std::string observable = cfg.get("observable");
  if (observable != "amplitude" && observable != "probability") {
    throw ConfigError("observable must be amplitude or probability");
  }
  std::vector<ScheduleSpec> schedules;
  for (const auto& s : split_list(cfg.get("schedules"))) schedules.push_back(parse_schedule(s));
  if (schedules.empty()) throw ConfigError("at least one schedule is required");
  for (const auto& s : schedules) build_echo_schedule(s, 1.0, lat);
  const auto particles = parse_particles(cfg.get("particles"), lat);
  std::vector<double> grid;
  for (long long i = 0; i < points; ++i) grid.push_back(tau_max * double(i) / double(points - 1));

  echo_config(out, cfg);
  out << "# dt_resolved=" << fmt(model.dt) << "\n";
  out << "# gamma=" << fmt(model.gamma()) << "\n";
  out << "tau,mean_contrast,stderr,n_trials,schedule\n";
  const std::uint64_t seed = cfg.get_u64("seed");
  for (const auto& s : schedules) {
    const auto est = contrast_curve(lat, model, s, grid, static_cast<int>(trials), particles, seed);
    for (std::size_t i = 0; i < est.tau.size(); ++i) {
      const bool amp = observable == "amplitude";
      out << fmt(est.tau[i]) << "," << fmt(amp ? est.mean[i] : est.mean_prob[i]) << ","
          << fmt(amp ? est.stderr_[i] : est.stderr_prob[i]) << "," << est.n_trials << "," << est.schedule << "\n";
    }
  }
  return kOk;
}

inline int cmd_budget(const RunConfig& cfg, std::ostream& out) {
  CavityParams cav{cfg.get_double("g"), cfg.get_double("kappa"), cfg.get_double("gamma"), 1.0};
  const long long N = cfg.get_int("N");
  if (N < 1) throw ConfigError("N must be >= 1");
  cav.Delta = optimal_detuning(cav, static_cast<int>(N));
  const double P = cav.purcell();
  MemoryBudget b;
  b.delta_h = cfg.get_double("delta_h");
  b.J = cfg.get_double("J");
  b.N = static_cast<int>(N);
  b.q = cfg.get_double("q");
  b.lambda = cfg.get_double("lambda");
  b.epsilon = cfg.get_double("epsilon");
  b.P = P;
  if (!(b.J > 0) || b.delta_h < 0 || !(b.q > 0)) throw ConfigError("need J > 0, delta_h >= 0, q > 0");
  const double t = cfg.get_double("t");
  const double theta = cfg.get_double("theta"), delta = cfg.get_double("delta");
  const long long k = cfg.get_int("k");
  const double alpha_sq = cfg.get_double("alpha_sq");
  const std::string format = cfg.get("format");
  if (format != "text" && format != "csv") throw ConfigError("format must be text or csv");
  if (!(std::abs(delta) < 1) || k < 1) throw ConfigError("need |delta| < 1 and k >= 1");

  const double sqrt_np = std::sqrt(double(N) / P);
  const std::vector<std::pair<std::string, double>> rows = {
      {"purcell_factor", P},
      {"optimal_detuning", cav.Delta},
      {"photon_loss_at_optimum", photon_loss(cav, static_cast<int>(N), cav.Delta)},
      {"min_photon_loss", min_photon_loss(static_cast<int>(N), P)},
      {"geometric_gate_loss", geometric_gate_loss(static_cast<int>(N), P, alpha_sq)},
      {"geometric_loss_4pi2_literal", 4 * std::numbers::pi * std::numbers::pi * sqrt_np},
      {"qnd_error", qnd_error(static_cast<int>(N), theta, delta, static_cast<int>(k))},
      {"qnd_norm_error_sum", N * qnd_operator_norm_error(theta, delta)},
      {"composite_pulse_count", double(composite_pulse_count(static_cast<int>(k)))},
      {"protection_factor", b.protection()},
      {"memory_error", memory_error(b, t)},
      {"unprotected_error", b.q * t},
      {"crossover_time", crossover_time(b)},
  };
  echo_config(out, cfg);
  if (!b.in_protection_regime()) out << "# warning=delta_h/J >= 1: outside the protection regime\n";
  if (format == "csv") {
    out << "quantity,value\n";
    for (auto& [name, v] : rows) out << name << "," << fmt(v) << "\n";
  } else {
    for (auto& [name, v] : rows) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%-30s %.12g\n", name.c_str(), v);
      out << buf;
    }
  }
  return kOk;
}

/// Mutual statistics of Z_d charges and fluxes: a Z^a loop and an X^b loop
/// crossing once on torus(3) give w^(ab).
inline int zd_braiding_exponent(int d, int a, int b) {
  const Lattice lat(LatticeSpec::torus(3));
  const auto pair = logical_operators(lat).at(0);
  return weyl_braiding_phase(WeylString::from_path(d, pair.z, a), WeylString::from_path(d, pair.x, b));
}

inline int cmd_zd(const RunConfig& cfg, std::ostream& out) {
  const long long d = cfg.get_int("d");
  if (d < 2 || d > 64) throw ConfigError("d must lie in [2, 64]");
  auto range = [&](const std::string& key) {
    std::vector<int> v;
    if (cfg.get(key) == "all") {
      for (int i = 0; i < d; ++i) v.push_back(i);
    } else {
      const long long x = cfg.get_int(key);
      if (x < 0 || x >= d) throw ConfigError("key '" + key + "' must lie in [0, d)");
      v.push_back(static_cast<int>(x));
    }
    return v;
  };
  const auto as = range("a"), bs = range("b");
  echo_config(out, cfg);
  out << "# gates_per_string=" << weyl_gate_count(static_cast<int>(d)) << "\n";
  out << "a,b,k,phase_re,phase_im\n";
  bool ok = true;
  for (int a : as) {
    for (int b : bs) {
      const int k = zd_braiding_exponent(static_cast<int>(d), a, b);
      ok = ok && k == (a * b) % d;
      const cplx w = std::polar(1.0, 2 * std::numbers::pi * k / double(d));
      out << a << "," << b << "," << k << "," << fmt(w.real()) << "," << fmt(w.imag()) << "\n";
    }
  }
  return ok ? kOk : kCheckFailed;
}

/// Cross-engine and formula-versus-enumeration checks.
inline int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  const Lattice lat(parse_lattice(cfg.get("lattice")));
  const long long programs = cfg.get_int("programs"), circuits = cfg.get_int("circuits");
  if (programs < 0 || circuits < 0) throw ConfigError("counts must be non-negative");
  if (lat.num_qubits() > 12) throw ConfigError("oracle lattice must have at most 12 qubits");
  const std::uint64_t seed = cfg.get_u64("seed");
  echo_config(out, cfg);
  bool all = true;
  auto report = [&](const std::string& name, bool pass, const std::string& detail) {
    all = all && pass;
    out << (pass ? "PASS " : "FAIL ") << name << " " << detail << "\n";
  };

  {  // stabilizer path versus dense two-branch evolution
    std::mt19937_64 rng(seed);
    const Tableau ground = prepare_ground_state(lat, {}, seed);
    const StateVector dense = state_from_tableau(ground);
    double worst = 0;
    for (long long i = 0; i < programs; ++i) {
      const auto prog = random_program(lat, rng, 8, EnergyLedger{1.0, 0.7});
      worst = std::max(worst, std::abs(run_interferometry(prog, ground).alpha -
                                       run_interferometry_dense(prog, dense).alpha));
    }
    report("stabilizer_vs_statevector_alpha", worst <= 1e-10, "max_dev=" + fmt(worst));
  }
  {  // tableau versus statevector expectations
    std::mt19937_64 rng(seed ^ 0x5eed);
    int mismatches = 0;
    for (long long i = 0; i < circuits; ++i) {
      const int n = 1 + static_cast<int>(i % 8);
      Tableau t(n);
      StateVector s(n);
      for (const auto& op : random_clifford_circuit(n, 30, rng)) {
        apply_clifford(t, op);
        apply_clifford(s, op);
      }
      for (int k = 0; k < 8; ++k) {
        const PauliString p = random_pauli(n, rng);
        mismatches += std::abs(double(t.expectation(p)) - s.expectation(p).real()) > 1e-10;
      }
    }
    report("tableau_vs_statevector_expectation", mismatches == 0, "mismatches=" + std::to_string(mismatches));
  }
  {  // q_m against exhaustive pair enumeration
    double worst = 0;
    for (int N = 2; N <= 4; ++N) {
      for (int m = 0; m <= N * N; ++m) {
        std::vector<int> region;
        for (int f = 0; f < m; ++f) region.push_back(f);
        worst = std::max(worst, std::abs(quenched_enumeration_oracle(N, region) - quenched_phase_prob(N, m)));
      }
    }
    report("quenched_formula_vs_enumeration", worst <= 1e-15, "max_dev=" + fmt(worst));
  }
  {  // Weyl braiding against explicit matrices
    bool pass = true;
    for (int d = 2; d <= 5; ++d) {
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
          const WeylString z = WeylString::z_power(d, {0}, b), x = WeylString::x_power(d, {0}, a);
          const Eigen::MatrixXcd Z = dense_operator(z, 1), X = dense_operator(x, 1);
          const Eigen::MatrixXcd comm = Z.inverse() * X.inverse() * Z * X;
          const cplx w = std::polar(1.0, 2 * std::numbers::pi * weyl_braiding_phase(z, x) / d);
          pass = pass && (comm - w * Eigen::MatrixXcd::Identity(d, d)).norm() < 1e-12;
        }
      }
    }
    report("weyl_phase_vs_matrices", pass, "d=2..5");
  }
  {  // geometric gate closed-loop phase versus area
    std::mt19937_64 rng(seed ^ 0xa11ce);
    std::normal_distribution<double> gauss;
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
      std::vector<cplx> steps;
      cplx sum{0, 0};
      for (int k = 0; k < 6; ++k) {
        steps.push_back({gauss(rng), gauss(rng)});
        sum += steps.back();
      }
      steps.push_back(-sum);
      worst = std::max(worst, std::abs(polygon_phase(steps) - 2 * shoelace_area(steps)));
    }
    report("polygon_phase_vs_area", worst <= 1e-12, "max_dev=" + fmt(worst));
  }
  return all ? kOk : kCheckFailed;
}

/// Dispatches on cfg.subcommand, writing to `out`.
inline int run(const RunConfig& cfg, std::ostream& out) {
  const std::string& s = cfg.subcommand;
  if (s == "braid") return cmd_braid(cfg, out);
  if (s == "memory") return cmd_memory(cfg, out);
  if (s == "diffuse") return cmd_diffuse(cfg, out);
  if (s == "budget") return cmd_budget(cfg, out);
  if (s == "zd") return cmd_zd(cfg, out);
  if (s == "oracle") return cmd_oracle(cfg, out);
  throw ConfigError("unknown subcommand '" + s + "'");
}

/// run() with error-to-exit-code mapping; diagnostics go to `err`.
inline int run_guarded(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    return run(cfg, out);
  } catch (const std::invalid_argument& e) {  // ConfigError, UsageError
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const GeometryError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "contract violation: " << e.what() << "\n";
    return kContractViolation;
  }
}

}  // namespace anyonic::cli
