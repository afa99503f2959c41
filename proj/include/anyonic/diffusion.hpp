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

#pragma once

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "anyonic/errors.hpp"
#include "anyonic/lattice.hpp"
#include "anyonic/protocols.hpp"

namespace anyonic {

/// Stationary Gaussian field model with f(t) = xi_h^2 exp(-t^2 / tau_c^2) per
/// edge and component.
struct NoiseModel {
  double xi_h = 1.0;
  double tau_c = 10.0;
  double dt = 0.05;
  double duration = 30.0;

  double omega_c() const { return 2.0 / tau_c; }
  /// Gamma = 2 sqrt(pi) xi_h^2 / omega_c.
  double gamma() const { return 2.0 * std::sqrt(std::numbers::pi) * xi_h * xi_h / omega_c(); }
  double correlation(double t) const { return xi_h * xi_h * std::exp(-(t * t) / (tau_c * tau_c)); }

  static double default_dt(double xi_h, double tau_c) {
    return (xi_h > 0 ? std::min(tau_c, 1.0 / xi_h) : tau_c) / 20.0;
  }
};

/// Which particle species a field component moves: h^x hops x-particles
/// (faces), h^z hops z-particles (vertices).
enum class Sector { x, z };

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix64(splitmix64(splitmix64(master) ^ a) ^ (b * 0xD1B54A32D192ED03ULL));
}

/// Field values h_e^{x,z} on the time grid; entry k holds the value used for
/// t in [k dt, (k+1) dt) (the series is sampled at cell midpoints).
class NoiseRealization {
 public:
  NoiseRealization() = default;
  NoiseRealization(int edges, int steps, double dt)
      : edges_(edges), steps_(steps), dt_(dt), data_(static_cast<std::size_t>(2) * edges * steps, 0.0) {}

  /// Deterministic field h(sector, edge, t) sampled at cell midpoints.
  static NoiseRealization from_function(int edges, double dt, double duration,
                                        const std::function<double(Sector, int, double)>& h) {
    NoiseRealization r(edges, steps_for(dt, duration), dt);
    for (Sector s : {Sector::x, Sector::z}) {
      for (int e = 0; e < edges; ++e) {
        for (int k = 0; k < r.steps_; ++k) r.at(s, e, k) = h(s, e, (k + 0.5) * dt);
      }
    }
    return r;
  }

  static int steps_for(double dt, double duration) {
    if (!(dt > 0) || !(duration >= 0)) throw UsageError("noise grid needs dt > 0 and duration >= 0");
    const double k = std::ceil(duration / dt - 1e-9);
    if (k > 5e7) throw UsageError("noise grid too long (duration / dt > 5e7)");
    return std::max(1, static_cast<int>(k));
  }

  int edges() const { return edges_; }
  int steps() const { return steps_; }
  double dt() const { return dt_; }
  double duration() const { return steps_ * dt_; }

  double& at(Sector s, int e, int k) { return data_[index(s, e, k)]; }
  double at(Sector s, int e, int k) const { return data_[index(s, e, k)]; }
  const double* series(Sector s, int e) const { return &data_[index(s, e, 0)]; }
  double* series(Sector s, int e) { return &data_[index(s, e, 0)]; }

 private:
  std::size_t index(Sector s, int e, int k) const {
    return (static_cast<std::size_t>(s == Sector::x ? 0 : 1) * edges_ + e) * steps_ + k;
  }
  int edges_ = 0;
  int steps_ = 0;
  double dt_ = 1.0;
  std::vector<double> data_;
};

/// Circulant-embedding sampler for one NoiseModel: the covariance row on a
/// padded grid of length L = 2m is diagonalized by one FFT; each further FFT
/// of sqrt(lambda / L) (Z1 + i Z2) yields two independent series.
class GaussianSeriesSampler {
 public:
  GaussianSeriesSampler(const NoiseModel& model, int steps) : model_(model), steps_(steps) {
    if (model.tau_c <= 0) throw UsageError("tau_c must be positive");
    if (model.dt > model.tau_c / 20.0 + 1e-15) throw UsageError("dt must not exceed tau_c / 20");
    const int pad = static_cast<int>(std::ceil(8.0 * model.tau_c / model.dt));
    // Any longer embedding is also valid; pick a 2-3-5-7-smooth length for speed.
    len_ = fast_fft_length(2 * (steps + pad));
    std::vector<std::complex<double>> row(len_);
    for (int j = 0; j < len_; ++j) row[j] = model.correlation(model.dt * std::min(j, len_ - j));
    buffer_.resize(len_);
    {
      std::lock_guard<std::mutex> lock(planner_mutex());
      plan_ = fftw_plan_dft_1d(len_, reinterpret_cast<fftw_complex*>(buffer_.data()),
                               reinterpret_cast<fftw_complex*>(buffer_.data()), FFTW_FORWARD, FFTW_ESTIMATE);
    }
    if (!plan_) throw NumericalError("FFT plan creation failed");
    std::copy(row.begin(), row.end(), buffer_.begin());
    fftw_execute(plan_);
    scale_.resize(len_);
    double lam_max = 0;
    for (int j = 0; j < len_; ++j) lam_max = std::max(lam_max, buffer_[j].real());
    for (int j = 0; j < len_; ++j) {
      const double lam = std::max(0.0, buffer_[j].real());
      min_eigen_ = std::min(min_eigen_, buffer_[j].real());
      // Modes below 1e-12 of the peak carry no resolvable variance; skip them.
      // The cut sits far above FFT rounding so the active set, and with it the
      // random stream, is the same on every run.
      scale_[j] = lam > 1e-12 * lam_max ? std::sqrt(lam / len_) : 0.0;
      if (scale_[j] > 0) active_.push_back(j);
    }
  }
  ~GaussianSeriesSampler() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  GaussianSeriesSampler(const GaussianSeriesSampler&) = delete;
  GaussianSeriesSampler& operator=(const GaussianSeriesSampler&) = delete;

  int embedding_length() const { return len_; }
  /// Most negative eigenvalue of the embedding (clipped to zero).
  double min_eigenvalue() const { return min_eigen_; }

  /// Fills two independent series of length `steps` using `rng`.
  template <class Rng>
  void sample_pair(Rng& rng, double* first, double* second) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::fill(buffer_.begin(), buffer_.end(), std::complex<double>{0, 0});
    for (int j : active_) {
      const double a = normal(rng), b = normal(rng);
      buffer_[j] = scale_[j] * std::complex<double>(a, b);
    }
    fftw_execute(plan_);
    for (int k = 0; k < steps_; ++k) {
      first[k] = buffer_[k].real();
      if (second) second[k] = buffer_[k].imag();
    }
  }

 private:
  static int fast_fft_length(int n) {
    for (;; ++n) {
      int r = n;
      for (int f : {2, 3, 5, 7}) {
        while (r % f == 0) r /= f;
      }
      if (r == 1) return n;
    }
  }
  static std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
  }

  NoiseModel model_;
  int steps_;
  int len_ = 0;
  double min_eigen_ = 0;
  std::vector<std::complex<double>> buffer_;
  std::vector<double> scale_;
  std::vector<int> active_;
  fftw_plan plan_ = nullptr;
};

/// Per-edge independent fields for the requested components (both by
/// default; unrequested ones stay zero). Edge pairs (2j, 2j+1) share one FFT;
/// their generator is seeded from (seed, component, j), so a component's
/// series do not depend on which others are drawn.
inline NoiseRealization sample_noise(const NoiseModel& model, const Lattice& lat, std::uint64_t seed,
                                     GaussianSeriesSampler* sampler = nullptr,
                                     std::vector<Sector> sectors = {Sector::x, Sector::z}) {
  const int steps = NoiseRealization::steps_for(model.dt, model.duration);
  NoiseRealization r(lat.num_edges(), steps, model.dt);
  if (model.xi_h == 0) return r;
  std::unique_ptr<GaussianSeriesSampler> own;
  if (!sampler) {
    own = std::make_unique<GaussianSeriesSampler>(model, steps);
    sampler = own.get();
  }
  for (Sector s : sectors) {
    for (int e = 0; e < lat.num_edges(); e += 2) {
      std::mt19937_64 rng(derive_seed(seed, s == Sector::x ? 1 : 2, static_cast<std::uint64_t>(e / 2)));
      sampler->sample_pair(rng, r.series(s, e), e + 1 < lat.num_edges() ? r.series(s, e + 1) : nullptr);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Echo schedules.

struct Pulse {
  double time = 0;
  EchoKind kind = EchoKind::z;
};

enum class ScheduleFamily { none, z_pairs, nested, boundary_w };

struct ScheduleSpec {
  ScheduleFamily family = ScheduleFamily::none;
  int n = 0;

  std::string name() const {
    switch (family) {
      case ScheduleFamily::none: return "none";
      case ScheduleFamily::z_pairs: return "z_pairs(" + std::to_string(n) + ")";
      case ScheduleFamily::nested: return "nested(" + std::to_string(n) + ")";
      case ScheduleFamily::boundary_w: return "boundary_W";
    }
    return "?";
  }
};

inline ScheduleSpec parse_schedule(const std::string& text) {
  if (text == "none" || text == "0") return {ScheduleFamily::none, 0};
  if (text == "boundary_W" || text == "boundary_w") return {ScheduleFamily::boundary_w, 1};
  auto parse_n = [&](const std::string& prefix) -> int {
    if (text.rfind(prefix + "(", 0) != 0 || text.back() != ')') return -1;
    const std::string inner = text.substr(prefix.size() + 1, text.size() - prefix.size() - 2);
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(inner, &used);
    } catch (const std::logic_error&) {
      throw ConfigError("bad pulse count in schedule '" + text + "'");
    }
    if (used != inner.size() || n < 1) throw ConfigError("bad pulse count in schedule '" + text + "'");
    return n;
  };
  if (int n = parse_n("z_pairs"); n > 0) return {ScheduleFamily::z_pairs, n};
  if (int n = parse_n("nested"); n > 0) return {ScheduleFamily::nested, n};
  // A bare integer n means n echo pairs.
  try {
    std::size_t used = 0;
    int n = std::stoi(text, &used);
    if (used == text.size() && n >= 1) return {ScheduleFamily::z_pairs, n};
  } catch (const std::logic_error&) {
  }
  throw ConfigError("unknown echo schedule '" + text + "'");
}

struct EchoSchedule {
  std::vector<Pulse> pulses;
  std::string descriptor;
};

/// Pulse times over [0, duration]:
///  z_pairs(n):  2n U_pi^z pulses at k duration / 2n, k = 1..2n.
///  nested(n):   n blocks; block j holds U_pi^z, U_pi^x, U_pi^z, U_pi^x at its
///               quarter marks.
///  boundary_W:  W^{e,e} W^{e,o} W^{o,e} W^{o,o}, each over duration/4 with
///               U_pi^{z,a}, U_pi^{x,b}, U_pi^{z,a}, U_pi^{x,b} at its quarter marks.
inline EchoSchedule build_echo_schedule(const ScheduleSpec& spec, double duration, const Lattice& lat) {
  EchoSchedule s;
  s.descriptor = spec.name();
  if (duration < 0) throw UsageError("schedule duration must be non-negative");
  switch (spec.family) {
    case ScheduleFamily::none:
      break;
    case ScheduleFamily::z_pairs:
      if (spec.n < 1) throw UsageError("z_pairs needs n >= 1");
      for (int k = 1; k <= 2 * spec.n; ++k) s.pulses.push_back({duration * k / (2.0 * spec.n), EchoKind::z});
      break;
    case ScheduleFamily::nested:
      if (spec.n < 1) throw UsageError("nested needs n >= 1");
      for (int j = 0; j < spec.n; ++j) {
        for (int q = 1; q <= 4; ++q) {
          s.pulses.push_back({duration * (4.0 * j + q) / (4.0 * spec.n), q % 2 ? EchoKind::z : EchoKind::x});
        }
      }
      break;
    case ScheduleFamily::boundary_w: {
      if (lat.is_torus()) throw UsageError("boundary_W schedule requires a planar lattice");
      const bool alpha_even[4] = {true, true, false, false};
      const bool beta_even[4] = {true, false, true, false};
      for (int b = 0; b < 4; ++b) {
        const EchoKind zk = alpha_even[b] ? EchoKind::z_even : EchoKind::z_odd;
        const EchoKind xk = beta_even[b] ? EchoKind::x_even : EchoKind::x_odd;
        for (int q = 1; q <= 4; ++q) s.pulses.push_back({duration * (4.0 * b + q) / 16.0, q % 2 ? zk : xk});
      }
      break;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// One-particle hopping dynamics.

/// Hopping graph of one sector: bonds are edges touching two cells of that
/// sector. Edges touching a single cell would change the particle number and
/// carry no amplitude inside the one-particle sector.
struct HoppingGraph {
  struct Bond {
    int p, q, edge;
  };
  Sector sector = Sector::x;
  int cells = 0;
  int max_degree = 0;
  std::vector<Bond> bonds;

  HoppingGraph() = default;
  HoppingGraph(const Lattice& lat, Sector s) : sector(s) {
    const StringKind kind = s == Sector::x ? StringKind::x : StringKind::z;
    cells = lat.num_cells(kind);
    for (int e = 0; e < lat.num_edges(); ++e) {
      const auto& inc = lat.incident_cells(kind, e);
      if (inc.size() == 2 && inc[0] != inc[1]) bonds.push_back({inc[0], inc[1], e});
    }
    std::vector<int> degree(cells, 0);
    for (const auto& b : bonds) max_degree = std::max({max_degree, ++degree[b.p], ++degree[b.q]});
  }
};

struct HoppingState {
  Sector sector = Sector::x;
  std::vector<cplx> amps;
  double norm() const {
    double s = 0;
    for (auto& a : amps) s += std::norm(a);
    return std::sqrt(s);
  }
};

namespace detail {

/// exp(-i H t) psi for the real symmetric bond Hamiltonian, by Taylor series
/// with sub-steps keeping ||H|| dt <= 1 (||H|| <= max degree * max |h|).
inline void propagate_constant(const HoppingGraph& g, const std::vector<double>& h, double t,
                               std::vector<cplx>& psi, std::vector<cplx>& term, std::vector<cplx>& next) {
  if (t <= 0) return;
  double hmax = 0;
  for (double x : h) hmax = std::max(hmax, std::abs(x));
  const double bound = g.max_degree * hmax;
  if (bound == 0) return;
  const int sub = std::max(1, static_cast<int>(std::ceil(bound * t)));
  const double dt = t / sub;
  for (int s = 0; s < sub; ++s) {
    term = psi;
    for (int k = 1; k < 40; ++k) {
      std::fill(next.begin(), next.end(), cplx{0, 0});
      for (std::size_t b = 0; b < g.bonds.size(); ++b) {
        const auto& bd = g.bonds[b];
        next[bd.p] += h[b] * term[bd.q];
        next[bd.q] += h[b] * term[bd.p];
      }
      const double f = dt / double(k);  // term *= -i dt / k
      double mag = 0;
      for (int c = 0; c < g.cells; ++c) {
        term[c] = cplx(f * next[c].imag(), -f * next[c].real());
        psi[c] += term[c];
        mag = std::max(mag, std::norm(term[c]));
      }
      if (mag < 1e-34) break;
    }
  }
}

inline bool pulse_flips(Sector sector, EchoKind k) {
  // z pulses anticommute with the sigma^x hopping of x-particles and vice versa.
  return (sector == Sector::x) == is_z_echo(k);
}

}  // namespace detail

/// Integrates i d|phi>/dt = H'(t)|phi> from 0 to `duration` in one sector.
/// The field is piecewise constant on the realization grid; echo pulses flip
/// the sign of the hopping terms on their mask at the pulse time. Calls
/// `observe(t, state)` at every time in `observe_times` (sorted).
inline HoppingState evolve_anyon(const Lattice& lat, const NoiseRealization& noise, const EchoSchedule& schedule,
                                 int start_cell, Sector sector, double duration,
                                 const std::vector<double>& observe_times = {},
                                 const std::function<void(double, const HoppingState&)>& observe = {}) {
  const HoppingGraph g(lat, sector);
  if (start_cell < 0 || start_cell >= g.cells) throw UsageError("start cell out of range for sector");
  if (noise.edges() != lat.num_edges()) throw UsageError("noise realization does not match lattice");
  if (duration > noise.duration() + 1e-9) throw UsageError("evolution longer than the noise realization");
  for (std::size_t i = 1; i < schedule.pulses.size(); ++i) {
    if (!(schedule.pulses[i].time > schedule.pulses[i - 1].time)) throw UsageError("pulse times must increase");
  }

  HoppingState st{sector, std::vector<cplx>(g.cells, cplx{0, 0})};
  st.amps[start_cell] = 1.0;
  std::vector<double> sign(g.bonds.size(), 1.0), h(g.bonds.size(), 0.0);
  std::vector<std::vector<char>> masks;
  for (const auto& p : schedule.pulses) {
    std::vector<char> m(lat.num_edges(), 0);
    for (int e : echo_mask(lat, p.kind)) m[e] = 1;
    masks.push_back(std::move(m));
  }
  std::vector<cplx> term(g.cells), next(g.cells);

  const double dt = noise.dt();
  std::size_t pulse = 0, obs = 0;
  double t = 0;
  auto fire_events = [&](double now) {
    while (obs < observe_times.size() && observe_times[obs] <= now + 1e-12) {
      if (observe) observe(observe_times[obs], st);
      ++obs;
    }
    while (pulse < schedule.pulses.size() && schedule.pulses[pulse].time <= now + 1e-12) {
      if (detail::pulse_flips(sector, schedule.pulses[pulse].kind)) {
        for (std::size_t b = 0; b < g.bonds.size(); ++b) {
          if (masks[pulse][g.bonds[b].edge]) sign[b] = -sign[b];
        }
      }
      ++pulse;
    }
  };
  fire_events(0);
  while (t < duration - 1e-12) {
    const int cell = std::min(static_cast<int>(std::floor(t / dt + 1e-9)), noise.steps() - 1);
    double end = std::min(duration, (cell + 1) * dt);
    if (pulse < schedule.pulses.size()) end = std::min(end, std::max(schedule.pulses[pulse].time, t));
    if (obs < observe_times.size()) end = std::min(end, std::max(observe_times[obs], t));
    if (end <= t + 1e-12) end = std::min(duration, (cell + 1) * dt);
    for (std::size_t b = 0; b < g.bonds.size(); ++b) h[b] = sign[b] * noise.at(sector, g.bonds[b].edge, cell);
    detail::propagate_constant(g, h, end - t, st.amps, term, next);
    t = end;
    fire_events(t);
  }
  fire_events(duration);
  return st;
}

inline cplx survival(const HoppingState& st, int start_cell) { return st.amps.at(start_cell); }

// ---------------------------------------------------------------------------
// Contrast curves.

struct ParticleSpec {
  Sector sector = Sector::x;
  int start_cell = 0;
};

struct ContrastEstimate {
  std::vector<double> tau;
  /// Mean over trials of prod_particles |survival|.
  std::vector<double> mean;
  std::vector<double> stderr_;
  /// Mean over trials of prod_particles |survival|^2 (joint survival probability).
  std::vector<double> mean_prob;
  std::vector<double> stderr_prob;
  int n_trials = 0;
  std::string schedule;
};

namespace detail {
inline void mean_and_stderr(const std::vector<double>& xs, double& mean, double& se) {
  const double n = static_cast<double>(xs.size());
  double s = 0;
  for (double x : xs) s += x;
  mean = s / n;
  double v = 0;
  for (double x : xs) v += (x - mean) * (x - mean);
  se = xs.size() > 1 ? std::sqrt(v / (n - 1) / n) : 0.0;
}
}  // namespace detail

/// Monte Carlo fringe contrast versus delay. Each trial draws one noise
/// realization (seeded from (seed, trial)) covering max(tau_grid) and evolves
/// every particle under it; with an echo schedule the pulses are laid out
/// afresh for each tau.
inline ContrastEstimate contrast_curve(const Lattice& lat, NoiseModel model, const ScheduleSpec& family,
                                       const std::vector<double>& tau_grid, int n_trials,
                                       const std::vector<ParticleSpec>& particles, std::uint64_t seed) {
  if (n_trials < 1) throw UsageError("contrast_curve needs at least one trial");
  if (tau_grid.empty()) throw UsageError("contrast_curve needs a tau grid");
  if (!std::is_sorted(tau_grid.begin(), tau_grid.end()) || tau_grid.front() < 0) {
    throw UsageError("tau grid must be sorted and non-negative");
  }
  model.duration = tau_grid.back();
  const int steps = NoiseRealization::steps_for(model.dt, model.duration);
  std::unique_ptr<GaussianSeriesSampler> sampler;
  if (model.xi_h != 0) sampler = std::make_unique<GaussianSeriesSampler>(model, steps);
  // Validate the schedule family once (e.g. boundary_W on a torus).
  build_echo_schedule(family, 1.0, lat);

  const std::size_t nt = tau_grid.size();
  std::vector<std::vector<double>> amp(nt, std::vector<double>(n_trials, 1.0));
  std::vector<std::vector<double>> prob(nt, std::vector<double>(n_trials, 1.0));
  std::vector<Sector> sectors;
  for (const auto& part : particles) {
    if (std::find(sectors.begin(), sectors.end(), part.sector) == sectors.end()) sectors.push_back(part.sector);
  }
  for (int trial = 0; trial < n_trials; ++trial) {
    const NoiseRealization noise =
        sample_noise(model, lat, derive_seed(seed, 0xC0FFEE, trial), sampler.get(), sectors);
    for (const auto& part : particles) {
      if (family.family == ScheduleFamily::none) {
        std::size_t i = 0;
        evolve_anyon(lat, noise, EchoSchedule{}, part.start_cell, part.sector, model.duration, tau_grid,
                     [&](double, const HoppingState& st) {
                       const double a = std::abs(survival(st, part.start_cell));
                       amp[i][trial] *= a;
                       prob[i][trial] *= a * a;
                       ++i;
                     });
      } else {
        for (std::size_t i = 0; i < nt; ++i) {
          if (tau_grid[i] == 0) continue;
          const auto sched = build_echo_schedule(family, tau_grid[i], lat);
          const auto st = evolve_anyon(lat, noise, sched, part.start_cell, part.sector, tau_grid[i]);
          const double a = std::abs(survival(st, part.start_cell));
          amp[i][trial] *= a;
          prob[i][trial] *= a * a;
        }
      }
    }
  }
  ContrastEstimate est;
  est.tau = tau_grid;
  est.n_trials = n_trials;
  est.schedule = family.name();
  for (std::size_t i = 0; i < nt; ++i) {
    double m, se;
    detail::mean_and_stderr(amp[i], m, se);
    est.mean.push_back(m);
    est.stderr_.push_back(se);
    detail::mean_and_stderr(prob[i], m, se);
    est.mean_prob.push_back(m);
    est.stderr_prob.push_back(se);
  }
  return est;
}

// ---------------------------------------------------------------------------
// Closed forms.

struct DiffusionParams {
  double xi_h = 1.0;
  double tau_c = 10.0;
  int z = 4;  ///< coordination number

  double gamma() const { return NoiseModel{xi_h, tau_c}.gamma(); }
  /// T2* = 1 / (z Gamma).
  double t2_star() const { return 1.0 / (z * gamma()); }
  /// Uncalibrated echo time scale sqrt(tau_c / xi_h).
  double t2_scale() const { return std::sqrt(tau_c / xi_h); }
};

enum class ContrastKind { free, echo };

/// free: exp(-tau / T2*); echo(n): exp(-(tau / T2)^4 / n^3).
inline double analytic_contrast(double tau, const DiffusionParams& p, ContrastKind kind, int n = 1,
                                double t2 = 0.0) {
  if (kind == ContrastKind::free) return std::exp(-tau / p.t2_star());
  if (n < 1) throw UsageError("echo contrast needs n >= 1");
  const double T2 = t2 > 0 ? t2 : p.t2_scale();
  return std::exp(-std::pow(tau / T2, 4) / (double(n) * n * n));
}

/// T2 from one measured echo point: C = exp(-(tau/T2)^4 / n^3).
inline double calibrate_t2(double tau, double contrast, int n = 1) {
  if (!(contrast > 0 && contrast < 1)) throw NumericalError("calibration contrast must lie in (0, 1)");
  return tau / std::pow(-double(n) * n * n * std::log(contrast), 0.25);
}

/// Single-particle survival probability of a continuous-time random walk on
/// the square lattice with hop rate Gamma per bond: (e^{-2x} I0(2x))^2, x = Gamma tau.
inline double random_walk_return_probability(double gamma_tau) {
  const double x = 2 * gamma_tau;
  const double one_d = std::exp(-x) * std::cyl_bessel_i(0.0, x);
  return one_d * one_d;
}

}  // namespace anyonic
