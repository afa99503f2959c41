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

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "anyonic/errors.hpp"
#include "anyonic/lattice.hpp"
#include "anyonic/protocols.hpp"
#include "anyonic/tableau.hpp"

namespace anyonic {

// ---------------------------------------------------------------------------
// Photon loss.

struct CavityParams {
  double g = 1.0;      ///< single-photon Rabi frequency
  double kappa = 1.0;  ///< cavity loss rate
  double gamma = 1.0;  ///< spontaneous emission rate
  double Delta = 1.0;  ///< detuning

  double purcell() const { return g * g / (kappa * gamma); }
  void validate() const {
    if (!(g > 0 && kappa > 0 && gamma > 0 && Delta > 0)) throw ConfigError("cavity parameters must be positive");
  }
};

/// kappa tau + N (g^2/Delta^2) gamma tau with tau = pi Delta / g^2 (the time
/// for a pi/2 conditional phase at chi = g^2 / 2 Delta).
inline double photon_loss(const CavityParams& c, int N, double Delta) {
  const double tau = std::numbers::pi * Delta / (c.g * c.g);
  return c.kappa * tau + N * (c.g * c.g / (Delta * Delta)) * c.gamma * tau;
}

/// Delta* = g sqrt(N gamma / kappa).
inline double optimal_detuning(const CavityParams& c, int N) {
  c.validate();
  if (N < 1) throw UsageError("N must be >= 1");
  return c.g * std::sqrt(N * c.gamma / c.kappa);
}

/// 2 pi sqrt(N / P).
inline double min_photon_loss(int N, double P) {
  if (N < 1 || !(P > 0)) throw UsageError("min_photon_loss needs N >= 1 and P > 0");
  return 2 * std::numbers::pi * std::sqrt(N / P);
}

/// |alpha|^2 times the single-photon minimum: 2 pi |alpha|^2 sqrt(N / P).
inline double geometric_gate_loss(int N, double P, double alpha_sq) {
  if (alpha_sq < 0) throw UsageError("alpha_sq must be non-negative");
  return alpha_sq * min_photon_loss(N, P);
}

// ---------------------------------------------------------------------------
// QND deviation.

/// N theta |delta|^k.
inline double qnd_error(int N, double theta, double delta, int k) {
  if (!(std::abs(delta) < 1)) throw UsageError("qnd_error needs |delta| < 1");
  if (k < 1) throw UsageError("composite pulse order k must be >= 1");
  return N * std::abs(theta) * std::pow(std::abs(delta), k);
}

/// Pulse count estimate c k^3 for a k-th order composite sequence (c = 1).
inline long long composite_pulse_count(int k, double c = 1.0) { return std::llround(c * k * k * k); }

/// ||exp(i(1+delta) theta Z) - exp(i theta Z)|| = 2 |sin(delta theta / 2)|.
inline double qnd_operator_norm_error(double theta, double delta) {
  return 2 * std::abs(std::sin(delta * theta / 2));
}

// ---------------------------------------------------------------------------
// Memory budget.

struct MemoryBudget {
  double delta_h = 0.1;   ///< perturbation strength
  double J = 1.0;         ///< coupling
  int N = 3;              ///< minimal logical string length
  double q = 1e-3;        ///< unprotected decoherence rate
  double lambda = 2 * std::numbers::pi;  ///< loss prefactor
  double P = 1e6;         ///< Purcell factor
  double epsilon = 1e-5;  ///< residual per-spin gate error

  double protection() const { return std::pow(delta_h / J, N); }
  bool in_protection_regime() const { return delta_h / J < 1; }
};

/// (delta_h/J)^N q t + 4 lambda sqrt(N/P) + N epsilon.
inline double memory_error(const MemoryBudget& b, double t) {
  return b.protection() * b.q * t + 4 * b.lambda * std::sqrt(b.N / b.P) + b.N * b.epsilon;
}

/// Storage time beyond which the memory beats an unprotected qubit:
/// memory_error(t*) = q t*. Infinite outside the protection regime.
inline double crossover_time(const MemoryBudget& b) {
  const double slack = 1 - b.protection();
  if (!(slack > 0)) return std::numeric_limits<double>::infinity();
  return (4 * b.lambda * std::sqrt(b.N / b.P) + b.N * b.epsilon) / (b.q * slack);
}

// ---------------------------------------------------------------------------
// Quenched anyons.

/// q_m = 2 m (N^2 - m) / (N^2 (N^2 - 1)).
inline double quenched_phase_prob(int N, int m) {
  const long long n2 = 1LL * N * N;
  if (N < 2 || m < 0 || m > n2) throw UsageError("quenched_phase_prob needs N >= 2 and 0 <= m <= N^2");
  return 2.0 * m * (n2 - m) / (double(n2) * (n2 - 1));
}

struct QuenchedModel {
  int N = 4;
  int m = 4;
  int m_prime = 4;
  double p = 0.1;
};

/// 1 - p (q_m + q_m'); with `diffusive` the fully randomized limit 1 - p.
inline double quenched_contrast(const QuenchedModel& q, bool diffusive = false) {
  if (q.p < 0 || q.p > 1) throw UsageError("pair probability must lie in [0, 1]");
  if (diffusive) return 1 - q.p;
  return 1 - q.p * (quenched_phase_prob(q.N, q.m) + quenched_phase_prob(q.N, q.m_prime));
}

/// Exact fraction of the N^2 (N^2-1)/2 placements of one pair on the faces
/// of torus(N) with exactly one member inside `region`.
inline double quenched_enumeration_oracle(int N, const std::vector<int>& region) {
  if (N < 2 || N > 8) throw UsageError("enumeration oracle supports 2 <= N <= 8");
  const int cells = N * N;
  std::vector<char> inside(cells, 0);
  for (int f : region) {
    if (f < 0 || f >= cells) throw UsageError("region cell out of range");
    inside[f] = 1;
  }
  long long odd = 0, total = 0;
  for (int a = 0; a < cells; ++a) {
    for (int b = a + 1; b < cells; ++b) {
      ++total;
      odd += inside[a] != inside[b];
    }
  }
  return double(odd) / double(total);
}

/// Faces of the rows x cols block with top-left face (r0, c0).
inline std::vector<int> face_block(const Lattice& lat, int r0, int c0, int rows, int cols) {
  std::vector<int> out;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) out.push_back(lat.face_at(r0 + r, c0 + c));
  }
  return out;
}
inline std::vector<int> vertex_block(const Lattice& lat, int r0, int c0, int rows, int cols) {
  std::vector<int> out;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) out.push_back(lat.vertex_at(r0 + r, c0 + c));
  }
  return out;
}

/// Closed z-loop bounding a set of faces (edge-set symmetric difference).
inline StringPath loop_around_faces(const Lattice& lat, const std::vector<int>& faces) {
  std::vector<int> edges;
  for (int f : faces) edges.insert(edges.end(), lat.boundary(f).begin(), lat.boundary(f).end());
  return make_string(lat, StringKind::z, edges);
}
inline StringPath loop_around_vertices(const Lattice& lat, const std::vector<int>& vertices) {
  std::vector<int> edges;
  for (int v : vertices) edges.insert(edges.end(), lat.star(v).begin(), lat.star(v).end());
  return make_string(lat, StringKind::x, edges);
}

/// Splits a closed loop's ordered edges into two open halves.
inline std::pair<StringPath, StringPath> split_loop(const Lattice& lat, const StringPath& loop) {
  const std::size_t half = loop.edges.size() / 2;
  std::vector<int> a(loop.edges.begin(), loop.edges.begin() + half), b(loop.edges.begin() + half, loop.edges.end());
  return {make_string(lat, loop.kind, a), make_string(lat, loop.kind, b)};
}

/// Interferometer with region loops: z-loop around `faces`, x-loop around
/// `vertices`, each applied as two open halves.
inline BraidProgram region_program(const Lattice& lat, const std::vector<int>& faces,
                                   const std::vector<int>& vertices) {
  auto [l1, l3] = split_loop(lat, loop_around_faces(lat, faces));
  auto [l2, l4] = split_loop(lat, loop_around_vertices(lat, vertices));
  BraidProgram prog(lat);
  prog.string(l1).string(l2).string(l3).string(l4);
  return prog;
}

struct MonteCarloEstimate {
  double mean = 0;
  double stderr_ = 0;
  int trials = 0;
};

/// Quenched-anyon Monte Carlo on a torus: with probability p one pair is
/// planted before the interferometer (x- or z-type with equal odds, uniform
/// over distinct cells, created by a shortest string); the estimate is the
/// mean of alpha / alpha_clean.
inline MonteCarloEstimate quenched_monte_carlo(const Lattice& lat, const std::vector<int>& faces,
                                               const std::vector<int>& vertices, double p, int trials,
                                               std::uint64_t seed) {
  if (!lat.is_torus()) throw UsageError("quenched Monte Carlo is defined on a torus");
  const BraidProgram prog = region_program(lat, faces, vertices);
  const Tableau ground = prepare_ground_state(lat, {}, seed);
  const cplx clean = run_interferometry(prog, ground).alpha;
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution plant(p), coin(0.5);
  std::uniform_int_distribution<int> cell(0, lat.num_faces() - 1);
  double s = 0, s2 = 0;
  for (int t = 0; t < trials; ++t) {
    double ratio = 1.0;
    if (plant(rng)) {
      const StringKind kind = coin(rng) ? StringKind::x : StringKind::z;
      int a = cell(rng), b = cell(rng);
      while (b == a) b = cell(rng);
      Tableau state = ground;
      state.apply_pauli(from_string_path(shortest_string(lat, kind, a, b)));
      ratio = (run_interferometry(prog, state).alpha / clean).real();
    }
    s += ratio;
    s2 += ratio * ratio;
  }
  MonteCarloEstimate e;
  e.trials = trials;
  e.mean = s / trials;
  e.stderr_ = trials > 1 ? std::sqrt(std::max(0.0, (s2 / trials - e.mean * e.mean)) / (trials - 1)) : 0.0;
  return e;
}

// ---------------------------------------------------------------------------
// Contrast versus loop geometry.

enum class LoopScaling { perimeter, area };

struct LoopContrastReport {
  double string_factor = 1;  ///< (1 - eps_s)^perimeter
  double init_factor = 1;    ///< 1 - p (q_m + q_m')
  double combined = 1;
};

inline LoopContrastReport contrast_vs_loop(double eps_s, int perimeter, const QuenchedModel& q) {
  if (eps_s < 0 || eps_s > 1) throw UsageError("string error rate must lie in [0, 1]");
  LoopContrastReport r;
  r.string_factor = std::pow(1 - eps_s, perimeter);
  r.init_factor = quenched_contrast(q);
  r.combined = r.string_factor * r.init_factor;
  return r;
}

/// Monte Carlo of per-edge string errors: every edge of every string step
/// suffers, with probability eps_s, a uniformly random non-identity Pauli
/// (X, Z or XZ) on the probe-|1> branch. Returns mean alpha / alpha_clean.
inline MonteCarloEstimate string_error_monte_carlo(const BraidProgram& prog, const Tableau& ground, double eps_s,
                                                   int trials, std::uint64_t seed) {
  const Lattice& lat = prog.lat();
  const cplx clean = run_interferometry(prog, ground).alpha;
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution hit(eps_s);
  std::uniform_int_distribution<int> which(1, 3);
  double s = 0, s2 = 0;
  for (int t = 0; t < trials; ++t) {
    BraidProgram noisy(lat, prog.couplings);
    for (const auto& step : prog.steps) {
      noisy.steps.push_back(step);
      const auto* st = std::get_if<StringStep>(&step);
      if (!st) continue;
      for (int e : st->path.edges) {
        if (!hit(rng)) continue;
        const int w = which(rng);
        if (w & 1) noisy.string(make_string(lat, StringKind::x, {e}));
        if (w & 2) noisy.string(make_string(lat, StringKind::z, {e}));
      }
    }
    const double r = (run_interferometry(noisy, ground).alpha / clean).real();
    s += r;
    s2 += r * r;
  }
  MonteCarloEstimate e;
  e.trials = trials;
  e.mean = s / trials;
  e.stderr_ = trials > 1 ? std::sqrt(std::max(0.0, (s2 / trials - e.mean * e.mean)) / (trials - 1)) : 0.0;
  return e;
}

}  // namespace anyonic
