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

// End-to-end acceptance suite. Usage: acceptance [criterion ...]
// Prints one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "anyonic/analytics.hpp"
#include "anyonic/circuits.hpp"
#include "anyonic/cli.hpp"
#include "anyonic/diffusion.hpp"
#include "anyonic/geometric_gate.hpp"
#include "anyonic/lattice.hpp"
#include "anyonic/protocols.hpp"
#include "anyonic/statevector.hpp"
#include "anyonic/tableau.hpp"
#include "support/oracles.hpp"

using namespace anyonic;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double x, int prec = 4) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", prec, x);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. Braiding statistics.

Outcome braiding_statistics() {
  bool ok = true;
  std::ostringstream d;
  std::mt19937_64 rng(101);
  for (const auto& spec : {LatticeSpec::torus(4), LatticeSpec::planar(3)}) {
    const Lattice lat(spec);
    const Tableau ground = prepare_ground_state(lat, {}, 7);
    const auto tangled = braid_program(lat, BraidVariant::tangled);
    const auto untangled = braid_program(lat, BraidVariant::untangled);
    const cplx at = run_interferometry(tangled, ground).alpha;
    const cplx au = run_interferometry(untangled, ground).alpha;
    ok = ok && at == cplx(-1, 0) && au == cplx(1, 0);

    // Deformations over unoccupied cells: 50 programs, each with 1-5 moves.
    int deformed = 0, changed = 0;
    for (const auto* base : {&tangled, &untangled}) {
      const cplx ref = run_interferometry(*base, ground).alpha;
      for (int trial = 0; trial < 25; ++trial) {
        BraidProgram prog = *base;
        const int moves = std::uniform_int_distribution<int>(1, 5)(rng);
        for (int m = 0; m < moves;) {
          std::vector<std::size_t> strings;
          for (std::size_t s = 0; s < prog.steps.size(); ++s) {
            if (std::holds_alternative<StringStep>(prog.steps[s])) strings.push_back(s);
          }
          const std::size_t step = strings[std::uniform_int_distribution<std::size_t>(0, strings.size() - 1)(rng)];
          const StringKind kind = std::get<StringStep>(prog.steps[step]).path.kind;
          const int cells = kind == StringKind::z ? lat.num_faces() : lat.num_vertices();
          const int cell = std::uniform_int_distribution<int>(0, cells - 1)(rng);
          if (deformation_cell_occupied(prog, ground, step, cell)) continue;
          prog = deform_step(prog, step, cell);
          ++m;
        }
        ++deformed;
        changed += run_interferometry(prog, ground).alpha != ref;
      }
    }
    ok = ok && changed == 0;
    d << (lat.is_torus() ? "torus(4)" : "planar(3)") << ": tangled=" << cli::fmt_complex(at)
      << " untangled=" << cli::fmt_complex(au) << " deformed=" << deformed << " changed=" << changed << "; ";
  }
  // Independent engine on planar(3): dense two-branch statevector.
  const Lattice p3(LatticeSpec::planar(3));
  const StateVector dense = state_from_tableau(prepare_ground_state(p3, {}, 7));
  const cplx dt = run_interferometry_dense(braid_program(p3, BraidVariant::tangled), dense).alpha;
  const cplx du = run_interferometry_dense(braid_program(p3, BraidVariant::untangled), dense).alpha;
  ok = ok && std::abs(dt + 1.0) < 1e-12 && std::abs(du - 1.0) < 1e-12;
  d << "dense planar(3): " << cli::fmt_complex(dt) << ", " << cli::fmt_complex(du);
  return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// 2. Dynamical phase: stabilizer path versus dense two-branch evolution.

Outcome dynamical_phase() {
  const Lattice lat(LatticeSpec::planar(2));
  const Tableau ground = prepare_ground_state(lat, {}, 3);
  const StateVector dense = state_from_tableau(ground);
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> coupling(0.2, 2.0), delay(0.0, 3.0);
  double worst = 0;
  int nontrivial = 0;
  for (int i = 0; i < 100; ++i) {
    const EnergyLedger c{coupling(rng), coupling(rng)};
    BraidProgram prog(lat, c);
    if (i % 4 == 0) {
      prog = braid_program(lat, i % 8 == 0 ? BraidVariant::tangled : BraidVariant::untangled, delay(rng),
                           delay(rng), delay(rng), c);
    } else {
      prog = random_program(lat, rng, 10, c, /*echoes=*/true);
      prog.delay(delay(rng));
    }
    const cplx a = run_interferometry(prog, ground).alpha;
    const cplx b = run_interferometry_dense(prog, dense).alpha;
    worst = std::max(worst, std::abs(a - b));
    nontrivial += std::abs(a.imag()) > 1e-6;
  }
  return {worst <= 1e-10, "max|d alpha|=" + num(worst) + " over 100 programs (" + std::to_string(nontrivial) +
                              " with non-real alpha)"};
}

// ---------------------------------------------------------------------------
// 3. Fringe contract.

Outcome fringe_contract() {
  const int points = 3600;
  const auto grid = phi_grid(points);
  const double step = 2 * std::numbers::pi / points;
  bool ok = true;
  double worst_shift = 0;
  const Lattice lat(LatticeSpec::torus(4));
  const Tableau ground = prepare_ground_state(lat, {}, 1);
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> delay(0.0, 2.0);
  std::vector<Coherence> cases;
  for (int i = 0; i < 10; ++i) {
    const auto v = i % 2 ? BraidVariant::tangled : BraidVariant::untangled;
    cases.push_back(run_interferometry(braid_program(lat, v, delay(rng), delay(rng), delay(rng)), ground));
  }
  cases.push_back(Coherence{std::polar(0.37, 2.1)});  // partial contrast
  for (const auto& c : cases) {
    const FringeCurve f = fringe(c, grid);
    const auto it = std::max_element(f.values.begin(), f.values.end());
    const double phi_max = f.phi[it - f.values.begin()];
    double shift = std::remainder(phi_max - c.theta_tot(), 2 * std::numbers::pi);
    worst_shift = std::max(worst_shift, std::abs(shift));
    ok = ok && std::abs(shift) <= step / 2 + 1e-12;
    ok = ok && *it <= c.contrast() + 1e-15 && *it >= c.contrast() * std::cos(step / 2) - 1e-15;
  }
  // Perfect contrast: every braid program with delays has |alpha| = 1.
  for (std::size_t i = 0; i + 1 < cases.size(); ++i) ok = ok && std::abs(cases[i].contrast() - 1) < 1e-12;
  return {ok, "max |phi_max - theta_tot|=" + num(worst_shift) + " (grid step " + num(step) + "), 10 perfect-contrast + 1 partial"};
}

// ---------------------------------------------------------------------------
// 4. Memory roundtrip and teleported rotations.

template <class Engine>
PauliString random_probe_state(Engine& e, int probe, int which) {
  PauliString stab = PauliString::single(probe, "ZZXXYY"[which]);
  if (which % 2) {
    e.x(probe);
    stab.add_phase(2);
  }
  if (which >= 2) e.h(probe);
  if (which >= 4) e.s(probe);
  return stab;
}

Outcome memory_roundtrip() {
  bool ok = true;
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<int> pick(0, 5);
  int swaps = 0;
  // Stabilizer engine on planar(3) and torus(4); statevector on planar(2).
  for (const auto& spec : {LatticeSpec::planar(3), LatticeSpec::torus(4)}) {
    const Lattice lat(spec);
    const LogicalOps ops = logical_ops(lat);
    const int probe = lat.num_qubits();
    const Tableau ground = prepare_ground_state(lat, {}, 5).with_extra_qubits(1);
    for (int t = 0; t < 20; ++t) {
      Tableau tab = ground;
      const PauliString stab = random_probe_state(tab, probe, pick(rng));
      swap_in(tab, probe, ops);
      ok = ok && tab.expectation(PauliString::single(probe, 'Z')) == 1;
      swap_out(tab, probe, ops);
      ok = ok && tab.expectation(stab) == 1 && tab.expectation(ops.z) == 1;
      ++swaps;
    }
  }
  const Lattice lat(LatticeSpec::planar(2));
  const LogicalOps ops = logical_ops(lat);
  const int probe = lat.num_qubits();
  const StateVector ground = state_from_tableau(prepare_ground_state(lat, {}, 5).with_extra_qubits(1));
  double worst_swap = 0, worst_tele = 0;
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  for (int t = 0; t < 20; ++t) {
    StateVector s = ground;
    random_probe_state(s, probe, pick(rng));
    const StateVector original = s;
    swap_in(s, probe, ops);
    StateVector back = s;
    swap_out(back, probe, ops);
    worst_swap = std::max(worst_swap, 1 - fidelity(back, original));

    const double theta = angle(rng);
    const PauliString& axis = t % 2 ? ops.x : ops.z;
    StateVector direct = s, tele = s;
    direct.apply_pauli_exponential(axis, theta);
    teleport_rotation(tele, probe, axis, theta, t % 4 < 2 ? TeleportCircuit::x_type : TeleportCircuit::z_type, rng);
    worst_tele = std::max(worst_tele, 1 - fidelity(direct, tele));
  }
  ok = ok && worst_swap <= 1e-12 && worst_tele <= 1e-10;
  return {ok, std::to_string(swaps) + " stabilizer roundtrips exact; statevector 1-F swap=" + num(worst_swap) +
                  " teleport=" + num(worst_tele)};
}

// ---------------------------------------------------------------------------
// 5. Geometric gate.

std::string branch_table(const GeometricGateReport& r) {
  std::ostringstream o;
  o << "[";
  for (int n = 0; n < 2; ++n) {
    for (int k = 0; k < 2; ++k) {
      o << (n || k ? " " : "") << "(" << n << "," << (k ? "-" : "+") << ")=" << cli::fmt_complex(r.phases[n][k]).substr(0, 0)
        << num(std::arg(r.phases[n][k]) / std::numbers::pi, 6) << "pi";
    }
  }
  return o.str() + "]";
}

Outcome geometric_gate() {
  const double ab = solve_controlled_string_abs_alpha_beta();
  const GeometricGateReport r = verify_geometric_gate(geometric_spec_for(ab), 1e-12);
  std::mt19937_64 rng(505);
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<int> sides(3, 12);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    std::vector<cplx> steps;
    cplx sum{0, 0};
    const int n = sides(rng);
    for (int k = 0; k + 1 < n; ++k) {
      steps.push_back({gauss(rng), gauss(rng)});
      sum += steps.back();
    }
    steps.push_back(-sum);
    // Oracle: twice the shoelace area of the vertex polygon, computed here.
    std::vector<cplx> verts{0};
    for (auto s : steps) verts.push_back(verts.back() + s);
    double twice_area = 0;
    for (std::size_t v = 0; v + 1 < verts.size(); ++v) {
      twice_area += verts[v].real() * verts[v + 1].imag() - verts[v + 1].real() * verts[v].imag();
    }
    worst = std::max(worst, std::abs(polygon_phase(steps) - twice_area));
  }
  const GeometricGateReport half_pi = verify_geometric_gate(geometric_spec_for(std::numbers::pi / 2), 1e-12);
  const bool ok = r.matches_up_to_global_phase && worst <= 1e-12;
  std::ostringstream d;
  d << "|ab|=" << num(ab, 12) << " (pi/4=" << num(std::numbers::pi / 4, 12) << ") table " << branch_table(r)
    << " global-phase match=" << (r.matches_up_to_global_phase ? "yes" : "no")
    << " ancilla-frame match=" << (r.matches_up_to_probe_frame ? "yes" : "no") << " (max dev " << num(r.max_deviation)
    << "); polygons max|phase-2A|=" << num(worst) << "; |a|^2=|b|^2=pi/2 table " << branch_table(half_pi)
    << " ratio=" << cli::fmt_complex(half_pi.ratio);
  return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// 6. Fast-noise survival.

Outcome fast_noise() {
  const Lattice lat(LatticeSpec::torus(6));
  NoiseModel model;
  model.xi_h = 0.5;
  model.tau_c = 0.05;
  model.dt = 0.0025;
  const double gamma = model.gamma();
  std::vector<double> gt, grid;
  for (int i = 0; i <= 10; ++i) {
    gt.push_back(0.1 * i);
    grid.push_back(0.1 * i / gamma);
  }
  const std::vector<ParticleSpec> particles = {{Sector::x, lat.face_at(0, 0)}, {Sector::x, lat.face_at(3, 3)}};
  const int trials = 800;
  const auto est = contrast_curve(lat, model, ScheduleSpec{}, grid, trials, particles, 606);
  double worst = 0, worst_rw = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    worst = std::max(worst, std::abs(est.mean_prob[i] - std::exp(-2 * 4 * gt[i])));
    const double rw = oracle::incoherent_return_probability(gt[i]);
    worst_rw = std::max(worst_rw, std::abs(est.mean_prob[i] - rw * rw));
  }
  std::ostringstream d;
  d << "Gamma=" << num(gamma) << " trials=" << trials << " max|P-exp(-2z Gamma tau)|=" << num(worst)
    << " (two-particle joint survival; random-walk oracle dev " << num(worst_rw) << "); P(Gamma tau=0.5)="
    << num(est.mean_prob[5]) << " vs " << num(std::exp(-4.0));
  return {worst <= 0.05, d.str()};
}

// ---------------------------------------------------------------------------
// 7. Echo contrast curves.

Outcome echo_curves() {
  const Lattice lat(LatticeSpec::torus(8));
  NoiseModel model;
  model.xi_h = 1.0;
  model.tau_c = 10.0;
  model.dt = 0.05;
  std::vector<double> grid;
  for (int i = 0; i <= 32; ++i) grid.push_back(0.5 * i);
  const std::vector<ParticleSpec> particles = {{Sector::x, lat.face_at(0, 0)}, {Sector::x, lat.face_at(4, 4)}};
  const int trials = 160;
  const int ns[] = {0, 1, 4, 10};
  std::vector<ContrastEstimate> curves;
  for (int n : ns) {
    curves.push_back(contrast_curve(lat, model, n ? ScheduleSpec{ScheduleFamily::z_pairs, n} : ScheduleSpec{}, grid,
                                    trials, particles, 707));
  }
  // (a) More pulses never worse, within 2 sigma.
  int violations = 0;
  std::string first_violation;
  for (std::size_t a = 0; a + 1 < curves.size(); ++a) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double sigma = std::hypot(curves[a].stderr_[i], curves[a + 1].stderr_[i]);
      if (curves[a + 1].mean[i] < curves[a].mean[i] - 2 * sigma) {
        if (violations++ == 0) {
          first_violation = " (" + curves[a + 1].schedule + " below " + curves[a].schedule + " at tau=" +
                            num(grid[i]) + ": " + num(curves[a + 1].mean[i]) + " vs " + num(curves[a].mean[i]) +
                            ", 2sigma=" + num(2 * sigma) + ")";
        }
      }
    }
  }
  // (b) Static field: echo schedules refocus exactly.
  std::mt19937_64 rng(708);
  std::normal_distribution<double> gauss;
  std::vector<double> field(2 * lat.num_edges());
  for (double& h : field) h = gauss(rng);
  const NoiseRealization stat = NoiseRealization::from_function(
      lat.num_edges(), model.dt, grid.back(),
      [&](Sector s, int e, double) { return field[(s == Sector::x ? 0 : lat.num_edges()) + e]; });
  double static_dev = 0, static_free = 1;
  for (int n : {1, 4, 10}) {
    for (double tau : {3.0, 7.5, 16.0}) {
      const auto sched = build_echo_schedule({ScheduleFamily::z_pairs, n}, tau, lat);
      for (const auto& p : particles) {
        static_dev = std::max(static_dev, 1 - std::abs(survival(evolve_anyon(lat, stat, sched, p.start_cell, p.sector, tau), p.start_cell)));
      }
    }
  }
  static_free = std::abs(survival(evolve_anyon(lat, stat, EchoSchedule{}, particles[0].start_cell, Sector::x, 7.5), particles[0].start_cell));
  // (c) n^3 law: log-contrast ratio n=4 versus n=10 at the first tau with C_4 <= 1/e.
  const auto& c1 = curves[1];
  const auto& c4 = curves[2];
  const auto& c10 = curves[3];
  double t2 = 0, tau_cal = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (c1.mean[i] <= 0.5) {
      tau_cal = grid[i];
      t2 = calibrate_t2(grid[i], c1.mean[i], 1);
      break;
    }
  }
  double ratio = std::nan(""), tau_match = std::nan("");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (c4.mean[i] <= std::exp(-1.0)) {
      tau_match = grid[i];
      ratio = std::log(c4.mean[i]) / std::log(c10.mean[i]);
      break;
    }
  }
  const double target = 15.625;
  const bool law = std::isfinite(ratio) && std::abs(ratio - target) <= 0.25 * target;
  const bool ok = violations == 0 && static_dev <= 1e-8 && law;
  std::ostringstream d;
  d << "ordering violations=" << violations << first_violation << "; static refocus 1-|S|=" << num(static_dev)
    << " (free " << num(static_free) << "); T2=" << num(t2) << " from n=1 at tau=" << num(tau_cal)
    << "; log C4/log C10=" << num(ratio) << " at tau=" << num(tau_match)
    << " (target 15.625 +-25%; effective exponent " << num(std::log(ratio) / std::log(2.5), 3) << " vs 3); C(tau="
    << num(tau_match) << ") n=0,1,4,10: ";
  for (const auto& c : curves) {
    const auto i = static_cast<std::size_t>(std::find(grid.begin(), grid.end(), tau_match) - grid.begin());
    if (i < grid.size()) d << num(c.mean[i]) << " ";
  }
  return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// 8. Quenched anyons.

Outcome quenched() {
  bool enum_ok = true;
  std::mt19937_64 rng(808);
  for (int N = 2; N <= 4; ++N) {
    std::vector<int> faces(N * N);
    for (int f = 0; f < N * N; ++f) faces[f] = f;
    for (int m = 0; m <= N * N; ++m) {
      std::shuffle(faces.begin(), faces.end(), rng);
      const std::vector<int> region(faces.begin(), faces.begin() + m);
      enum_ok = enum_ok && std::abs(quenched_enumeration_oracle(N, region) - quenched_phase_prob(N, m)) <= 1e-15;
    }
  }
  const Lattice lat(LatticeSpec::torus(4));
  const auto faces = face_block(lat, 1, 1, 2, 2);
  const auto verts = vertex_block(lat, 1, 1, 2, 2);
  std::ostringstream d;
  d << "enumeration N=2..4 " << (enum_ok ? "exact" : "MISMATCH") << "; m=m'=4";
  bool mc_ok = true;
  for (double p : {0.1, 0.3}) {
    const auto est = quenched_monte_carlo(lat, faces, verts, p, 4000, p == 0.1 ? 81 : 83);
    const double predicted = quenched_contrast({4, int(faces.size()), int(verts.size()), p});
    const double z = (est.mean - predicted) / est.stderr_;
    mc_ok = mc_ok && std::abs(z) <= 3;
    d << "; p=" << p << ": MC " << num(est.mean) << "+-" << num(est.stderr_) << " vs " << num(predicted) << " (z="
      << num(z, 3) << ")";
  }
  return {enum_ok && mc_ok, d.str()};
}

// ---------------------------------------------------------------------------
// 9. Budgets.

Outcome budgets() {
  std::mt19937_64 rng(909);
  auto logu = [&](double lo, double hi) {
    return std::exp(std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(rng));
  };
  double worst_delta = 0, worst_loss = 0, worst_cross = 0;
  for (int i = 0; i < 50; ++i) {
    const CavityParams c{logu(0.1, 10), logu(1e-4, 1), logu(1e-4, 1), 1.0};
    const int N = std::uniform_int_distribution<int>(1, 64)(rng);
    // Oracle: root of the derivative of kappa tau + N (g/Delta)^2 gamma tau,
    // tau = pi Delta / g^2, written out here independently.
    auto deriv = [&](double D) { return c.kappa * std::numbers::pi / (c.g * c.g) - N * c.gamma * std::numbers::pi / (D * D); };
    const double guess = optimal_detuning(c, N);
    const double D = oracle::bisect(deriv, guess * 1e-3, guess * 1e3);
    const double loss = c.kappa * std::numbers::pi * D / (c.g * c.g) + N * c.gamma * std::numbers::pi / D;
    worst_delta = std::max(worst_delta, std::abs(D - guess) / guess);
    const double P = c.g * c.g / (c.kappa * c.gamma);
    worst_loss = std::max(worst_loss, std::abs(loss - min_photon_loss(N, P)) / loss);

    MemoryBudget b;
    b.delta_h = std::uniform_real_distribution<double>(0, 0.9)(rng);
    b.J = 1;
    b.N = std::uniform_int_distribution<int>(1, 12)(rng);
    b.q = logu(1e-6, 1e-1);
    b.lambda = i % 2 ? 2 * std::numbers::pi : 4 * std::numbers::pi * std::numbers::pi;
    b.P = logu(1e2, 1e8);
    b.epsilon = logu(1e-7, 1e-3);
    const double ts = crossover_time(b);
    // Oracle: bisection root of p(t) - q t.
    const double tr = oracle::bisect([&](double t) { return memory_error(b, t) - b.q * t; }, 0, 4 * ts);
    worst_cross = std::max(worst_cross, std::abs(memory_error(b, ts) - b.q * ts) / (b.q * ts));
    worst_cross = std::max(worst_cross, std::abs(tr - ts) / ts);
  }
  const bool ok = worst_delta <= 1e-9 && worst_loss <= 1e-9 && worst_cross <= 1e-12;
  return {ok, "50 draws: rel dev Delta*=" + num(worst_delta) + " P_loss=" + num(worst_loss) +
                  " crossover=" + num(worst_cross)};
}

// ---------------------------------------------------------------------------
// 10. Z_d charges.

Outcome zd() {
  bool ok = true;
  int checked = 0, matrices = 0;
  for (int d = 2; d <= 7; ++d) {
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        ok = ok && cli::zd_braiding_exponent(d, a, b) == (a * b) % d;
        ++checked;
        if (d > 5) continue;
        // Z^a on sites {0,1}, X^b on sites {1,2}: they overlap on one site.
        const WeylString z = WeylString::z_power(d, {0, 1}, a), x = WeylString::x_power(d, {1, 2}, b);
        const int k = weyl_braiding_phase(z, x);
        const oracle::Mat I = oracle::Mat::Identity(d, d);
        const oracle::Mat Za = oracle::power(oracle::clock(d), a), Xb = oracle::power(oracle::shift(d), b);
        const oracle::Mat Z = oracle::tensor({Za, Za, I}), X = oracle::tensor({I, Xb, Xb});
        const oracle::Mat comm = Z.inverse() * X.inverse() * Z * X;
        const cplx w = std::polar(1.0, 2 * std::numbers::pi * k / d);
        ok = ok && (comm - w * oracle::Mat::Identity(comm.rows(), comm.cols())).norm() < 1e-10;
        ok = ok && k == (a * b) % d;
        ++matrices;
      }
    }
  }
  return {ok, std::to_string(checked) + " (d,a,b) triples on torus strings; " + std::to_string(matrices) +
                  " checked against explicit matrices (d<=5)"};
}

// ---------------------------------------------------------------------------
// 11. Clifford engine versus statevector.

Outcome clifford() {
  std::mt19937_64 rng(1111);
  int mismatches = 0, random_meas = 0, plus = 0, det_wrong = 0, post_wrong = 0;
  double expected_plus = 0, var = 0;
  for (int c = 0; c < 200; ++c) {
    const int n = 1 + c % 12;
    Tableau t(n);
    StateVector s(n);
    for (const auto& op : random_clifford_circuit(n, 6 * n + 10, rng)) {
      apply_clifford(t, op);
      apply_clifford(s, op);
    }
    for (int k = 0; k < 10; ++k) {
      const PauliString p = random_pauli(n, rng);
      mismatches += std::abs(double(t.expectation(p)) - s.expectation(p).real()) > 1e-10;
    }
    // Sample measurement of a random Pauli on copies of the tableau.
    const PauliString p = random_pauli(n, rng);
    const double prob = (1 + s.expectation(p).real()) / 2;
    const int shots = 100;
    for (int k = 0; k < shots; ++k) {
      Tableau copy = t;
      const int m = copy.measure_pauli(p, rng);
      if (prob > 1 - 1e-12 || prob < 1e-12) {
        det_wrong += (m == 1) != (prob > 0.5);
      } else {
        ++random_meas;
        plus += m == 1;
        expected_plus += prob;
        var += prob * (1 - prob);
      }
      if (k == 0) {
        // Post-measurement states agree.
        StateVector post = s;
        post.project_pauli(p, m);
        for (int j = 0; j < 4; ++j) {
          const PauliString q = random_pauli(n, rng);
          post_wrong += std::abs(double(copy.expectation(q)) - post.expectation(q).real()) > 1e-10;
        }
      }
    }
  }
  const double z = var > 0 ? (plus - expected_plus) / std::sqrt(var) : 0;
  const bool ok = mismatches == 0 && det_wrong == 0 && post_wrong == 0 && std::abs(z) <= 3;
  return {ok, "200 circuits n<=12: expectation mismatches=" + std::to_string(mismatches) +
                  " post-measurement mismatches=" + std::to_string(post_wrong) + " deterministic errors=" +
                  std::to_string(det_wrong) + "; random outcomes " + std::to_string(plus) + "/" +
                  std::to_string(random_meas) + " (+1) z=" + num(z, 3)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "braiding statistics", 1.0, braiding_statistics},
      {2, "dynamical phase", 30.0, dynamical_phase},
      {3, "fringe contract", 0, fringe_contract},
      {4, "memory roundtrip", 10.0, memory_roundtrip},
      {5, "geometric gate", 0, geometric_gate},
      {6, "fast-noise survival", 300.0, fast_noise},
      {7, "echo contrast curves", 600.0, echo_curves},
      {8, "quenched-anyon contrast", 120.0, quenched},
      {9, "budgets", 0, budgets},
      {10, "Z_d charges", 10.0, zd},
      {11, "Clifford engine", 0, clifford},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  bool all = true;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.budget_s <= 0 || secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    all = all && pass;
    std::printf("%s criterion %d (%s): %s [%.2fs%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                in_time ? "" : ", over time budget");
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
