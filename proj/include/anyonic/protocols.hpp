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
#include <complex>
#include <istream>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "anyonic/errors.hpp"
#include "anyonic/lattice.hpp"
#include "anyonic/pauli.hpp"
#include "anyonic/statevector.hpp"
#include "anyonic/tableau.hpp"

namespace anyonic {

// ---------------------------------------------------------------------------
// Echo pulses.

/// Global time-reversal pulses. `z`/`x` act on every edge; the `_even`/`_odd`
/// variants skip the opposite-parity boundary class (smooth edges for z
/// pulses, rough edges for x pulses) so they commute with the weight-3
/// boundary stabilizers of a planar code. On a torus they equal `z`/`x`.
enum class EchoKind { z, x, z_even, z_odd, x_even, x_odd };

inline bool is_z_echo(EchoKind k) { return k == EchoKind::z || k == EchoKind::z_even || k == EchoKind::z_odd; }

inline std::string echo_name(EchoKind k) {
  switch (k) {
    case EchoKind::z: return "Z";
    case EchoKind::x: return "X";
    case EchoKind::z_even: return "Z_E";
    case EchoKind::z_odd: return "Z_O";
    case EchoKind::x_even: return "X_E";
    case EchoKind::x_odd: return "X_O";
  }
  return "?";
}

inline EchoKind parse_echo(const std::string& name) {
  for (EchoKind k : {EchoKind::z, EchoKind::x, EchoKind::z_even, EchoKind::z_odd, EchoKind::x_even, EchoKind::x_odd}) {
    if (echo_name(k) == name) return k;
  }
  throw ConfigError("unknown echo pulse '" + name + "'");
}

/// Edges a pulse acts on.
inline std::vector<int> echo_mask(const Lattice& lat, EchoKind k) {
  std::optional<BoundaryClass> skip;
  switch (k) {
    case EchoKind::z_even: skip = BoundaryClass::odd_smooth; break;
    case EchoKind::z_odd: skip = BoundaryClass::even_smooth; break;
    case EchoKind::x_even: skip = BoundaryClass::odd_rough; break;
    case EchoKind::x_odd: skip = BoundaryClass::even_rough; break;
    default: break;
  }
  std::vector<int> out;
  for (int e = 0; e < lat.num_edges(); ++e) {
    if (skip && !lat.is_torus()) {
      auto cls = is_z_echo(k) ? lat.smooth_class(e) : lat.rough_class(e);
      if (cls == skip) continue;
    }
    out.push_back(e);
  }
  return out;
}

inline PauliString echo_operator(const Lattice& lat, EchoKind k) {
  auto mask = echo_mask(lat, k);
  return is_z_echo(k) ? PauliString::z_on(mask) : PauliString::x_on(mask);
}

// ---------------------------------------------------------------------------
// Braid programs.

struct StringStep {
  StringPath path;
};
struct DelayStep {
  double t = 0;
};
struct EchoStep {
  EchoKind kind = EchoKind::z;
};
using BraidStep = std::variant<StringStep, DelayStep, EchoStep>;

/// Interferometer program: strings are applied conditionally on the probe,
/// delays evolve under H_surf, echoes act unconditionally on the memory.
struct BraidProgram {
  std::shared_ptr<const Lattice> lattice;
  std::vector<BraidStep> steps;
  EnergyLedger couplings;

  BraidProgram() = default;
  BraidProgram(const Lattice& lat, EnergyLedger c = {})
      : lattice(std::make_shared<const Lattice>(lat)), couplings(c) {}

  const Lattice& lat() const { return *lattice; }
  BraidProgram& string(StringPath p) {
    steps.push_back(StringStep{std::move(p)});
    return *this;
  }
  BraidProgram& delay(double t) {
    steps.push_back(DelayStep{t});
    return *this;
  }
  BraidProgram& echo(EchoKind k) {
    steps.push_back(EchoStep{k});
    return *this;
  }
};

/// Parses the program text format, one step per line:
///   Z v1 v2 ...   z-string through vertices (shortest segments concatenated)
///   X f1 f2 ...   x-string through faces
///   ZE e1 e2 ...  z-string on explicit edges (XE likewise)
///   DELAY t
///   ECHO <Z|X|Z_E|Z_O|X_E|X_O>
/// Blank lines and `#` comments are ignored.
inline BraidProgram parse_program(std::istream& in, const Lattice& lat, EnergyLedger couplings = {}) {
  BraidProgram prog(lat, couplings);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ConfigError("program line " + std::to_string(lineno) + ": " + msg);
  };
  auto read_ints = [&](std::istringstream& ss) {
    std::vector<int> v;
    std::string tok;
    while (ss >> tok) {
      try {
        std::size_t used = 0;
        int x = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        v.push_back(x);
      } catch (const std::logic_error&) {
        fail("expected an integer, got '" + tok + "'");
      }
    }
    return v;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    std::string op;
    if (!(ss >> op)) continue;
    try {
      if (op == "Z" || op == "X") {
        const StringKind kind = op == "Z" ? StringKind::z : StringKind::x;
        auto cells = read_ints(ss);
        if (cells.size() < 2) fail(op + " needs at least two cells");
        std::vector<int> edges;
        for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
          auto seg = shortest_string(lat, kind, cells[i], cells[i + 1]);
          edges.insert(edges.end(), seg.edges.begin(), seg.edges.end());
        }
        prog.string(make_string(lat, kind, edges));
      } else if (op == "ZE" || op == "XE") {
        auto edges = read_ints(ss);
        if (edges.empty()) fail(op + " needs at least one edge");
        prog.string(make_string(lat, op == "ZE" ? StringKind::z : StringKind::x, edges));
      } else if (op == "DELAY") {
        double t;
        std::string rest;
        if (!(ss >> t) || (ss >> rest)) fail("DELAY takes one number");
        if (!std::isfinite(t) || t < 0) fail("DELAY must be finite and non-negative");
        prog.delay(t);
      } else if (op == "ECHO") {
        std::string name, rest;
        if (!(ss >> name) || (ss >> rest)) fail("ECHO takes one pulse name");
        prog.echo(parse_echo(name));
      } else {
        fail("unknown instruction '" + op + "'");
      }
    } catch (const UsageError& e) {
      fail(e.what());
    } catch (const GeometryError& e) {
      fail(e.what());
    }
  }
  return prog;
}

inline BraidProgram parse_program(const std::string& text, const Lattice& lat, EnergyLedger couplings = {}) {
  std::istringstream in(text);
  return parse_program(in, lat, couplings);
}

// ---------------------------------------------------------------------------
// Coherence and fringes.

struct Coherence {
  cplx alpha{1, 0};
  /// Total phase theta_tot = arg(alpha) in (-pi, pi]; a signed zero
  /// imaginary part does not select -pi.
  double theta_tot() const { return std::arg(cplx(alpha.real(), alpha.imag() == 0 ? 0.0 : alpha.imag())); }
  double contrast() const { return std::abs(alpha); }
};

struct FringeCurve {
  std::vector<double> phi;
  std::vector<double> values;
};

inline std::vector<double> phi_grid(int points) {
  if (points < 1) throw UsageError("phi grid needs at least one point");
  std::vector<double> g(points);
  for (int k = 0; k < points; ++k) g[k] = 2 * std::numbers::pi * k / points;
  return g;
}

/// <sigma_phi> = |alpha| cos(arg(alpha) - phi) = Re(e^{-i phi} alpha).
inline FringeCurve fringe(const Coherence& c, const std::vector<double>& grid) {
  FringeCurve f;
  f.phi = grid;
  for (double phi : grid) f.values.push_back((std::polar(1.0, -phi) * c.alpha).real());
  return f;
}

struct InterferometryOptions {
  /// Run the probe as an explicit qubit with controlled strings instead of
  /// reading alpha from a Pauli expectation.
  bool materialize_probe = false;
  /// Keep the (-i)^{|C|} factor of the raw cavity-mediated string on branch 1.
  bool cavity_phase = false;
};

namespace detail {

inline cplx ipow(int k) {
  static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((k % 4) + 4) % 4];
}

/// Hermitian part sigma and power k with P = i^k sigma.
inline std::pair<PauliString, int> split_phase(const PauliString& p) {
  PauliString herm = p;
  herm.set_phase(0);
  return {herm, p.phase()};
}

}  // namespace detail

/// Coherence of the two probe branches,
///   alpha = <xi| P0^dagger P1 |xi> * prod_k exp(-i dE_k t_k),
/// where P1 is the ordered product of strings and echoes, P0 that of the
/// echoes alone and dE_k the energy of branch 1 minus branch 0 during delay k,
/// read from the branch syndromes.
inline Coherence run_interferometry(const BraidProgram& prog, const Tableau& initial,
                                    const InterferometryOptions& opt = {}) {
  const Lattice& lat = prog.lat();
  if (initial.num_qubits() < lat.num_qubits()) throw UsageError("initial state smaller than lattice");
  Tableau branch1 = initial, branch0 = initial;
  double energy0 = 0;
  bool energy0_valid = false;  // branch 0 syndrome unchanged since last read
  double eta = 0;  // accumulated dynamical phase
  PauliString p1, p0;
  int cavity_power = 0;

  const int probe = initial.num_qubits();
  std::optional<Tableau> joint;
  if (opt.materialize_probe) {
    joint = initial.with_extra_qubits(1);
    joint->h(probe);
  }

  for (const auto& step : prog.steps) {
    if (auto* s = std::get_if<StringStep>(&step)) {
      PauliString p = from_string_path(s->path);
      branch1.apply_pauli(p);
      p1 = p * p1;
      cavity_power += static_cast<int>(p.weight());
      if (joint) {
        joint->apply_controlled_pauli(probe, p);
        if (opt.cavity_phase) {
          for (std::size_t k = 0; k < p.weight(); ++k) joint->s_dag(probe);
        }
      }
    } else if (auto* e = std::get_if<EchoStep>(&step)) {
      PauliString p = echo_operator(lat, e->kind);
      branch1.apply_pauli(p);
      branch0.apply_pauli(p);
      p1 = p * p1;
      p0 = p * p0;
      energy0_valid = false;
      if (joint) joint->apply_pauli(p);
    } else if (auto* d = std::get_if<DelayStep>(&step)) {
      if (d->t == 0) continue;
      if (!energy0_valid) {
        energy0 = relative_energy(syndrome(branch0, lat), prog.couplings);
        energy0_valid = true;
      }
      const double e1 = relative_energy(syndrome(branch1, lat), prog.couplings);
      eta -= (e1 - energy0) * d->t;
    }
  }

  cplx pauli_part;
  if (joint) {
    PauliString xa = PauliString::single(probe, 'X'), ya = PauliString::single(probe, 'Y');
    pauli_part = cplx(joint->expectation(xa), joint->expectation(ya));
  } else {
    auto [herm, k] = detail::split_phase(inverse(p0) * p1);
    pauli_part = detail::ipow(k) * double(initial.expectation(herm));
    if (opt.cavity_phase) pauli_part *= detail::ipow(-cavity_power);
  }
  return Coherence{std::polar(1.0, eta) * pauli_part};
}

/// Brute-force two-branch interferometer on a statevector: probe in |+>,
/// controlled strings, exact H_surf evolution for delays, echoes on the
/// memory; alpha = <X_A> + i <Y_A>.
inline Coherence run_interferometry_dense(const BraidProgram& prog, const StateVector& memory,
                                          const InterferometryOptions& opt = {}) {
  const Lattice& lat = prog.lat();
  const int probe = memory.num_qubits();
  StateVector s = memory.with_extra_qubits(1);
  s.h(probe);
  for (const auto& step : prog.steps) {
    if (auto* st = std::get_if<StringStep>(&step)) {
      PauliString p = from_string_path(st->path);
      s.apply_controlled_pauli(probe, p);
      if (opt.cavity_phase) {
        for (std::size_t k = 0; k < p.weight(); ++k) s.s_dag(probe);
      }
    } else if (auto* e = std::get_if<EchoStep>(&step)) {
      s.apply_pauli(echo_operator(lat, e->kind));
    } else if (auto* d = std::get_if<DelayStep>(&step)) {
      s.evolve_hsurf(lat, prog.couplings.U, prog.couplings.J, d->t);
    }
  }
  const cplx x = s.expectation(PauliString::single(probe, 'X'));
  const cplx y = s.expectation(PauliString::single(probe, 'Y'));
  return Coherence{cplx(x.real(), y.real())};
}

// ---------------------------------------------------------------------------
// The braiding experiment of the interferometry figure.

enum class BraidVariant { tangled, untangled };

/// The four string pieces l1, l2', l3, l4': l1 + l3 is a closed z-loop and
/// l2' + l4' a closed x-loop. In the tangled variant l2' crosses l3 once, so
/// the x-particle created by l2' is encircled by the z-loop.
struct BraidLoops {
  StringPath l1, l2, l3, l4;
};

inline BraidLoops braid_loops(const Lattice& lat, BraidVariant variant) {
  auto H = [&](int r, int c) { return lat.horizontal_edge(r, c); };
  auto V = [&](int r, int c) { return lat.vertical_edge(r, c); };
  auto z = [&](std::vector<int> e) { return make_string(lat, StringKind::z, e); };
  auto x = [&](std::vector<int> e) { return make_string(lat, StringKind::x, e); };
  const bool tangled = variant == BraidVariant::tangled;
  if (lat.is_torus() && lat.size() >= 4) {
    // z-loop around face (1,1).
    BraidLoops b{z({H(1, 1), V(1, 2)}), {}, z({H(2, 1), V(1, 1)}), {}};
    if (tangled) {
      // x-loop around vertex (2,2): faces (1,1) -> (2,1) -> (2,2) -> (1,2) -> (1,1).
      b.l2 = x({H(2, 1)});
      b.l4 = x({V(2, 2), H(2, 2), V(1, 2)});
    } else {
      // x-loop around vertex (3,3), disjoint from the z-loop.
      b.l2 = x({V(2, 3), H(3, 3)});
      b.l4 = x({V(3, 3), H(3, 2)});
    }
    return b;
  }
  if (!lat.is_torus() && lat.size() == 3) {
    if (tangled) {
      // z-loop around face (0,1), x-loop around vertex (1,1).
      return {z({H(0, 1), V(0, 1)}), x({H(1, 1)}), z({H(1, 1), V(0, 0)}), x({V(1, 1), H(1, 2), V(0, 1)})};
    }
    // z-loop around the boundary face (0,0), x-loop around vertex (1,1).
    return {z({H(0, 0)}), x({V(0, 1), H(1, 2)}), z({V(0, 0), H(1, 0)}), x({V(1, 1), H(1, 1)})};
  }
  if (!lat.is_torus() && lat.size() == 2) {
    // z-loop around face (0,0), x-loop around vertex (0,0); the untangled
    // order creates the x-particle on the far face.
    if (tangled) return {z({H(0, 0)}), x({V(0, 0)}), z({V(0, 0), H(1, 0)}), x({H(0, 0), H(0, 1)})};
    return {z({H(0, 0)}), x({H(0, 1)}), z({V(0, 0), H(1, 0)}), x({H(0, 0), V(0, 0)})};
  }
  throw UsageError("braid loops are defined for torus(N>=4), planar(2) and planar(3)");
}

/// S^x_{l4'} U_{t3} S^z_{l3} U_{t2} S^x_{l2'} U_{t1} S^z_{l1}.
inline BraidProgram braid_program(const Lattice& lat, BraidVariant variant, double t1 = 0, double t2 = 0,
                                  double t3 = 0, EnergyLedger couplings = {}) {
  BraidLoops b = braid_loops(lat, variant);
  BraidProgram prog(lat, couplings);
  prog.string(b.l1).delay(t1).string(b.l2).delay(t2).string(b.l3).delay(t3).string(b.l4);
  return prog;
}

/// Closed form for the tangled/untangled program: sign * exp(-i eta) with
/// eta = dE1 t1 + dE2 t2 + dE3 t3 read off the syndromes each piece leaves.
inline cplx braid_alpha_closed_form(const Lattice& lat, BraidVariant variant, double t1, double t2, double t3,
                                    EnergyLedger c) {
  BraidLoops b = braid_loops(lat, variant);
  auto count = [](const StringPath& p) { return static_cast<double>(p.endpoints.size()); };
  const double e1 = 2 * c.U * count(b.l1);
  const double e2 = e1 + 2 * c.J * count(b.l2);
  const double e3 = 2 * c.J * count(b.l2);
  const double sign = crossing_parity(b.l3, b.l2) == Parity::odd ? -1.0 : 1.0;
  return sign * std::polar(1.0, -(e1 * t1 + e2 * t2 + e3 * t3));
}

/// Random program over `lat`: strings on random edge subsets (either kind),
/// random delays and, optionally, echo pulses.
template <class Rng>
BraidProgram random_program(const Lattice& lat, Rng& rng, int steps, EnergyLedger couplings, bool echoes = true) {
  BraidProgram prog(lat, couplings);
  std::uniform_int_distribution<int> kind(0, echoes ? 3 : 2);
  std::uniform_real_distribution<double> delay(0.0, 2.0);
  std::bernoulli_distribution coin(0.35);
  static const EchoKind pulses[] = {EchoKind::z, EchoKind::x, EchoKind::z_even,
                                    EchoKind::z_odd, EchoKind::x_even, EchoKind::x_odd};
  std::uniform_int_distribution<int> pulse(0, 5);
  for (int s = 0; s < steps; ++s) {
    const int k = kind(rng);
    if (k <= 1) {
      std::vector<int> edges;
      for (int e = 0; e < lat.num_edges(); ++e) {
        if (coin(rng)) edges.push_back(e);
      }
      prog.string(make_string(lat, k == 0 ? StringKind::z : StringKind::x, edges));
    } else if (k == 2) {
      prog.delay(delay(rng));
    } else {
      prog.echo(pulses[pulse(rng)]);
    }
  }
  return prog;
}

/// Whether `cell` holds a particle of the type a deformation of string step
/// `step` would sweep across (x-particles on faces for z-strings, z-particles
/// on vertices for x-strings), in branch 1 just before that step. Deforming
/// over an occupied cell flips the sign of alpha; otherwise alpha is unchanged.
inline bool deformation_cell_occupied(const BraidProgram& prog, const Tableau& initial, std::size_t step,
                                      int cell) {
  const auto& target = std::get<StringStep>(prog.steps.at(step));
  Tableau t = initial;
  for (std::size_t k = 0; k < step; ++k) {
    if (auto* s = std::get_if<StringStep>(&prog.steps[k])) t.apply_pauli(from_string_path(s->path));
    if (auto* e = std::get_if<EchoStep>(&prog.steps[k])) t.apply_pauli(echo_operator(prog.lat(), e->kind));
  }
  const Lattice& lat = prog.lat();
  PauliString stab = target.path.kind == StringKind::z ? face_stabilizer(lat, cell) : vertex_stabilizer(lat, cell);
  return t.expectation(stab) < 0;
}

/// Program with string step `step` multiplied by the stabilizer around `cell`.
inline BraidProgram deform_step(const BraidProgram& prog, std::size_t step, int cell) {
  BraidProgram out = prog;
  auto& s = std::get<StringStep>(out.steps.at(step));
  s.path = deform_string(prog.lat(), s.path, cell);
  return out;
}

// ---------------------------------------------------------------------------
// Memory access.

/// Logical operator pair of one encoded qubit.
struct LogicalOps {
  PauliString z;
  PauliString x;
};

inline LogicalOps logical_ops(const Lattice& lat, int k = 0) {
  auto pairs = logical_operators(lat);
  if (k < 0 || k >= static_cast<int>(pairs.size())) throw UsageError("logical qubit index out of range");
  return {from_string_path(pairs[k].z), from_string_path(pairs[k].x)};
}

inline double real_expectation(const Tableau& t, const PauliString& p) { return t.expectation(p); }
inline double real_expectation(const StateVector& s, const PauliString& p) { return s.expectation(p).real(); }

namespace detail {
template <class Engine>
void require_plus_one(const Engine& e, const PauliString& p, const char* what) {
  if (std::abs(real_expectation(e, p) - 1.0) > 1e-9) throw ContractError(what);
}
}  // namespace detail

/// SWAP_in = H_A . Lambda[Z~] . H_A . Lambda[X~] (rightmost first): moves the
/// probe state onto the logical qubit and leaves the probe in |0>.
template <class Engine>
void swap_in(Engine& e, int probe, const LogicalOps& ops) {
  detail::require_plus_one(e, ops.z, "swap_in: memory is not in |0~>");
  e.apply_controlled_pauli(probe, ops.x);
  e.h(probe);
  e.apply_controlled_pauli(probe, ops.z);
  e.h(probe);
}

/// SWAP_out = Lambda[X~] . H_A . Lambda[Z~] . H_A (rightmost first): moves the
/// logical state back to the probe and leaves the memory in |0~>.
template <class Engine>
void swap_out(Engine& e, int probe, const LogicalOps& ops) {
  detail::require_plus_one(e, PauliString::single(probe, 'Z'), "swap_out: probe is not in |0>");
  e.h(probe);
  e.apply_controlled_pauli(probe, ops.z);
  e.h(probe);
  e.apply_controlled_pauli(probe, ops.x);
}

/// Circuit used to teleport exp(i theta S) onto the memory.
///  x_type: probe |+>, Lambda[S], exp(i theta X_A), measure Z_A.
///  z_type: probe |0>, H_A Lambda[S] H_A, exp(i theta Z_A), H_A, measure Z_A.
/// Outcome -1 is corrected by applying S.
enum class TeleportCircuit { x_type, z_type };

/// Applies exp(i theta S) to the memory through a probe qubit in |0>. Returns
/// the measured probe outcome; the probe is reset to |0> afterwards.
template <class Rng>
int teleport_rotation(StateVector& s, int probe, const PauliString& axis, double theta, TeleportCircuit circuit,
                      Rng& rng) {
  if (!axis.is_hermitian()) throw UsageError("teleport_rotation: axis must be Hermitian");
  if (!axis.get(probe).is_identity()) throw UsageError("teleport_rotation: probe lies on the axis string");
  detail::require_plus_one(s, PauliString::single(probe, 'Z'), "teleport_rotation: probe is not in |0>");
  s.h(probe);
  s.apply_controlled_pauli(probe, axis);
  if (circuit == TeleportCircuit::x_type) {
    s.apply_pauli_exponential(PauliString::single(probe, 'X'), theta);
  } else {
    s.h(probe);
    s.apply_pauli_exponential(PauliString::single(probe, 'Z'), theta);
    s.h(probe);
  }
  const int outcome = s.measure_pauli(PauliString::single(probe, 'Z'), rng);
  if (outcome < 0) {
    s.apply_pauli(axis);
    s.x(probe);
  }
  return outcome;
}

}  // namespace anyonic
