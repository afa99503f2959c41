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

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "anyonic/protocols.hpp"

using namespace anyonic;

namespace {

Tableau ground(const Lattice& lat) { return prepare_ground_state(lat, {}, 11); }

}  // namespace

TEST(Braid, TangledAndUntangled) {
  for (const auto& spec : {LatticeSpec::torus(4), LatticeSpec::torus(6), LatticeSpec::planar(2), LatticeSpec::planar(3)}) {
    const Lattice lat(spec);
    EXPECT_EQ(run_interferometry(braid_program(lat, BraidVariant::tangled), ground(lat)).alpha, cplx(-1, 0));
    EXPECT_EQ(run_interferometry(braid_program(lat, BraidVariant::untangled), ground(lat)).alpha, cplx(1, 0));
  }
  EXPECT_THROW(braid_loops(Lattice(LatticeSpec::torus(3)), BraidVariant::tangled), UsageError);
}

TEST(Braid, EmptyProgramIsTrivial) {
  const Lattice lat(LatticeSpec::torus(4));
  EXPECT_EQ(run_interferometry(BraidProgram(lat), ground(lat)).alpha, cplx(1, 0));
}

TEST(Braid, DelaysGiveTheSyndromeEnergyPhase) {
  const Lattice lat(LatticeSpec::torus(4));
  const EnergyLedger c{0.7, 1.3};
  const double t1 = 0.4, t2 = 1.1, t3 = 0.25;
  for (auto v : {BraidVariant::tangled, BraidVariant::untangled}) {
    const cplx a = run_interferometry(braid_program(lat, v, t1, t2, t3, c), ground(lat)).alpha;
    EXPECT_NEAR(std::abs(a - braid_alpha_closed_form(lat, v, t1, t2, t3, c)), 0.0, 1e-12);
  }
  // Tangled on torus(4): l1 leaves two z-particles, l2' adds two x-particles,
  // l3 annihilates the z pair.
  const double expect = -(4 * c.U * t1 + (4 * c.U + 4 * c.J) * t2 + 4 * c.J * t3);
  const cplx a = run_interferometry(braid_program(lat, BraidVariant::tangled, t1, t2, t3, c), ground(lat)).alpha;
  EXPECT_NEAR(std::abs(a - (-std::polar(1.0, expect))), 0.0, 1e-12);
}

TEST(Braid, MaterializedProbeAgrees) {
  std::mt19937_64 rng(4);
  const Lattice lat(LatticeSpec::planar(3));
  const Tableau g = ground(lat);
  for (int k = 0; k < 30; ++k) {
    const auto prog = random_program(lat, rng, 6, EnergyLedger{}, true);
    InterferometryOptions opt;
    opt.materialize_probe = true;
    const cplx a = run_interferometry(prog, g).alpha, b = run_interferometry(prog, g, opt).alpha;
    EXPECT_NEAR(std::abs(a - b), 0.0, 1e-12);
    opt.cavity_phase = true;
    InterferometryOptions cav;
    cav.cavity_phase = true;
    EXPECT_NEAR(std::abs(run_interferometry(prog, g, opt).alpha - run_interferometry(prog, g, cav).alpha), 0.0, 1e-12);
  }
}

TEST(Braid, DenseEngineAgreesWithEchoes) {
  std::mt19937_64 rng(8);
  const Lattice lat(LatticeSpec::planar(2));
  const Tableau g = ground(lat);
  const StateVector s = state_from_tableau(g);
  for (int k = 0; k < 40; ++k) {
    const auto prog = random_program(lat, rng, 9, EnergyLedger{1.0, 0.6}, true);
    EXPECT_NEAR(std::abs(run_interferometry(prog, g).alpha - run_interferometry_dense(prog, s).alpha), 0.0, 1e-10);
  }
}

TEST(Braid, DeformationOverOccupiedCellFlipsSign) {
  const Lattice lat(LatticeSpec::torus(4));
  const Tableau g = ground(lat);
  const auto prog = braid_program(lat, BraidVariant::untangled);
  const cplx ref = run_interferometry(prog, g).alpha;
  int flips = 0;
  for (std::size_t step : {0u, 2u, 4u, 6u}) {
    const StringKind kind = std::get<StringStep>(prog.steps[step]).path.kind;
    const int cells = kind == StringKind::z ? lat.num_faces() : lat.num_vertices();
    for (int c = 0; c < cells; ++c) {
      const cplx a = run_interferometry(deform_step(prog, step, c), g).alpha;
      if (deformation_cell_occupied(prog, g, step, c)) {
        EXPECT_EQ(a, -ref);
        ++flips;
      } else {
        EXPECT_EQ(a, ref);
      }
    }
  }
  EXPECT_GT(flips, 0);
}

TEST(Fringe, MaximumAtThetaTot) {
  const Coherence c{std::polar(0.8, -2.0)};
  const auto f = fringe(c, phi_grid(720));
  const auto it = std::max_element(f.values.begin(), f.values.end());
  EXPECT_NEAR(std::remainder(f.phi[it - f.values.begin()] - c.theta_tot(), 2 * std::numbers::pi), 0.0,
              std::numbers::pi / 720 + 1e-12);
  EXPECT_NEAR(*it, 0.8, 1e-4);
  EXPECT_THROW(phi_grid(0), UsageError);
}

TEST(Program, ParsesTextFormat) {
  const Lattice lat(LatticeSpec::torus(4));
  const std::string text =
      "# tangled braid pieces on torus(4)\n"
      "ZE 5 26\n"
      "DELAY 0.5\n"
      "X 5 9\n"
      "ECHO Z\n"
      "Z 0 1 2\n";
  const auto prog = parse_program(text, lat);
  ASSERT_EQ(prog.steps.size(), 5u);
  EXPECT_EQ(std::get<StringStep>(prog.steps[0]).path.edges.size(), 2u);
  EXPECT_DOUBLE_EQ(std::get<DelayStep>(prog.steps[1]).t, 0.5);
  EXPECT_EQ(std::get<StringStep>(prog.steps[2]).path.endpoints, (std::vector<int>{5, 9}));
  EXPECT_EQ(std::get<EchoStep>(prog.steps[3]).kind, EchoKind::z);
  EXPECT_EQ(std::get<StringStep>(prog.steps[4]).path.endpoints, (std::vector<int>{0, 2}));
}

TEST(Program, ParseErrorsCarryLineNumbers) {
  const Lattice lat(LatticeSpec::torus(4));
  try {
    parse_program("DELAY 1\nFOO 3\n", lat);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(parse_program("DELAY -1\n", lat), ConfigError);
  EXPECT_THROW(parse_program("ECHO Q\n", lat), ConfigError);
  EXPECT_THROW(parse_program("Z 3\n", lat), ConfigError);
  EXPECT_THROW(parse_program("ZE 99\n", lat), ConfigError);
}

TEST(Echo, MasksAndOperators) {
  const Lattice planar(LatticeSpec::planar(3));
  const auto all = echo_mask(planar, EchoKind::z);
  EXPECT_EQ(static_cast<int>(all.size()), planar.num_edges());
  const auto ze = echo_mask(planar, EchoKind::z_even), zo = echo_mask(planar, EchoKind::z_odd);
  EXPECT_LT(ze.size(), all.size());
  EXPECT_LT(zo.size(), all.size());
  // Z-type echoes commute with every face stabilizer.
  for (auto k : {EchoKind::z, EchoKind::z_even, EchoKind::z_odd}) {
    for (int f = 0; f < planar.num_faces(); ++f) {
      EXPECT_EQ(commutation_phase(echo_operator(planar, k), face_stabilizer(planar, f)), 1);
    }
  }
  const Lattice torus(LatticeSpec::torus(4));
  EXPECT_EQ(echo_mask(torus, EchoKind::x_odd), echo_mask(torus, EchoKind::x));
  EXPECT_EQ(parse_echo("Z_E"), EchoKind::z_even);
  EXPECT_THROW(parse_echo("W"), ConfigError);
}

TEST(Memory, SwapRoundTripOnTableau) {
  const Lattice lat(LatticeSpec::torus(4));
  const auto ops = logical_ops(lat, 1);
  const int probe = lat.num_qubits();
  Tableau t = ground(lat).with_extra_qubits(1);
  t.h(probe);
  t.s(probe);  // probe in |+i>
  swap_in(t, probe, ops);
  EXPECT_EQ(t.expectation(PauliString::single(probe, 'Z')), 1);
  // The logical qubit now carries |+i>: Y~ = i X~ Z~.
  PauliString y = ops.x * ops.z;
  y.add_phase(1);
  EXPECT_EQ(t.expectation(y), 1);
  swap_out(t, probe, ops);
  EXPECT_EQ(t.expectation(PauliString::single(probe, 'Y')), 1);
  EXPECT_EQ(t.expectation(ops.z), 1);
}

TEST(Memory, SwapPreconditions) {
  const Lattice lat(LatticeSpec::planar(2));
  const auto ops = logical_ops(lat);
  const int probe = lat.num_qubits();
  Tableau t = ground(lat).with_extra_qubits(1);
  t.apply_pauli(ops.x);  // memory in |1~>
  EXPECT_THROW(swap_in(t, probe, ops), ContractError);
  Tableau u = ground(lat).with_extra_qubits(1);
  u.h(probe);
  EXPECT_THROW(swap_out(u, probe, ops), ContractError);
}

TEST(Memory, TeleportedRotation) {
  std::mt19937_64 rng(12);
  const Lattice lat(LatticeSpec::planar(2));
  const auto ops = logical_ops(lat);
  const int probe = lat.num_qubits();
  const StateVector g = state_from_tableau(ground(lat).with_extra_qubits(1));
  for (auto circuit : {TeleportCircuit::x_type, TeleportCircuit::z_type}) {
    for (const auto* axis : {&ops.x, &ops.z}) {
      for (double theta : {0.3, -1.2, 2.5}) {
        StateVector a = g, b = g;
        a.apply_pauli_exponential(*axis, theta);
        teleport_rotation(b, probe, *axis, theta, circuit, rng);
        EXPECT_NEAR(fidelity(a, b), 1.0, 1e-12);
      }
    }
  }
}
