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

#include <random>
#include <vector>

#include "anyonic/errors.hpp"
#include "anyonic/statevector.hpp"
#include "anyonic/tableau.hpp"

namespace anyonic {

/// One Clifford gate; `b` is the target of two-qubit gates.
struct CliffordOp {
  Gate gate = Gate::H;
  int a = 0;
  int b = -1;
};

template <class Rng>
std::vector<CliffordOp> random_clifford_circuit(int n, int length, Rng& rng) {
  if (n < 1) throw UsageError("random_clifford_circuit needs at least one qubit");
  static const Gate one[] = {Gate::H, Gate::S, Gate::Sdg, Gate::X, Gate::Y, Gate::Z};
  static const Gate two[] = {Gate::CX, Gate::CZ, Gate::CY};
  std::uniform_int_distribution<int> qubit(0, n - 1), g1(0, 5), g2(0, 2);
  std::bernoulli_distribution pick_two(n > 1 ? 0.4 : 0.0);
  std::vector<CliffordOp> ops;
  for (int k = 0; k < length; ++k) {
    if (pick_two(rng)) {
      int a = qubit(rng), b = qubit(rng);
      while (b == a) b = qubit(rng);
      ops.push_back({two[g2(rng)], a, b});
    } else {
      ops.push_back({one[g1(rng)], qubit(rng), -1});
    }
  }
  return ops;
}

inline void apply_clifford(Tableau& t, const CliffordOp& op) {
  switch (op.gate) {
    case Gate::H: t.h(op.a); break;
    case Gate::S: t.s(op.a); break;
    case Gate::Sdg: t.s_dag(op.a); break;
    case Gate::X: t.x(op.a); break;
    case Gate::Y: t.y(op.a); break;
    case Gate::Z: t.z(op.a); break;
    case Gate::CX: t.cx(op.a, op.b); break;
    case Gate::CZ: t.cz(op.a, op.b); break;
    case Gate::CY: t.cy(op.a, op.b); break;
    default: throw UsageError("apply_clifford: not a Clifford gate");
  }
}

inline void apply_clifford(StateVector& s, const CliffordOp& op) {
  if (op.b >= 0) {
    s.apply_gate(op.gate, {op.a, op.b});
  } else {
    s.apply_gate(op.gate, {op.a});
  }
}

/// Random Hermitian Pauli on n qubits (sign included), never the identity.
template <class Rng>
PauliString random_pauli(int n, Rng& rng) {
  std::uniform_int_distribution<int> letter(0, 3);
  std::bernoulli_distribution sign(0.5);
  for (;;) {
    PauliString p;
    for (int q = 0; q < n; ++q) {
      const int l = letter(rng);
      if (l) p.set(q, {l != 3, l != 1});
    }
    if (p.is_identity()) continue;
    if (sign(rng)) p.set_phase(2);
    return p;
  }
}

}  // namespace anyonic
