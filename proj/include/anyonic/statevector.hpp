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

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "anyonic/errors.hpp"
#include "anyonic/lattice.hpp"
#include "anyonic/pauli.hpp"
#include "anyonic/tableau.hpp"

namespace anyonic {

using cplx = std::complex<double>;

enum class Gate { H, S, Sdg, X, Y, Z, CX, CZ, CY, Rz, Rx };

/// Dense 2^n amplitude vector; qubit q is bit q of the basis index.
class StateVector {
 public:
  static constexpr int kDefaultMaxQubits = 22;

  explicit StateVector(int n = 0, int max_qubits = kDefaultMaxQubits) : n_(n) {
    if (n < 0 || n > max_qubits) {
      throw UsageError("statevector size " + std::to_string(n) + " outside [0, " + std::to_string(max_qubits) + "]");
    }
    amps_.assign(std::size_t{1} << n, cplx{0, 0});
    amps_[0] = 1;
  }

  static StateVector from_amplitudes(std::vector<cplx> amps) {
    if (amps.empty() || !std::has_single_bit(amps.size())) throw UsageError("amplitude count must be a power of two");
    StateVector s(0);
    s.n_ = std::countr_zero(amps.size());
    s.amps_ = std::move(amps);
    return s;
  }

  int num_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  cplx amplitude(std::size_t i) const { return amps_.at(i); }

  double norm() const {
    double s = 0;
    for (auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
  }
  void normalize() {
    const double nrm = norm();
    if (nrm < 1e-300) throw NumericalError("cannot normalize a zero vector");
    for (auto& a : amps_) a /= nrm;
  }

  // ---- gates ----------------------------------------------------------

  void apply_gate(Gate g, const std::vector<int>& targets, double theta = 0.0) {
    const std::size_t arity = (g == Gate::CX || g == Gate::CZ || g == Gate::CY) ? 2 : 1;
    if (targets.size() != arity) throw UsageError("wrong number of gate targets");
    switch (g) {
      case Gate::H: return h(targets[0]);
      case Gate::S: return s(targets[0]);
      case Gate::Sdg: return s_dag(targets[0]);
      case Gate::X: return x(targets[0]);
      case Gate::Y: return y(targets[0]);
      case Gate::Z: return z(targets[0]);
      case Gate::CX: return cx(targets[0], targets[1]);
      case Gate::CZ: return cz(targets[0], targets[1]);
      case Gate::CY: return cy(targets[0], targets[1]);
      case Gate::Rz: return rz(targets[0], theta);
      case Gate::Rx: return rx(targets[0], theta);
    }
  }

  void h(int q) {
    const std::size_t m = mask(q);
    const double r = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < dim(); ++i) {
      if (i & m) continue;
      cplx a = amps_[i], b = amps_[i | m];
      amps_[i] = r * (a + b);
      amps_[i | m] = r * (a - b);
    }
  }
  void s(int q) { phase_on(q, cplx{0, 1}); }
  void s_dag(int q) { phase_on(q, cplx{0, -1}); }
  void z(int q) { phase_on(q, -1.0); }
  void x(int q) {
    const std::size_t m = mask(q);
    for (std::size_t i = 0; i < dim(); ++i) {
      if (!(i & m)) std::swap(amps_[i], amps_[i | m]);
    }
  }
  void y(int q) {
    const std::size_t m = mask(q);
    for (std::size_t i = 0; i < dim(); ++i) {
      if (i & m) continue;
      cplx a = amps_[i], b = amps_[i | m];
      amps_[i] = cplx{0, -1} * b;
      amps_[i | m] = cplx{0, 1} * a;
    }
  }
  void cx(int c, int t) {
    const std::size_t mc = mask(c), mt = mask(t);
    if (mc == mt) throw UsageError("cx: control equals target");
    for (std::size_t i = 0; i < dim(); ++i) {
      if ((i & mc) && !(i & mt)) std::swap(amps_[i], amps_[i | mt]);
    }
  }
  void cz(int a, int b) {
    const std::size_t ma = mask(a), mb = mask(b);
    if (ma == mb) throw UsageError("cz: repeated qubit");
    for (std::size_t i = 0; i < dim(); ++i) {
      if ((i & ma) && (i & mb)) amps_[i] = -amps_[i];
    }
  }
  void cy(int c, int t) {
    s_dag(t);
    cx(c, t);
    s(t);
  }
  /// exp(-i theta Z / 2)
  void rz(int q, double theta) {
    const std::size_t m = mask(q);
    const cplx lo = std::polar(1.0, -theta / 2), hi = std::polar(1.0, theta / 2);
    for (std::size_t i = 0; i < dim(); ++i) amps_[i] *= (i & m) ? hi : lo;
  }
  /// exp(-i theta X / 2)
  void rx(int q, double theta) {
    const std::size_t m = mask(q);
    const double c = std::cos(theta / 2), sn = std::sin(theta / 2);
    for (std::size_t i = 0; i < dim(); ++i) {
      if (i & m) continue;
      cplx a = amps_[i], b = amps_[i | m];
      amps_[i] = c * a + cplx{0, -sn} * b;
      amps_[i | m] = cplx{0, -sn} * a + c * b;
    }
  }

  // ---- Pauli-level operations ----------------------------------------

  void apply_pauli(const PauliString& p) { amps_ = pauli_image(p, 0); }

  void apply_controlled_pauli(int control, const PauliString& p) {
    const std::size_t mc = mask(control);
    if (!p.get(control).is_identity()) throw UsageError("control qubit lies in the string support");
    std::vector<cplx> img = pauli_image(p, mc);
    for (std::size_t i = 0; i < dim(); ++i) {
      if (i & mc) amps_[i] = img[i];
    }
  }

  /// cos(theta) + i sin(theta) P, for Hermitian P (P^2 = I).
  void apply_pauli_exponential(const PauliString& p, double theta) {
    if (!p.is_hermitian()) throw UsageError("pauli exponential requires a Hermitian operator");
    std::vector<cplx> img = pauli_image(p, 0);
    const double c = std::cos(theta), sn = std::sin(theta);
    for (std::size_t i = 0; i < dim(); ++i) amps_[i] = c * amps_[i] + cplx{0, sn} * img[i];
  }

  /// <psi|P|psi>
  cplx expectation(const PauliString& p) const {
    std::vector<cplx> img = pauli_image(p, 0);
    cplx acc = 0;
    for (std::size_t i = 0; i < dim(); ++i) acc += std::conj(amps_[i]) * img[i];
    return acc;
  }

  /// Measures a Hermitian Pauli; returns +1/-1 and collapses the state.
  template <class Rng>
  int measure_pauli(const PauliString& p, Rng& rng) {
    const double p_plus = std::clamp((1.0 + expectation(p).real()) / 2.0, 0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int outcome = u(rng) < p_plus ? 1 : -1;
    project_pauli(p, outcome);
    return outcome;
  }

  /// Applies (1 + outcome P)/2 and renormalizes.
  void project_pauli(const PauliString& p, int outcome) {
    if (!p.is_hermitian()) throw UsageError("projector requires a Hermitian operator");
    std::vector<cplx> img = pauli_image(p, 0);
    for (std::size_t i = 0; i < dim(); ++i) amps_[i] = 0.5 * (amps_[i] + double(outcome) * img[i]);
    if (norm() < 1e-12) throw ContractError("projected onto a zero-probability outcome");
    normalize();
  }

  template <class Rng>
  int measure_qubit(int q, Rng& rng) {
    return measure_pauli(PauliString::single(q, 'Z'), rng) > 0 ? 0 : 1;
  }
  void project_qubit(int q, int bit) { project_pauli(PauliString::single(q, 'Z'), bit ? -1 : 1); }

  /// Applies prod_v exp(i U t H_v) prod_f exp(i J t H_f); all terms commute.
  void evolve_hsurf(const Lattice& lat, double U, double J, double t) {
    if (lat.num_qubits() > n_) throw UsageError("lattice larger than the state");
    for (int f = 0; f < lat.num_faces(); ++f) apply_pauli_exponential(face_stabilizer(lat, f), J * t);
    for (int v = 0; v < lat.num_vertices(); ++v) apply_pauli_exponential(vertex_stabilizer(lat, v), U * t);
  }

  /// Tensors `extra` fresh |0> qubits onto the high bits.
  StateVector with_extra_qubits(int extra, int max_qubits = kDefaultMaxQubits) const {
    StateVector out(n_ + extra, max_qubits);
    std::copy(amps_.begin(), amps_.end(), out.amps_.begin());
    return out;
  }

 private:
  std::size_t mask(int q) const {
    if (q < 0 || q >= n_) throw UsageError("qubit " + std::to_string(q) + " out of range");
    return std::size_t{1} << q;
  }

  void phase_on(int q, cplx ph) {
    const std::size_t m = mask(q);
    for (std::size_t i = 0; i < dim(); ++i) {
      if (i & m) amps_[i] *= ph;
    }
  }

  /// P|psi>, skipping basis states without all `require` bits (left as zero).
  std::vector<cplx> pauli_image(const PauliString& p, std::size_t require) const {
    std::size_t xm = 0, zm = 0;
    int ny = 0;
    for (auto& [q, b] : p.support()) {
      const std::size_t m = mask(q);
      if (b.x) xm |= m;
      if (b.z) zm |= m;
      if (b.x && b.z) ++ny;
    }
    // sigma = i^nY X^xm Z^zm
    static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const cplx pre = ipow[(p.phase() + ny) % 4];
    std::vector<cplx> out(dim(), cplx{0, 0});
    for (std::size_t i = 0; i < dim(); ++i) {
      if ((i & require) != require) continue;
      const double sign = (std::popcount(i & zm) & 1) ? -1.0 : 1.0;
      out[i ^ xm] = pre * sign * amps_[i];
    }
    return out;
  }

  int n_;
  std::vector<cplx> amps_;
};

inline cplx inner_product(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) throw UsageError("inner_product: dimension mismatch");
  cplx acc = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
  return acc;
}

inline double fidelity(const StateVector& a, const StateVector& b) { return std::norm(inner_product(a, b)); }

/// Explicit 2^n x 2^n matrix of a Pauli string (test oracle; n <= 12).
inline Eigen::MatrixXcd dense_operator(const PauliString& p, int n) {
  if (n > 12) throw UsageError("dense_operator: more than 12 qubits");
  if (p.max_qubit() >= n) throw UsageError("dense_operator: string exceeds qubit count");
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    StateVector e = StateVector::from_amplitudes([&] {
      std::vector<cplx> v(static_cast<std::size_t>(dim), 0.0);
      v[static_cast<std::size_t>(col)] = 1.0;
      return v;
    }());
    e.apply_pauli(p);
    for (Eigen::Index row = 0; row < dim; ++row) m(row, col) = e.amplitudes()[static_cast<std::size_t>(row)];
  }
  return m;
}

/// Explicit d^sites matrix of a Weyl string; site j is the j-th tensor factor
/// counted from the least significant digit.
inline Eigen::MatrixXcd dense_operator(const WeylString& w, int sites) {
  const int d = w.d();
  long long dim = 1;
  for (int k = 0; k < sites; ++k) {
    dim *= d;
    if (dim > 4096) throw UsageError("dense_operator: Weyl dimension exceeds 4096");
  }
  if (w.max_site() >= sites) throw UsageError("dense_operator: string exceeds site count");
  const double pi = std::acos(-1.0);
  Eigen::MatrixXcd shift = Eigen::MatrixXcd::Zero(d, d), clock = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    shift((k + 1) % d, k) = 1.0;
    clock(k, k) = std::polar(1.0, 2 * pi * k / d);
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int s = sites - 1; s >= 0; --s) {
    auto e = w.get(s);
    Eigen::MatrixXcd local = Eigen::MatrixXcd::Identity(d, d);
    for (int k = 0; k < e.a; ++k) local = local * shift;
    Eigen::MatrixXcd zpart = Eigen::MatrixXcd::Identity(d, d);
    for (int k = 0; k < e.b; ++k) zpart = zpart * clock;
    local = local * zpart;
    Eigen::MatrixXcd next(out.rows() * d, out.cols() * d);
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      for (Eigen::Index j = 0; j < out.cols(); ++j) next.block(i * d, j * d, d, d) = out(i, j) * local;
    }
    out = std::move(next);
  }
  return std::polar(1.0, pi * w.phase() / d) * out;
}

/// The stabilizer state of a tableau as explicit amplitudes (global phase
/// fixed by making the first non-zero amplitude real and positive).
inline StateVector state_from_tableau(const Tableau& t, int max_qubits = StateVector::kDefaultMaxQubits) {
  const int n = t.num_qubits();
  const auto stabs = t.stabilizers();
  for (std::size_t seed = 0; seed < (std::size_t{1} << n); ++seed) {
    std::vector<cplx> v(std::size_t{1} << n, 0.0);
    v[seed] = 1.0;
    StateVector s = StateVector::from_amplitudes(std::move(v));
    if (n > max_qubits) throw UsageError("tableau too large for a statevector");
    bool ok = true;
    for (const auto& g : stabs) {
      StateVector img = s;
      img.apply_pauli(g);
      std::vector<cplx> mixed(s.dim());
      for (std::size_t i = 0; i < s.dim(); ++i) mixed[i] = 0.5 * (s.amplitudes()[i] + img.amplitudes()[i]);
      s = StateVector::from_amplitudes(std::move(mixed));
      if (s.norm() < 1e-9) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    s.normalize();
    std::vector<cplx> a = s.amplitudes();
    for (auto& amp : a) {
      if (std::abs(amp) > 1e-9) {
        const cplx ph = std::abs(amp) / amp;
        for (auto& b : a) b *= ph;
        break;
      }
    }
    return StateVector::from_amplitudes(std::move(a));
  }
  throw ContractError("tableau does not describe a state");
}

/// Code-space state built by projectors, independently of the tableau path:
/// |0...0> (every face +1), then prod_v (1+H_v)/2, logical X~ for each set
/// sector bit, normalized.
inline StateVector dense_ground_state(const Lattice& lat, const std::vector<int>& sector = {}) {
  StateVector s(lat.num_qubits());
  for (int v = 0; v < lat.num_vertices(); ++v) s.project_pauli(vertex_stabilizer(lat, v), 1);
  const auto lx = logical_x_operators(lat);
  for (std::size_t k = 0; k < sector.size() && k < lx.size(); ++k) {
    if (sector[k]) s.apply_pauli(lx[k]);
  }
  return s;
}

}  // namespace anyonic
