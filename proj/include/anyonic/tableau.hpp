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
#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "anyonic/errors.hpp"
#include "anyonic/lattice.hpp"
#include "anyonic/pauli.hpp"

namespace anyonic {

/// Stabilizer state in destabilizer/stabilizer form (Aaronson-Gottesman).
///
/// Rows 0..n-1 are destabilizers, rows n..2n-1 stabilizers. Each row holds
/// bit-packed x and z words plus a sign bit; row k represents
/// (-1)^r_k * prod_j sigma(x_kj, z_kj) with Hermitian Y.
class Tableau {
 public:
  explicit Tableau(int n = 0) : n_(n), words_((n + 63) / 64) {
    if (n < 0) throw UsageError("negative qubit count");
    xs_.assign(static_cast<std::size_t>(2 * n) * words_, 0);
    zs_.assign(static_cast<std::size_t>(2 * n) * words_, 0);
    signs_.assign(2 * n, 0);
    for (int q = 0; q < n; ++q) {
      set_x(q, q, true);
      set_z(q + n, q, true);
    }
  }

  int num_qubits() const { return n_; }

  // ---- Clifford gates --------------------------------------------------

  void h(int q) {
    check(q);
    for (int k = 0; k < 2 * n_; ++k) {
      bool x = get_x(k, q), z = get_z(k, q);
      signs_[k] ^= x && z;
      set_x(k, q, z);
      set_z(k, q, x);
    }
  }
  void s(int q) {
    check(q);
    for (int k = 0; k < 2 * n_; ++k) {
      bool x = get_x(k, q), z = get_z(k, q);
      signs_[k] ^= x && z;
      set_z(k, q, z != x);
    }
  }
  void s_dag(int q) {
    s(q);
    z(q);
  }
  void x(int q) {
    check(q);
    for (int k = 0; k < 2 * n_; ++k) signs_[k] ^= get_z(k, q);
  }
  void z(int q) {
    check(q);
    for (int k = 0; k < 2 * n_; ++k) signs_[k] ^= get_x(k, q);
  }
  void y(int q) {
    check(q);
    for (int k = 0; k < 2 * n_; ++k) signs_[k] ^= get_x(k, q) != get_z(k, q);
  }
  void cx(int c, int t) {
    check(c);
    check(t);
    if (c == t) throw UsageError("cx: control equals target");
    for (int k = 0; k < 2 * n_; ++k) {
      bool xc = get_x(k, c), zc = get_z(k, c), xt = get_x(k, t), zt = get_z(k, t);
      signs_[k] ^= xc && zt && (xt == zc);
      set_x(k, t, xt != xc);
      set_z(k, c, zc != zt);
    }
  }
  void cz(int a, int b) {
    h(b);
    cx(a, b);
    h(b);
  }
  void cy(int c, int t) {
    s_dag(t);
    cx(c, t);
    s(t);
  }

  // ---- Pauli-level operations -----------------------------------------

  /// |psi> -> P|psi>. Only sign bits change.
  void apply_pauli(const PauliString& p) {
    check_support(p);
    Row row = to_row(p);
    for (int k = 0; k < 2 * n_; ++k) signs_[k] ^= anticommutes(k, row);
  }

  /// |1><1|_control (x) P + |0><0|_control (x) I, compiled to CX/CZ/CY plus a
  /// phase gate on the control absorbing P's i^k prefactor.
  void apply_controlled_pauli(int control, const PauliString& p) {
    check(control);
    check_support(p);
    if (!p.get(control).is_identity()) throw UsageError("control qubit lies in the string support");
    for (auto& [q, b] : p.support()) {
      if (b.x && b.z) {
        cy(control, q);
      } else if (b.x) {
        cx(control, q);
      } else {
        cz(control, q);
      }
    }
    for (int k = 0; k < p.phase(); ++k) s(control);
  }

  /// Measures a Hermitian Pauli observable; returns +1 or -1.
  template <class Rng>
  int measure_pauli(const PauliString& p, Rng& rng) {
    if (!p.is_hermitian()) throw UsageError("measure_pauli requires a Hermitian operator");
    check_support(p);
    Row row = to_row(p);
    int pivot = -1;
    for (int k = n_; k < 2 * n_; ++k) {
      if (anticommutes(k, row)) {
        pivot = k;
        break;
      }
    }
    if (pivot < 0) return deterministic_value(p, row);
    for (int k = 0; k < 2 * n_; ++k) {
      if (k != pivot && anticommutes(k, row)) rowsum(k, pivot);
    }
    copy_row(pivot - n_, pivot);
    const int outcome = (rng() & 1) ? -1 : 1;
    for (std::size_t w = 0; w < words_; ++w) {
      xs_[pivot * words_ + w] = row.x[w];
      zs_[pivot * words_ + w] = row.z[w];
    }
    signs_[pivot] = static_cast<std::uint8_t>((p.phase() / 2) ^ (outcome < 0 ? 1 : 0));
    return outcome;
  }

  /// Projects onto the `outcome` eigenspace of p when that has non-zero
  /// weight; throws ContractError when the outcome is impossible.
  void postselect_pauli(const PauliString& p, int outcome) {
    int e = expectation(p);
    if (e == -outcome) throw ContractError("postselected outcome has zero probability");
    if (e == outcome) return;
    struct Fixed {
      int v;
      std::uint64_t operator()() { return v; }
    } forced{outcome < 0 ? 1 : 0};
    measure_pauli(p, forced);
  }

  /// <P> for a Hermitian Pauli: 0 when P anticommutes with some stabilizer,
  /// otherwise +1 or -1.
  int expectation(const PauliString& p) const {
    if (!p.is_hermitian()) throw UsageError("expectation requires a Hermitian operator");
    check_support(p);
    Row row = to_row(p);
    for (int k = n_; k < 2 * n_; ++k) {
      if (anticommutes(k, row)) return 0;
    }
    return deterministic_value(p, row);
  }

  /// Returns the stabilizer generators as Pauli strings (signs included).
  std::vector<PauliString> stabilizers() const {
    std::vector<PauliString> out;
    for (int k = n_; k < 2 * n_; ++k) out.push_back(row_string(k));
    return out;
  }
  std::vector<PauliString> destabilizers() const {
    std::vector<PauliString> out;
    for (int k = 0; k < n_; ++k) out.push_back(row_string(k));
    return out;
  }

  /// Appends `extra` qubits in |0>.
  Tableau with_extra_qubits(int extra) const {
    Tableau out(n_ + extra);
    for (int k = 0; k < 2 * n_; ++k) {
      const int dst = k < n_ ? k : k + extra;
      for (int q = 0; q < out.n_; ++q) {
        out.set_x(dst, q, q < n_ && get_x(k, q));
        out.set_z(dst, q, q < n_ && get_z(k, q));
      }
      out.signs_[dst] = signs_[k];
    }
    return out;
  }

  /// Debug listing of the generators; format is not stable.
  void dump(std::ostream& out) const {
    for (int k = 0; k < 2 * n_; ++k) {
      out << (k < n_ ? "D" : "S") << (k < n_ ? k : k - n_) << ' ' << row_string(k).str() << "\n";
    }
  }

 private:
  struct Row {
    std::vector<std::uint64_t> x, z;
  };

  void check(int q) const {
    if (q < 0 || q >= n_) throw UsageError("qubit " + std::to_string(q) + " out of range");
  }
  void check_support(const PauliString& p) const {
    if (p.max_qubit() >= n_) throw UsageError("pauli string exceeds tableau size");
  }

  bool get_x(int k, int q) const { return (xs_[k * words_ + q / 64] >> (q % 64)) & 1; }
  bool get_z(int k, int q) const { return (zs_[k * words_ + q / 64] >> (q % 64)) & 1; }
  void set_x(int k, int q, bool v) { set_bit(xs_[k * words_ + q / 64], q % 64, v); }
  void set_z(int k, int q, bool v) { set_bit(zs_[k * words_ + q / 64], q % 64, v); }
  static void set_bit(std::uint64_t& w, int b, bool v) {
    const std::uint64_t m = std::uint64_t{1} << b;
    w = v ? (w | m) : (w & ~m);
  }

  Row to_row(const PauliString& p) const {
    Row r{std::vector<std::uint64_t>(words_, 0), std::vector<std::uint64_t>(words_, 0)};
    for (auto& [q, b] : p.support()) {
      if (b.x) r.x[q / 64] |= std::uint64_t{1} << (q % 64);
      if (b.z) r.z[q / 64] |= std::uint64_t{1} << (q % 64);
    }
    return r;
  }

  PauliString row_string(int k) const {
    PauliString p;
    for (int q = 0; q < n_; ++q) p.set(q, {get_x(k, q), get_z(k, q)});
    p.set_phase(2 * signs_[k]);
    return p;
  }

  bool anticommutes(int k, const Row& row) const {
    std::uint64_t acc = 0;
    const std::uint64_t* x = &xs_[k * words_];
    const std::uint64_t* z = &zs_[k * words_];
    for (std::size_t w = 0; w < words_; ++w) acc ^= (x[w] & row.z[w]) ^ (z[w] & row.x[w]);
    return std::popcount(acc) & 1;
  }

  /// Power of i in sigma(a) * sigma(b) summed over all words.
  static int product_phase(const std::uint64_t* ax, const std::uint64_t* az, const std::uint64_t* bx,
                           const std::uint64_t* bz, std::size_t words) {
    int g = 0;
    for (std::size_t w = 0; w < words; ++w) {
      const std::uint64_t x1 = ax[w] & ~az[w], y1 = ax[w] & az[w], z1 = ~ax[w] & az[w];
      const std::uint64_t x2 = bx[w] & ~bz[w], y2 = bx[w] & bz[w], z2 = ~bx[w] & bz[w];
      const std::uint64_t plus = (y1 & z2) | (x1 & y2) | (z1 & x2);
      const std::uint64_t minus = (y1 & x2) | (x1 & z2) | (z1 & y2);
      g += std::popcount(plus) - std::popcount(minus);
    }
    return g;
  }

  /// row h <- row h * row i.
  void rowsum(int h, int i) {
    std::uint64_t* hx = &xs_[h * words_];
    std::uint64_t* hz = &zs_[h * words_];
    const std::uint64_t* ix = &xs_[i * words_];
    const std::uint64_t* iz = &zs_[i * words_];
    int phase = 2 * signs_[h] + 2 * signs_[i] + product_phase(hx, hz, ix, iz, words_);
    phase = ((phase % 4) + 4) % 4;
    signs_[h] = static_cast<std::uint8_t>(phase >= 2);
    for (std::size_t w = 0; w < words_; ++w) {
      hx[w] ^= ix[w];
      hz[w] ^= iz[w];
    }
  }

  void copy_row(int dst, int src) {
    for (std::size_t w = 0; w < words_; ++w) {
      xs_[dst * words_ + w] = xs_[src * words_ + w];
      zs_[dst * words_ + w] = zs_[src * words_ + w];
    }
    signs_[dst] = signs_[src];
  }

  /// For P commuting with every stabilizer: P = +-(product of stabilizers
  /// whose destabilizer anticommutes with P). Returns that sign.
  int deterministic_value(const PauliString& p, const Row& row) const {
    std::vector<std::uint64_t> ax(words_, 0), az(words_, 0);
    int phase = 0;
    for (int k = 0; k < n_; ++k) {
      if (!anticommutes(k, row)) continue;
      const int s = k + n_;
      phase += 2 * signs_[s] + product_phase(ax.data(), az.data(), &xs_[s * words_], &zs_[s * words_], words_);
      for (std::size_t w = 0; w < words_; ++w) {
        ax[w] ^= xs_[s * words_ + w];
        az[w] ^= zs_[s * words_ + w];
      }
    }
    if (ax != row.x || az != row.z) throw ContractError("tableau lost symplectic consistency");
    int value = ((p.phase() - phase) % 4 + 4) % 4;
    if (value % 2) throw ContractError("non-Hermitian stabilizer product");
    return value == 0 ? 1 : -1;
  }

  int n_;
  std::size_t words_;
  std::vector<std::uint64_t> xs_, zs_;
  std::vector<std::uint8_t> signs_;
};

// ---------------------------------------------------------------------------
// Surface-code layer.

inline PauliString vertex_stabilizer(const Lattice& lat, int v) { return PauliString::x_on(lat.star(v)); }
inline PauliString face_stabilizer(const Lattice& lat, int f) { return PauliString::z_on(lat.boundary(f)); }

/// Anyon positions: vertices with H_v = -1 (z-particles) and faces with
/// H_f = -1 (x-particles).
struct Syndrome {
  std::vector<int> flipped_vertices;
  std::vector<int> flipped_faces;
  bool empty() const { return flipped_vertices.empty() && flipped_faces.empty(); }
  bool operator==(const Syndrome&) const = default;
};

/// Couplings of H = -U sum_v H_v - J sum_f H_f.
struct EnergyLedger {
  double U = 1.0;
  double J = 1.0;
};

inline double relative_energy(const Syndrome& s, const EnergyLedger& ledger) {
  return 2.0 * ledger.U * static_cast<double>(s.flipped_vertices.size()) +
         2.0 * ledger.J * static_cast<double>(s.flipped_faces.size());
}

inline Syndrome syndrome(const Tableau& t, const Lattice& lat) {
  Syndrome s;
  for (int v = 0; v < lat.num_vertices(); ++v) {
    int e = t.expectation(vertex_stabilizer(lat, v));
    if (e == 0) throw ContractError("state is not an eigenstate of vertex stabilizer " + std::to_string(v));
    if (e < 0) s.flipped_vertices.push_back(v);
  }
  for (int f = 0; f < lat.num_faces(); ++f) {
    int e = t.expectation(face_stabilizer(lat, f));
    if (e == 0) throw ContractError("state is not an eigenstate of face stabilizer " + std::to_string(f));
    if (e < 0) s.flipped_faces.push_back(f);
  }
  return s;
}

inline std::vector<PauliString> logical_z_operators(const Lattice& lat) {
  std::vector<PauliString> out;
  for (auto& pair : logical_operators(lat)) out.push_back(from_string_path(pair.z));
  return out;
}
inline std::vector<PauliString> logical_x_operators(const Lattice& lat) {
  std::vector<PauliString> out;
  for (auto& pair : logical_operators(lat)) out.push_back(from_string_path(pair.x));
  return out;
}

/// Code-space state with every H_v = H_f = +1 and Z~_k = (-1)^sector[k].
///
/// Starts from |0...0> (all faces already +1), measures each vertex star,
/// pairs up -1 outcomes with z-strings (or sends them to a rough boundary),
/// then fixes the logical sector by measurement and logical X~ correction.
inline Tableau prepare_ground_state(const Lattice& lat, const std::vector<int>& sector = {},
                                    std::uint64_t seed = 0) {
  const auto logicals = logical_operators(lat);
  if (!sector.empty() && sector.size() != logicals.size()) {
    throw UsageError("logical sector has " + std::to_string(sector.size()) + " entries, lattice encodes " +
                     std::to_string(logicals.size()));
  }
  std::mt19937_64 rng(seed);
  Tableau t(lat.num_qubits());
  std::vector<int> defects;
  for (int v = 0; v < lat.num_vertices(); ++v) {
    if (t.measure_pauli(vertex_stabilizer(lat, v), rng) < 0) defects.push_back(v);
  }
  if (lat.is_torus()) {
    if (defects.size() % 2) throw ContractError("odd number of vertex defects on a torus");
    for (std::size_t i = 0; i + 1 < defects.size(); i += 2) {
      t.apply_pauli(from_string_path(shortest_string(lat, StringKind::z, defects[i], defects[i + 1])));
    }
  } else {
    for (int v : defects) t.apply_pauli(from_string_path(string_to_boundary(lat, StringKind::z, v)));
  }
  for (std::size_t k = 0; k < logicals.size(); ++k) {
    const int want = (!sector.empty() && sector[k]) ? -1 : 1;
    if (t.measure_pauli(from_string_path(logicals[k].z), rng) != want) {
      t.apply_pauli(from_string_path(logicals[k].x));
    }
  }
  return t;
}

}  // namespace anyonic
