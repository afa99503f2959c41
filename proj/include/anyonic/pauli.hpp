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

#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "anyonic/errors.hpp"
#include "anyonic/lattice.hpp"

namespace anyonic {

/// Single-qubit Pauli as (x, z) bits: I=(0,0) X=(1,0) Z=(0,1) Y=(1,1).
struct PauliBits {
  bool x = false;
  bool z = false;
  bool operator==(const PauliBits&) const = default;
  bool is_identity() const { return !x && !z; }
};

/// Sparse multi-qubit Pauli operator i^phase * (tensor of X/Y/Z), where Y is
/// the Hermitian Y. With this convention X*Z = -i Y.
///
/// Text form: a phase token (`+`, `-`, `+i`, `-i`) followed by site terms such
/// as `X3 Z7 Y12`, e.g. `+i X3 Z7 Y12`; the identity renders as `+I`.
class PauliString {
 public:
  PauliString() = default;

  static PauliString identity() { return {}; }
  static PauliString single(int q, char op) {
    PauliString p;
    p.set(q, bits_for(op));
    return p;
  }
  static PauliString z_on(const std::vector<int>& qubits) { return uniform(qubits, {false, true}); }
  static PauliString x_on(const std::vector<int>& qubits) { return uniform(qubits, {true, false}); }

  int phase() const { return phase_; }
  void set_phase(int k) { phase_ = ((k % 4) + 4) % 4; }
  void add_phase(int k) { set_phase(phase_ + k); }

  const std::map<int, PauliBits>& support() const { return support_; }
  PauliBits get(int q) const {
    auto it = support_.find(q);
    return it == support_.end() ? PauliBits{} : it->second;
  }
  void set(int q, PauliBits b) {
    if (q < 0) throw UsageError("negative qubit index");
    if (b.is_identity()) {
      support_.erase(q);
    } else {
      support_[q] = b;
    }
  }

  std::size_t weight() const { return support_.size(); }
  bool is_identity() const { return support_.empty(); }
  bool is_hermitian() const { return phase_ % 2 == 0; }
  int max_qubit() const { return support_.empty() ? -1 : support_.rbegin()->first; }
  bool is_z_only() const {
    for (auto& [q, b] : support_) if (b.x) return false;
    return true;
  }
  bool is_x_only() const {
    for (auto& [q, b] : support_) if (b.z) return false;
    return true;
  }

  bool operator==(const PauliString&) const = default;

  std::string str() const {
    static const char* tokens[4] = {"+", "+i", "-", "-i"};
    std::string out = tokens[phase_];
    if (support_.empty()) return out + "I";
    bool first = true;
    for (auto& [q, b] : support_) {
      if (!first || phase_ % 2 == 1) out += ' ';
      first = false;
      out += letter(b);
      out += std::to_string(q);
    }
    return out;
  }

  static PauliString parse(std::string_view text) {
    std::size_t i = 0;
    auto skip = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip();
    if (i >= text.size() || (text[i] != '+' && text[i] != '-')) {
      throw ConfigError("pauli string must start with a phase token: '" + std::string(text) + "'");
    }
    int phase = text[i] == '-' ? 2 : 0;
    ++i;
    if (i < text.size() && text[i] == 'i') {
      phase += 1;
      ++i;
    }
    PauliString p;
    p.set_phase(phase);
    bool saw_identity = false;
    while (true) {
      skip();
      if (i >= text.size()) break;
      char op = text[i++];
      if (op == 'I') {
        saw_identity = true;
        continue;
      }
      if (op != 'X' && op != 'Y' && op != 'Z') {
        throw ConfigError("unexpected character in pauli string: '" + std::string(1, op) + "'");
      }
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) throw ConfigError("missing qubit index after " + std::string(1, op));
      int q = std::stoi(std::string(text.substr(start, i - start)));
      if (!p.get(q).is_identity()) throw ConfigError("qubit " + std::to_string(q) + " repeated");
      p.set(q, bits_for(op));
    }
    if (saw_identity && !p.is_identity()) throw ConfigError("'I' mixed with non-identity terms");
    return p;
  }

  static PauliBits bits_for(char op) {
    switch (op) {
      case 'I': return {false, false};
      case 'X': return {true, false};
      case 'Z': return {false, true};
      case 'Y': return {true, true};
    }
    throw UsageError("unknown pauli letter");
  }
  static char letter(PauliBits b) { return b.x ? (b.z ? 'Y' : 'X') : (b.z ? 'Z' : 'I'); }

 private:
  static PauliString uniform(const std::vector<int>& qubits, PauliBits b) {
    PauliString p;
    for (int q : qubits) {
      // Repeated qubits cancel: the operator is a product of commuting factors.
      PauliBits cur = p.get(q);
      p.set(q, {cur.x != b.x, cur.z != b.z});
    }
    return p;
  }

  int phase_ = 0;
  std::map<int, PauliBits> support_;
};

inline std::ostream& operator<<(std::ostream& out, const PauliString& p) { return out << p.str(); }

/// Power of i picked up when multiplying single-qubit Paulis a*b.
inline int pauli_product_phase(PauliBits a, PauliBits b) {
  const int ia = (a.x ? 1 : 0) | (a.z ? 2 : 0);  // 1=X 2=Z 3=Y
  const int ib = (b.x ? 1 : 0) | (b.z ? 2 : 0);
  if (ia == 0 || ib == 0 || ia == ib) return 0;
  // XY=iZ, YZ=iX, ZX=iY.
  if ((ia == 1 && ib == 3) || (ia == 3 && ib == 2) || (ia == 2 && ib == 1)) return 1;
  return 3;
}

inline PauliString multiply(const PauliString& p, const PauliString& q) {
  PauliString out = p;
  int phase = p.phase() + q.phase();
  for (auto& [site, b] : q.support()) {
    PauliBits a = p.get(site);
    phase += pauli_product_phase(a, b);
    out.set(site, {a.x != b.x, a.z != b.z});
  }
  out.set_phase(phase);
  return out;
}

inline PauliString operator*(const PauliString& p, const PauliString& q) { return multiply(p, q); }

/// Adjoint (equal to the inverse for Pauli operators).
inline PauliString inverse(const PauliString& p) {
  PauliString out = p;
  out.set_phase(-p.phase());
  return out;
}

/// +1 if p and q commute, -1 if they anticommute.
inline int commutation_phase(const PauliString& p, const PauliString& q) {
  const auto& small = p.weight() <= q.weight() ? p : q;
  const auto& large = p.weight() <= q.weight() ? q : p;
  int parity = 0;
  for (auto& [site, a] : small.support()) {
    PauliBits b = large.get(site);
    parity ^= (a.x && b.z) ^ (a.z && b.x);
  }
  return parity ? -1 : 1;
}

inline PauliString from_string_path(const StringPath& path) {
  return path.kind == StringKind::z ? PauliString::z_on(path.edges) : PauliString::x_on(path.edges);
}

enum class Rotation { hadamard, phase, phase_dag };

/// Conjugates p by the rotation applied to each qubit in `qubits`:
/// returns R p R^dagger. H swaps X and Z (Y -> -Y); S maps X -> Y, Y -> -X.
inline PauliString basis_change_conjugate(const PauliString& p, Rotation rot,
                                          const std::vector<int>& qubits) {
  PauliString out = p;
  for (int q : qubits) {
    PauliBits b = out.get(q);
    if (b.is_identity()) continue;
    switch (rot) {
      case Rotation::hadamard:
        if (b.x && b.z) out.add_phase(2);
        out.set(q, {b.z, b.x});
        break;
      case Rotation::phase:
        if (b.x && b.z) out.add_phase(2);
        if (b.x) out.set(q, {true, !b.z});
        break;
      case Rotation::phase_dag:
        if (b.x && !b.z) out.add_phase(2);
        if (b.x) out.set(q, {true, !b.z});
        break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Z_d Weyl operators.

/// Single site X^a Z^b with exponents mod d.
struct WeylExponents {
  int a = 0;
  int b = 0;
  bool operator==(const WeylExponents&) const = default;
};

/// Sparse Z_d Weyl operator w^(phase/2) * prod_j X_j^a_j Z_j^b_j, where
/// w = exp(2 pi i / d), X|k> = |k+1>, Z|k> = w^k |k>, so that X Z = w^-1 Z X.
/// The phase is kept in half-w units (mod 2d) so products stay exact for even d.
class WeylString {
 public:
  explicit WeylString(int d = 2) : d_(d) {
    if (d < 2) throw UsageError("Weyl dimension must be >= 2");
  }

  static WeylString z_power(int d, const std::vector<int>& sites, int power) {
    WeylString w(d);
    for (int s : sites) w.set(s, {0, power});
    return w;
  }
  static WeylString x_power(int d, const std::vector<int>& sites, int power) {
    WeylString w(d);
    for (int s : sites) w.set(s, {power, 0});
    return w;
  }
  static WeylString from_path(int d, const StringPath& path, int power) {
    return path.kind == StringKind::z ? z_power(d, path.edges, power) : x_power(d, path.edges, power);
  }

  int d() const { return d_; }
  int phase() const { return phase_; }
  void set_phase(int k) { phase_ = ((k % (2 * d_)) + 2 * d_) % (2 * d_); }
  const std::map<int, WeylExponents>& support() const { return support_; }
  WeylExponents get(int s) const {
    auto it = support_.find(s);
    return it == support_.end() ? WeylExponents{} : it->second;
  }
  void set(int s, WeylExponents e) {
    e.a = mod(e.a);
    e.b = mod(e.b);
    if (e.a == 0 && e.b == 0) {
      support_.erase(s);
    } else {
      support_[s] = e;
    }
  }
  bool is_scalar() const { return support_.empty(); }
  int max_site() const { return support_.empty() ? -1 : support_.rbegin()->first; }
  int mod(int v) const { return ((v % d_) + d_) % d_; }

  bool operator==(const WeylString&) const = default;

 private:
  int d_;
  int phase_ = 0;
  std::map<int, WeylExponents> support_;
};

inline WeylString weyl_multiply(const WeylString& p, const WeylString& q) {
  if (p.d() != q.d()) throw UsageError("weyl_multiply: mismatched dimensions");
  WeylString out = p;
  long long phase = p.phase() + q.phase();
  for (auto& [s, e] : q.support()) {
    WeylExponents a = p.get(s);
    // (X^a Z^b)(X^c Z^e) = w^(b c) X^(a+c) Z^(b+e)
    phase += 2LL * a.b * e.a;
    out.set(s, {a.a + e.a, a.b + e.b});
  }
  out.set_phase(static_cast<int>(phase % (2 * p.d())));
  return out;
}

inline WeylString weyl_inverse(const WeylString& p) {
  WeylString out(p.d());
  long long phase = -p.phase();
  for (auto& [s, e] : p.support()) {
    // (X^a Z^b)^-1 = Z^-b X^-a = w^(a b) X^-a Z^-b
    phase += 2LL * e.a * e.b;
    out.set(s, {-e.a, -e.b});
  }
  out.set_phase(static_cast<int>(phase % (2 * p.d())));
  return out;
}

/// Mutual statistics of a Z-type string and an X-type string:
/// zstr^-1 xstr^-1 zstr xstr = w^k. Returns k mod d.
inline int weyl_braiding_phase(const WeylString& zstr, const WeylString& xstr) {
  if (zstr.d() != xstr.d()) throw UsageError("weyl_braiding_phase: mismatched dimensions");
  for (auto& [s, e] : zstr.support()) {
    if (e.a != 0) throw UsageError("weyl_braiding_phase: first string must be Z-type");
  }
  for (auto& [s, e] : xstr.support()) {
    if (e.b != 0) throw UsageError("weyl_braiding_phase: second string must be X-type");
  }
  WeylString c = weyl_multiply(weyl_multiply(weyl_inverse(zstr), weyl_inverse(xstr)),
                               weyl_multiply(zstr, xstr));
  if (!c.is_scalar() || c.phase() % 2 != 0) throw GeometryError("braiding commutator is not a scalar");
  return (c.phase() / 2) % zstr.d();
}

inline int weyl_gate_count(int d) {
  if (d < 2) throw UsageError("Weyl dimension must be >= 2");
  return d - 1;
}

}  // namespace anyonic
