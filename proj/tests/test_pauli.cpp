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

#include "anyonic/circuits.hpp"
#include "anyonic/pauli.hpp"
#include "anyonic/statevector.hpp"
#include "support/oracles.hpp"

using namespace anyonic;

namespace {

/// Dense matrix from per-qubit 2x2 Pauli matrices; qubit 0 is the least
/// significant bit, i.e. the rightmost Kronecker factor.
oracle::Mat reference_matrix(const PauliString& p, int n) {
  oracle::Mat m = oracle::Mat::Identity(1, 1);
  for (int q = n - 1; q >= 0; --q) m = oracle::kron(m, oracle::pauli_matrix(PauliString::letter(p.get(q))));
  static const std::complex<double> ip[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return ip[p.phase()] * m;
}

}  // namespace

TEST(Pauli, TextRoundTrip) {
  for (const char* text : {"+I", "+X3 Z7", "+i X3 Z7 Y12", "-Y0", "-i Z1 X2"}) {
    EXPECT_EQ(PauliString::parse(text).str(), text);
  }
  EXPECT_THROW(PauliString::parse("X3"), ConfigError);
  EXPECT_THROW(PauliString::parse("+Q3"), ConfigError);
  EXPECT_THROW(PauliString::parse("+X3 X3"), ConfigError);
}

TEST(Pauli, SingleQubitProducts) {
  const auto X = PauliString::single(0, 'X'), Y = PauliString::single(0, 'Y'), Z = PauliString::single(0, 'Z');
  EXPECT_EQ((X * Z).str(), "-i Y0");
  EXPECT_EQ((X * Y).str(), "+i Z0");
  EXPECT_EQ((Y * Z).str(), "+i X0");
  EXPECT_EQ((Z * X).str(), "+i Y0");
  EXPECT_TRUE((X * X).is_identity());
}

TEST(Pauli, ProductMatchesMatrices) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 4;
    PauliString a = random_pauli(n, rng), b = random_pauli(n, rng);
    a.add_phase(t % 4);
    const oracle::Mat ref = reference_matrix(a, n) * reference_matrix(b, n);
    EXPECT_LT((reference_matrix(a * b, n) - ref).norm(), 1e-12);
    EXPECT_LT((dense_operator(a, n) - reference_matrix(a, n)).norm(), 1e-12);
    const oracle::Mat comm = reference_matrix(a, n) * reference_matrix(b, n) - reference_matrix(b, n) * reference_matrix(a, n);
    EXPECT_EQ(commutation_phase(a, b) == 1, comm.norm() < 1e-12);
    EXPECT_TRUE((a * inverse(a)).is_identity());
    EXPECT_EQ((a * inverse(a)).phase(), 0);
  }
}

TEST(Pauli, BasisChangeConjugation) {
  const oracle::Mat H = (oracle::pauli_matrix('X') + oracle::pauli_matrix('Z')) / std::sqrt(2.0);
  oracle::Mat S = oracle::Mat::Identity(2, 2);
  S(1, 1) = {0, 1};
  for (char op : {'X', 'Y', 'Z'}) {
    const auto p = PauliString::single(0, op);
    const oracle::Mat P = oracle::pauli_matrix(op);
    EXPECT_LT((reference_matrix(basis_change_conjugate(p, Rotation::hadamard, {0}), 1) - H * P * H.adjoint()).norm(), 1e-12);
    EXPECT_LT((reference_matrix(basis_change_conjugate(p, Rotation::phase, {0}), 1) - S * P * S.adjoint()).norm(), 1e-12);
    EXPECT_LT((reference_matrix(basis_change_conjugate(p, Rotation::phase_dag, {0}), 1) - S.adjoint() * P * S).norm(), 1e-12);
  }
}

TEST(Pauli, FromStringPath) {
  StringPath z{StringKind::z, {1, 4}, {}, true};
  EXPECT_EQ(from_string_path(z).str(), "+Z1 Z4");
  StringPath x{StringKind::x, {0}, {}, true};
  EXPECT_TRUE(from_string_path(x).is_x_only());
}

TEST(Weyl, SingleSiteAgainstClockAndShift) {
  for (int d = 2; d <= 5; ++d) {
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        WeylString w(d);
        w.set(0, {a, b});
        const oracle::Mat ref = oracle::power(oracle::shift(d), a) * oracle::power(oracle::clock(d), b);
        EXPECT_LT((dense_operator(w, 1) - ref).norm(), 1e-12) << d << " " << a << " " << b;
      }
    }
  }
}

TEST(Weyl, ProductsAndInverseAgainstMatrices) {
  std::mt19937_64 rng(9);
  for (int d : {2, 3, 4, 5}) {
    std::uniform_int_distribution<int> e(0, d - 1);
    for (int t = 0; t < 30; ++t) {
      WeylString p(d), q(d);
      for (int s = 0; s < 2; ++s) {
        p.set(s, {e(rng), e(rng)});
        q.set(s, {e(rng), e(rng)});
      }
      p.set_phase(e(rng));
      const oracle::Mat P = dense_operator(p, 2), Q = dense_operator(q, 2);
      EXPECT_LT((dense_operator(weyl_multiply(p, q), 2) - P * Q).norm(), 1e-10);
      EXPECT_LT((dense_operator(weyl_inverse(p), 2) - P.inverse()).norm(), 1e-10);
    }
  }
}

TEST(Weyl, BraidingPhase) {
  // d = 2 reduces to the Pauli sign; d = 3, a = 1, b = 2 gives w^2.
  EXPECT_EQ(weyl_braiding_phase(WeylString::z_power(2, {0}, 1), WeylString::x_power(2, {0}, 1)), 1);
  EXPECT_EQ(weyl_braiding_phase(WeylString::z_power(3, {0, 5}, 2), WeylString::x_power(3, {5, 9}, 1)), 2);
  EXPECT_EQ(weyl_braiding_phase(WeylString::z_power(5, {0, 1}, 3), WeylString::x_power(5, {0, 1}, 2)), (2 * 6) % 5);
  EXPECT_THROW(weyl_braiding_phase(WeylString::x_power(3, {0}, 1), WeylString::x_power(3, {0}, 1)), UsageError);
  EXPECT_THROW(weyl_multiply(WeylString(2), WeylString(3)), UsageError);
  EXPECT_EQ(weyl_gate_count(5), 4);
}
