// Copyright 2026 The qss-sim Authors
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

#include <thread>

#include "qss/errors.hpp"
#include "qss/mub.hpp"
#include "test_util.hpp"

namespace qss {
namespace {

Matrix to_matrix(const oracle::Mat& m) {
  Matrix out(m.size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out(i, j) = m[i][j];
  return out;
}

TEST(Pauli, QubitMatrices) {
  Matrix x(2, 2), z(2, 2), y(2, 2), u(2, 2);
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  y << 0, -1, 1, 0;  // X Z
  u << 1, 0, 0, -1;
  const Dim d(2);
  EXPECT_LT((pauli_x(d).matrix() - x).norm(), 1e-15);
  EXPECT_LT((pauli_z(d).matrix() - z).norm(), 1e-15);
  EXPECT_LT((pauli_y(d).matrix() - y).norm(), 1e-15);
  EXPECT_LT((unitary_u(d).matrix() - u).norm(), 1e-15);
}

TEST(Pauli, QutritActions) {
  const Dim d(3);
  const cx w = oracle::w(3, 1);
  const PureState one = PureState::basis_state(d, 1);
  const PureState y_one = pauli_y(d).apply(one);
  EXPECT_NEAR(std::abs(y_one[2] - w), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(y_one[0]) + std::abs(y_one[1]), 0.0, 1e-15);
  const Matrix u = unitary_u(d).matrix();
  EXPECT_NEAR(std::abs(u(0, 0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u(1, 1) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u(2, 2) - w * w), 0.0, 1e-15);
}

TEST(Pauli, MatchesDefinitionsAndIsUnitary) {
  for (int n = 2; n <= 12; ++n) {
    const Dim d(n);
    const oracle::Mat xo = oracle::shift(n), zo = oracle::clock(n);
    EXPECT_LT((pauli_x(d).matrix() - to_matrix(xo)).norm(), 1e-12);
    EXPECT_LT((pauli_z(d).matrix() - to_matrix(zo)).norm(), 1e-12);
    EXPECT_LT((pauli_y(d).matrix() - to_matrix(oracle::matmul(xo, zo))).norm(), 1e-12);
    for (const Operator& op : {pauli_x(d), pauli_y(d), pauli_z(d), unitary_u(d)}) EXPECT_TRUE(op.is_unitary());
  }
}

TEST(Pauli, YToTheDIsPlusMinusIdentity) {
  for (int n = 2; n <= 11; ++n) {
    const double sign = n % 2 ? 1.0 : -1.0;
    EXPECT_LT((pauli_y(Dim(n)).power(n).matrix() - sign * Matrix::Identity(n, n)).norm(), 1e-10) << n;
  }
}

TEST(Basis, VectorsMatchDefinitions) {
  for (int n = 2; n <= 16; ++n) {
    const Dim d(n);
    const auto xo = oracle::x_basis(n), yo = oracle::y_basis(n), uo = oracle::uxu_basis(n);
    for (int k = 0; k < n; ++k) {
      EXPECT_LT(testing::max_abs_diff(testing::to_vec(x_basis(d).vector(k)), xo[k]), 1e-12);
      EXPECT_LT(testing::max_abs_diff(testing::to_vec(y_basis(d).vector(k)), yo[k]), 1e-12);
      EXPECT_LT(testing::max_abs_diff(testing::to_vec(uxu_basis(d).vector(k)), uo[k]), 1e-12);
    }
  }
}

TEST(Basis, EigenRelations) {
  for (int n = 2; n <= 16; ++n) {
    const Dim d(n);
    const oracle::Mat xo = oracle::shift(n), yo = oracle::matmul(xo, oracle::clock(n));
    for (int k = 0; k < n; ++k) {
      // Oracle: apply hand-built matrices and compare with the stated eigenvalues.
      const auto xv = oracle::x_basis(n)[k], yv = oracle::y_basis(n)[k];
      const auto xa = oracle::matvec(xo, xv), ya = oracle::matvec(yo, yv);
      const cx lx = oracle::w(n, k);
      const cx ly = n % 2 ? oracle::w(n, k) : oracle::w(n, k + 0.5);
      for (int j = 0; j < n; ++j) {
        EXPECT_NEAR(std::abs(xa[j] - lx * xv[j]), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(ya[j] - ly * yv[j]), 0.0, 1e-12);
      }
      EXPECT_NEAR(std::abs(x_eigenvalue(d, k) - lx), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(y_eigenvalue(d, k) - ly), 0.0, 1e-12);
      EXPECT_LT(eigen_residual(pauli_x(d), x_basis(d).vector(k), x_eigenvalue(d, k)), 1e-12);
      EXPECT_LT(eigen_residual(pauli_y(d), y_basis(d).vector(k), y_eigenvalue(d, k)), 1e-12);
    }
  }
}

TEST(Basis, MutuallyUnbiased) {
  const Dim d3(3);
  EXPECT_NEAR(std::abs(inner(x_basis(d3).vector(0), y_basis(d3).vector(0))), 1.0 / std::sqrt(3.0), 1e-12);
  for (int n = 2; n <= 16; ++n) EXPECT_LT(check_mub(Dim(n)).max_deviation, 1e-9) << n;
}

TEST(Basis, CacheReturnsStableReferences) {
  const Dim d(7);
  const MeasBasis* first = &y_basis(d);
  std::vector<const MeasBasis*> seen(4);
  std::vector<std::thread> pool;
  for (int i = 0; i < 4; ++i) pool.emplace_back([&, i] { seen[i] = &basis_for(BasisLabel::Y, d); });
  for (auto& t : pool) t.join();
  for (const auto* p : seen) EXPECT_EQ(p, first);
  EXPECT_EQ(&basis_for(Direction::X, d), &x_basis(d));
}

TEST(Basis, RejectsNonOrthonormal) {
  const Dim d(2);
  const PureState zero = PureState::basis_state(d, 0);
  EXPECT_THROW(MeasBasis(BasisLabel::X, d, {zero, zero}), ContractError);
  EXPECT_THROW(MeasBasis(BasisLabel::X, d, {zero}), ContractError);
}

TEST(Labels, RoundTrip) {
  for (auto dir : {Direction::X, Direction::Y}) EXPECT_EQ(parse_direction(to_string(dir)), dir);
  for (auto l : {BasisLabel::X, BasisLabel::Y, BasisLabel::UXUdag}) EXPECT_EQ(parse_basis_label(to_string(l)), l);
  EXPECT_THROW(parse_direction("Z"), ContractError);
}

}  // namespace
}  // namespace qss
