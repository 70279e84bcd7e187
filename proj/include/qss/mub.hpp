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

#ifndef QSS_MUB_HPP
#define QSS_MUB_HPP

// Generalized Pauli operators and the two mutually unbiased bases used by the
// protocol, plus the diagonal unitary that rotates the X basis for Alice.

#include <string_view>
#include <vector>

#include "qss/core_math.hpp"

namespace qss {

enum class Direction { X, Y };
enum class BasisLabel { X, Y, UXUdag };

std::string_view to_string(Direction dir);
std::string_view to_string(BasisLabel label);
Direction parse_direction(std::string_view text);
BasisLabel parse_basis_label(std::string_view text);

/// Shift: |j> -> |j+1 mod d>.
Operator pauli_x(Dim d);
/// Clock: |j> -> omega^j |j>.
Operator pauli_z(Dim d);
/// pauli_x * pauli_z: |j> -> omega^j |j+1 mod d>.
Operator pauli_y(Dim d);

/// diag(omega^{j(j-1)}) for odd d, diag(omega^{j(j-2)}) for even d.
Operator unitary_u(Dim d);

/// Ordered orthonormal basis of one qudit. Outcome k means projection onto vector(k).
class MeasBasis {
 public:
  /// Throws ContractError unless the vectors are orthonormal within kStateTolerance.
  MeasBasis(BasisLabel label, Dim d, std::vector<PureState> vectors);

  BasisLabel label() const noexcept { return label_; }
  Dim dim() const noexcept { return dim_; }
  int size() const noexcept { return dim_.value(); }
  const PureState& vector(int k) const { return vectors_.at(static_cast<std::size_t>(k)); }
  const std::vector<PureState>& vectors() const noexcept { return vectors_; }
  /// Column k holds vector(k).
  const Matrix& columns() const noexcept { return columns_; }

 private:
  BasisLabel label_;
  Dim dim_;
  std::vector<PureState> vectors_;
  Matrix columns_;
};

// The basis constructors return references into a process-wide cache keyed
// by (d, label); the referenced objects live until program exit.
const MeasBasis& x_basis(Dim d);
const MeasBasis& y_basis(Dim d);
const MeasBasis& uxu_basis(Dim d);
const MeasBasis& basis_for(BasisLabel label, Dim d);
const MeasBasis& basis_for(Direction dir, Dim d);

/// Eigenvalue of pauli_x on x_basis vector k: omega^k.
cx x_eigenvalue(Dim d, int k);
/// Eigenvalue of pauli_y on y_basis vector k: omega^k (odd d), omega^k sqrt(omega) (even d).
cx y_eigenvalue(Dim d, int k);

/// || op |v> - lambda |v> ||
double eigen_residual(const Operator& op, const PureState& v, cx lambda);

struct MubReport {
  double max_deviation = 0.0;  ///< max over k, k' of | |<k_x|k'_y>| - 1/sqrt(d) |
  int worst_x = 0;
  int worst_y = 0;
};

MubReport check_mub(Dim d);

}  // namespace qss

#endif  // QSS_MUB_HPP
