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

#include "qss/verify.hpp"

#include <algorithm>
#include <cmath>

#include "qss/mub.hpp"

namespace qss {

bool DimensionCheck::passed() const {
  const bool ranks_ok = std::all_of(eigenspace_ranks.begin(), eigenspace_ranks.end(),
                                    [](int r) { return r == 1; });
  return mub_deviation < kStateTolerance && x_residual < kEigenTolerance &&
         y_residual < kEigenTolerance && unitarity_deviation < kStateTolerance &&
         sum_vs_closed < kStateTolerance && u_relation && form_equivalence && ranks_ok &&
         eigenspace_matches;
}

DimensionCheck verify_dimension(Dim d, int solver_limit) {
  if (d.value() > solver_limit) {
    throw ResourceError("verify: d = " + std::to_string(d.value()) + " exceeds solver limit " +
                        std::to_string(solver_limit));
  }
  DimensionCheck c;
  c.d = d.value();
  c.mub_deviation = check_mub(d).max_deviation;

  const Operator x = pauli_x(d);
  const Operator y = pauli_y(d);
  for (int k = 0; k < d.value(); ++k) {
    c.x_residual = std::max(c.x_residual, eigen_residual(x, x_basis(d).vector(k), x_eigenvalue(d, k)));
    c.y_residual = std::max(c.y_residual, eigen_residual(y, y_basis(d).vector(k), y_eigenvalue(d, k)));
  }
  for (const Operator& op : {x, pauli_z(d), y, unitary_u(d)}) {
    c.unitarity_deviation = std::max(c.unitarity_deviation, op.unitarity_deviation());
  }

  for (int a = 0; a < d.value(); ++a) {
    const ZMod alpha(a, d);
    const PureState closed = ghz_closed_form({d, alpha, GhzForm::XYY});
    const PureState sum = ghz_sum_form({d, alpha, GhzForm::XYY});
    c.sum_vs_closed = std::max(c.sum_vs_closed, 1.0 - std::abs(inner(sum, closed)));
    c.u_relation = c.u_relation && check_u_relation(d, alpha);
    c.form_equivalence = c.form_equivalence && form_equivalence(d, alpha);
    const Eigenspace space = common_eigenspace(d, alpha, solver_limit);
    c.eigenspace_ranks.push_back(space.rank);
    c.eigenspace_matches = c.eigenspace_matches && space.rank == 1 &&
                           states_equal_up_to_phase(space.basis.front(), closed);
  }
  return c;
}

}  // namespace qss
