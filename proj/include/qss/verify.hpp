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

#ifndef QSS_VERIFY_HPP
#define QSS_VERIFY_HPP

#include <vector>

#include "qss/core_math.hpp"
#include "qss/ghz.hpp"

namespace qss {

/// Every algebraic identity the protocol relies on, evaluated for one d.
struct DimensionCheck {
  int d = 0;
  double mub_deviation = 0.0;
  double x_residual = 0.0;           ///< max_k ||X|k_x> - omega^k |k_x>||
  double y_residual = 0.0;           ///< max_k ||Y|k_y> - lambda_k |k_y>||
  double unitarity_deviation = 0.0;  ///< worst of X, Z, Y, U
  double sum_vs_closed = 0.0;        ///< max_alpha (1 - |<sum form|closed form>|)
  bool u_relation = true;
  bool form_equivalence = true;
  std::vector<int> eigenspace_ranks;  ///< one per alpha
  bool eigenspace_matches = true;     ///< rank-1 generator equals the closed form up to phase

  bool passed() const;
};

/// Throws ResourceError when d exceeds `solver_limit`.
DimensionCheck verify_dimension(Dim d, int solver_limit = kDefaultSolverLimit);

}  // namespace qss

#endif  // QSS_VERIFY_HPP
