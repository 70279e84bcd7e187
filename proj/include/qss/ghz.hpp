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

#ifndef QSS_GHZ_HPP
#define QSS_GHZ_HPP

// GHZ-like three-qudit states, their equivalent presentations, and the
// common-eigenspace solver that certifies they are the only states passing
// the correlation test.

#include <string_view>
#include <vector>

#include "qss/core_math.hpp"
#include "qss/mub.hpp"

namespace qss {

inline constexpr int kDefaultSolverLimit = 16;

/// Which basis each of the three slots uses in the MUB-product decomposition.
enum class GhzForm { XYY, YXY, YYX, XXX };

std::string_view to_string(GhzForm form);
std::vector<BasisLabel> slot_labels(GhzForm form);

struct GhzSpec {
  GhzSpec(Dim d, ZMod alpha, GhzForm form);
  GhzSpec(Dim d, int alpha, GhzForm form) : GhzSpec(d, ZMod(alpha, d), form) {}

  Dim d;
  ZMod alpha;
  GhzForm form;
};

/// (1/d) sum_{s+t+u = alpha} |s_b1> |t_b2> |u_b3> with per-slot bases from the form.
PureState ghz_sum_form(const GhzSpec& spec);

/// Computational-basis formula. Only XYY and XXX have one; other forms throw ContractError.
PureState ghz_closed_form(const GhzSpec& spec);

/// Eigenvalue of the three correlation operators on the XYY state:
/// omega^alpha for odd d, omega^(alpha+1) for even d.
cx ghz_eigenvalue(Dim d, ZMod alpha);

/// X(x)Y(x)Y, Y(x)X(x)Y or Y(x)Y(x)X for the matching form; XXX gives X(x)X(x)X.
Operator correlation_operator(Dim d, GhzForm form);

/// (U (x) I (x) I) applied to the XXX state equals the XYY state up to phase.
bool check_u_relation(Dim d, ZMod alpha, double tol = kStateTolerance);

/// The XYY, YXY and YYX sum forms agree pairwise up to phase.
bool form_equivalence(Dim d, ZMod alpha, double tol = kStateTolerance);

struct Eigenspace {
  int rank = 0;
  std::vector<PureState> basis;      ///< orthonormal, one state per retained singular value
  double smallest_kept = 0.0;        ///< smallest singular value above threshold (0 if none)
  double largest_dropped = 0.0;      ///< largest singular value at or below threshold
};

/// Simultaneous eigenspace of X(x)Y(x)Y, Y(x)X(x)Y and Y(x)Y(x)X at ghz_eigenvalue(d, alpha).
///
/// Each operator M has M^d = I, so P_M = (1/d) sum_m lambda^{-m} M^m is the
/// projector onto its lambda-eigenspace. The three operators commute and the
/// product of their projectors is the projector onto the intersection. The
/// product is assembled column by column (the operators are monomial matrices,
/// so each term is a single entry), split into its connected blocks, and each
/// block is ranked by singular values against `threshold`.
///
/// Throws ResourceError if d exceeds `solver_limit`.
Eigenspace common_eigenspace(Dim d, ZMod alpha, int solver_limit = kDefaultSolverLimit,
                             double threshold = kEigenTolerance);

}  // namespace qss

#endif  // QSS_GHZ_HPP
