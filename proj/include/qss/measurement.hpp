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

#ifndef QSS_MEASUREMENT_HPP
#define QSS_MEASUREMENT_HPP

#include <array>
#include <string_view>
#include <vector>

#include "qss/core_math.hpp"
#include "qss/ghz.hpp"
#include "qss/mub.hpp"

namespace qss {

enum class Party { Alice, Bob, Charlie };

std::string_view to_string(Party party);
Party parse_party(std::string_view text);

/// One party's measurement result. For UXUdag measurements the value is the
/// X-basis index k of U|k_x>, so correlations are plain label arithmetic.
struct MeasOutcome {
  ZMod value;
  BasisLabel basis;
  Party party;
};

struct Measured {
  MeasOutcome outcome;
  PureState state;  ///< renormalized post-measurement state
};

/// Born probabilities of each basis outcome on subsystem `slot`.
std::vector<double> outcome_probabilities(const PureState& state, int slot, const MeasBasis& basis);

/// Projective measurement of one subsystem with collapse.
/// Throws NumericalError if every outcome has vanishing probability.
Measured measure_subsystem(const PureState& state, int slot, const MeasBasis& basis,
                           Sampler& sampler, Party party = Party::Alice);

/// Alice's basis given Bob's and Charlie's directions:
/// (Y,Y) -> X, (Y,X) -> Y, (X,Y) -> Y, (X,X) -> UXUdag.
BasisLabel alice_basis_label(Direction bob, Direction charlie);
const MeasBasis& alice_basis_for(Direction bob, Direction charlie, Dim d);

/// s + t + u == alpha (mod d).
bool correlation_holds(const MeasOutcome& s, const MeasOutcome& t, const MeasOutcome& u, ZMod alpha);

/// Exact d^3 table of joint outcome probabilities.
class ProbTable {
 public:
  ProbTable(Dim d, std::vector<double> p);

  Dim dim() const noexcept { return d_; }
  double operator()(int s, int t, int u) const;
  double total() const;
  const std::vector<double>& values() const noexcept { return p_; }

 private:
  Dim d_;
  std::vector<double> p_;
};

ProbTable joint_distribution(const PureState& state, const std::array<const MeasBasis*, 3>& bases);
ProbTable joint_distribution(const GhzSpec& spec, const std::array<const MeasBasis*, 3>& bases);

}  // namespace qss

#endif  // QSS_MEASUREMENT_HPP
