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

#include "qss/measurement.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace qss {

std::string_view to_string(Party party) {
  switch (party) {
    case Party::Alice: return "alice";
    case Party::Bob: return "bob";
    case Party::Charlie: return "charlie";
  }
  return "?";
}

Party parse_party(std::string_view text) {
  if (text == "alice") return Party::Alice;
  if (text == "bob") return Party::Bob;
  if (text == "charlie") return Party::Charlie;
  throw ContractError("unknown party '" + std::string(text) + "'");
}

namespace {

struct SlotLayout {
  Eigen::Index left = 1;   // product of dims before the slot
  Eigen::Index width = 0;  // dim of the slot
  Eigen::Index right = 1;  // product of dims after the slot
};

SlotLayout layout(const PureState& state, int slot, const MeasBasis& basis) {
  if (slot < 0 || slot >= state.subsystems()) {
    throw ContractError("slot " + std::to_string(slot) + " out of range");
  }
  const auto& dims = state.dims();
  if (dims[static_cast<std::size_t>(slot)] != basis.dim().value()) {
    throw ContractError("basis dimension does not match subsystem " + std::to_string(slot));
  }
  SlotLayout l;
  for (int i = 0; i < slot; ++i) l.left *= dims[static_cast<std::size_t>(i)];
  l.width = dims[static_cast<std::size_t>(slot)];
  for (int i = slot + 1; i < state.subsystems(); ++i) l.right *= dims[static_cast<std::size_t>(i)];
  return l;
}

// <v_k|_slot psi as a (left * right) vector.
Amplitudes project(const PureState& state, const SlotLayout& l, const Matrix& columns, int k) {
  Amplitudes out = Amplitudes::Zero(l.left * l.right);
  const Amplitudes& a = state.amplitudes();
  for (Eigen::Index i = 0; i < l.left; ++i) {
    for (Eigen::Index j = 0; j < l.width; ++j) {
      const cx c = std::conj(columns(j, k));
      if (c == cx(0.0, 0.0)) continue;
      out.segment(i * l.right, l.right) += c * a.segment((i * l.width + j) * l.right, l.right);
    }
  }
  return out;
}

}  // namespace

std::vector<double> outcome_probabilities(const PureState& state, int slot, const MeasBasis& basis) {
  const SlotLayout l = layout(state, slot, basis);
  std::vector<double> probs(static_cast<std::size_t>(l.width));
  for (int k = 0; k < l.width; ++k) {
    probs[static_cast<std::size_t>(k)] = project(state, l, basis.columns(), k).squaredNorm();
  }
  return probs;
}

Measured measure_subsystem(const PureState& state, int slot, const MeasBasis& basis,
                           Sampler& sampler, Party party) {
  const SlotLayout l = layout(state, slot, basis);
  const std::vector<double> probs = outcome_probabilities(state, slot, basis);
  if (std::accumulate(probs.begin(), probs.end(), 0.0) < 1e-12) {
    throw NumericalError("measurement has no outcome with nonzero probability");
  }
  const int k = static_cast<int>(sampler.discrete(probs));
  const Amplitudes rest = project(state, l, basis.columns(), k);

  Amplitudes collapsed(static_cast<Eigen::Index>(state.size()));
  for (Eigen::Index i = 0; i < l.left; ++i) {
    for (Eigen::Index j = 0; j < l.width; ++j) {
      collapsed.segment((i * l.width + j) * l.right, l.right) =
          basis.columns()(j, k) * rest.segment(i * l.right, l.right);
    }
  }
  return {MeasOutcome{ZMod(k, basis.dim()), basis.label(), party},
          PureState::normalized(std::move(collapsed), state.dims())};
}

BasisLabel alice_basis_label(Direction bob, Direction charlie) {
  if (bob == Direction::Y && charlie == Direction::Y) return BasisLabel::X;
  if (bob == Direction::X && charlie == Direction::X) return BasisLabel::UXUdag;
  return BasisLabel::Y;
}

const MeasBasis& alice_basis_for(Direction bob, Direction charlie, Dim d) {
  return basis_for(alice_basis_label(bob, charlie), d);
}

bool correlation_holds(const MeasOutcome& s, const MeasOutcome& t, const MeasOutcome& u, ZMod alpha) {
  return s.value + t.value + u.value == alpha;
}

ProbTable::ProbTable(Dim d, std::vector<double> p) : d_(d), p_(std::move(p)) {
  const auto n = static_cast<std::size_t>(d.value());
  if (p_.size() != n * n * n) throw ContractError("probability table must have d^3 entries");
}

double ProbTable::operator()(int s, int t, int u) const {
  const int n = d_.value();
  return p_.at(static_cast<std::size_t>((s * n + t) * n + u));
}

double ProbTable::total() const { return std::accumulate(p_.begin(), p_.end(), 0.0); }

ProbTable joint_distribution(const PureState& state, const std::array<const MeasBasis*, 3>& bases) {
  if (state.subsystems() != 3) throw ContractError("joint_distribution needs a three-qudit state");
  const Dim d = bases[0]->dim();
  const int n = d.value();
  for (int i = 0; i < 3; ++i) {
    if (state.dims()[static_cast<std::size_t>(i)] != bases[static_cast<std::size_t>(i)]->dim().value() ||
        bases[static_cast<std::size_t>(i)]->dim() != d) {
      throw ContractError("basis dimensions do not match the state");
    }
  }
  // Contract each slot with the adjoint of its basis matrix.
  const Matrix a1 = bases[0]->columns().adjoint();
  const Matrix a2 = bases[1]->columns().adjoint();
  const Matrix a3 = bases[2]->columns().adjoint();
  const Amplitudes& psi = state.amplitudes();
  const auto nn = static_cast<Eigen::Index>(n);
  std::vector<cx> step1(static_cast<std::size_t>(n * n * n)), step2(step1.size());
  // slot 3
  for (Eigen::Index i = 0; i < nn * nn; ++i) {
    Eigen::Map<Eigen::VectorXcd>(&step1[static_cast<std::size_t>(i * nn)], nn) = a3 * psi.segment(i * nn, nn);
  }
  // slot 2
  for (Eigen::Index i = 0; i < nn; ++i) {
    for (Eigen::Index u = 0; u < nn; ++u) {
      for (Eigen::Index t = 0; t < nn; ++t) {
        cx acc = 0.0;
        for (Eigen::Index j = 0; j < nn; ++j) acc += a2(t, j) * step1[static_cast<std::size_t>((i * nn + j) * nn + u)];
        step2[static_cast<std::size_t>((i * nn + t) * nn + u)] = acc;
      }
    }
  }
  // slot 1
  std::vector<double> p(step1.size());
  for (Eigen::Index s = 0; s < nn; ++s) {
    for (Eigen::Index tu = 0; tu < nn * nn; ++tu) {
      cx acc = 0.0;
      for (Eigen::Index i = 0; i < nn; ++i) acc += a1(s, i) * step2[static_cast<std::size_t>(i * nn * nn + tu)];
      p[static_cast<std::size_t>(s * nn * nn + tu)] = std::norm(acc);
    }
  }
  return ProbTable(d, std::move(p));
}

ProbTable joint_distribution(const GhzSpec& spec, const std::array<const MeasBasis*, 3>& bases) {
  const PureState state = spec.form == GhzForm::XYY || spec.form == GhzForm::XXX
                              ? ghz_closed_form(spec)
                              : ghz_sum_form(spec);
  return joint_distribution(state, bases);
}

}  // namespace qss
