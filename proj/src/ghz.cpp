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

#include "qss/ghz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qss {

std::string_view to_string(GhzForm form) {
  switch (form) {
    case GhzForm::XYY: return "XYY";
    case GhzForm::YXY: return "YXY";
    case GhzForm::YYX: return "YYX";
    case GhzForm::XXX: return "XXX";
  }
  return "?";
}

std::vector<BasisLabel> slot_labels(GhzForm form) {
  using B = BasisLabel;
  switch (form) {
    case GhzForm::XYY: return {B::X, B::Y, B::Y};
    case GhzForm::YXY: return {B::Y, B::X, B::Y};
    case GhzForm::YYX: return {B::Y, B::Y, B::X};
    case GhzForm::XXX: return {B::X, B::X, B::X};
  }
  return {};
}

GhzSpec::GhzSpec(Dim d_, ZMod alpha_, GhzForm form_) : d(d_), alpha(alpha_), form(form_) {
  if (alpha.dim() != d) throw ContractError("hidden value lives in a different Z_d");
}

PureState ghz_sum_form(const GhzSpec& spec) {
  const int n = spec.d.value();
  const auto labels = slot_labels(spec.form);
  const Matrix& b1 = basis_for(labels[0], spec.d).columns();
  const Matrix& b2 = basis_for(labels[1], spec.d).columns();
  const Matrix& b3 = basis_for(labels[2], spec.d).columns();
  Amplitudes out = Amplitudes::Zero(static_cast<Eigen::Index>(n) * n * n);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      const int u = ZMod(spec.alpha.value() - s - t, spec.d).value();
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const cx ij = b1(i, s) * b2(j, t);
          const Eigen::Index base = (static_cast<Eigen::Index>(i) * n + j) * n;
          out.segment(base, n) += ij * b3.col(u);
        }
      }
    }
  }
  out /= static_cast<double>(n);
  return PureState::from_amplitudes(std::move(out), {n, n, n});
}

PureState ghz_closed_form(const GhzSpec& spec) {
  const int n = spec.d.value();
  const long long a = spec.alpha.value();
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  Amplitudes out = Amplitudes::Zero(static_cast<Eigen::Index>(n) * n * n);
  const Eigen::Index stride = static_cast<Eigen::Index>(n) * n + n + 1;  // |jjj> = j * stride
  for (long long j = 0; j < n; ++j) {
    long long exponent = 0;
    switch (spec.form) {
      case GhzForm::XYY:
        exponent = spec.d.is_even() ? j * (j - 2 - a) : j * (j - 1 - a);
        break;
      case GhzForm::XXX:
        exponent = -j * a;
        break;
      default:
        throw ContractError("no closed form for GHZ form " + std::string(to_string(spec.form)));
    }
    out[j * stride] = norm * omega_pow(spec.d, exponent);
  }
  return PureState::from_amplitudes(std::move(out), {n, n, n});
}

cx ghz_eigenvalue(Dim d, ZMod alpha) {
  return omega_pow(d, alpha.value() + (d.is_even() ? 1 : 0));
}

Operator correlation_operator(Dim d, GhzForm form) {
  const Operator x = pauli_x(d);
  const Operator y = pauli_y(d);
  const auto labels = slot_labels(form);
  auto pick = [&](BasisLabel l) -> const Operator& { return l == BasisLabel::X ? x : y; };
  return tensor(tensor(pick(labels[0]), pick(labels[1])), pick(labels[2]));
}

bool check_u_relation(Dim d, ZMod alpha, double tol) {
  const PureState rotated = apply_on(unitary_u(d), ghz_closed_form({d, alpha, GhzForm::XXX}), 0);
  return states_equal_up_to_phase(rotated, ghz_closed_form({d, alpha, GhzForm::XYY}), tol);
}

bool form_equivalence(Dim d, ZMod alpha, double tol) {
  const PureState xyy = ghz_sum_form({d, alpha, GhzForm::XYY});
  const PureState yxy = ghz_sum_form({d, alpha, GhzForm::YXY});
  const PureState yyx = ghz_sum_form({d, alpha, GhzForm::YYX});
  return states_equal_up_to_phase(xyy, yxy, tol) && states_equal_up_to_phase(xyy, yyx, tol) &&
         states_equal_up_to_phase(yxy, yyx, tol);
}

namespace {

// Matrix with exactly one nonzero per column: column c maps to row target[c]
// with coefficient phase[c].
struct Monomial {
  std::vector<int> target;
  std::vector<cx> phase;

  static Monomial identity(int n) {
    Monomial m;
    m.target.resize(static_cast<std::size_t>(n));
    std::iota(m.target.begin(), m.target.end(), 0);
    m.phase.assign(static_cast<std::size_t>(n), cx(1.0, 0.0));
    return m;
  }

  static Monomial from_dense(const Matrix& a) {
    const auto n = static_cast<int>(a.cols());
    Monomial m;
    m.target.assign(static_cast<std::size_t>(n), -1);
    m.phase.assign(static_cast<std::size_t>(n), cx(0.0, 0.0));
    for (int c = 0; c < n; ++c) {
      for (int r = 0; r < n; ++r) {
        if (std::abs(a(r, c)) < 1e-14) continue;
        if (m.target[static_cast<std::size_t>(c)] != -1) throw NumericalError("operator is not monomial");
        m.target[static_cast<std::size_t>(c)] = r;
        m.phase[static_cast<std::size_t>(c)] = a(r, c);
      }
      if (m.target[static_cast<std::size_t>(c)] == -1) throw NumericalError("operator has a zero column");
    }
    return m;
  }

  // (this * rhs)
  Monomial after(const Monomial& rhs) const {
    Monomial out;
    out.target.resize(rhs.target.size());
    out.phase.resize(rhs.target.size());
    for (std::size_t c = 0; c < rhs.target.size(); ++c) {
      const auto mid = static_cast<std::size_t>(rhs.target[c]);
      out.target[c] = target[mid];
      out.phase[c] = phase[mid] * rhs.phase[c];
    }
    return out;
  }

  // Kronecker product, this = most significant factor.
  Monomial kron(const Monomial& rhs) const {
    const std::size_t nb = rhs.target.size();
    Monomial out;
    out.target.resize(target.size() * nb);
    out.phase.resize(target.size() * nb);
    for (std::size_t i = 0; i < target.size(); ++i) {
      for (std::size_t j = 0; j < nb; ++j) {
        out.target[i * nb + j] = target[i] * static_cast<int>(nb) + rhs.target[j];
        out.phase[i * nb + j] = phase[i] * rhs.phase[j];
      }
    }
    return out;
  }
};

std::vector<Monomial> powers(const Monomial& m, int count) {
  std::vector<Monomial> out;
  out.reserve(static_cast<std::size_t>(count));
  out.push_back(Monomial::identity(static_cast<int>(m.target.size())));
  for (int k = 1; k < count; ++k) out.push_back(m.after(out.back()));
  return out;
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

}  // namespace

Eigenspace common_eigenspace(Dim d, ZMod alpha, int solver_limit, double threshold) {
  if (d.value() > solver_limit) {
    throw ResourceError("common_eigenspace: d = " + std::to_string(d.value()) +
                        " exceeds solver limit " + std::to_string(solver_limit));
  }
  if (alpha.dim() != d) throw ContractError("hidden value lives in a different Z_d");
  const int n = d.value();
  const int total = n * n * n;
  const long long lambda_exponent = alpha.value() + (d.is_even() ? 1 : 0);

  const Monomial x = Monomial::from_dense(pauli_x(d).matrix());
  const Monomial y = Monomial::from_dense(pauli_y(d).matrix());
  const std::vector<std::vector<Monomial>> ops = {
      powers(x.kron(y).kron(y), n), powers(y.kron(x).kron(y), n), powers(y.kron(y).kron(x), n)};

  // lambda^{-m} for m = 0..3(d-1); the 1/d^3 normalization is applied once per entry.
  std::vector<cx> weight(static_cast<std::size_t>(3 * n));
  for (int m = 0; m < 3 * n; ++m) weight[static_cast<std::size_t>(m)] = omega_pow(d, -m * lambda_exponent);
  const double scale = 1.0 / (static_cast<double>(n) * n * n);

  // Sparse columns of P1 P2 P3.
  std::vector<std::vector<std::pair<int, cx>>> columns(static_cast<std::size_t>(total));
  std::vector<cx> scratch(static_cast<std::size_t>(total), cx(0.0, 0.0));
  std::vector<int> touched;
  for (int col = 0; col < total; ++col) {
    touched.clear();
    for (int c = 0; c < n; ++c) {
      const auto& m3 = ops[2][static_cast<std::size_t>(c)];
      const int r3 = m3.target[static_cast<std::size_t>(col)];
      const cx p3 = m3.phase[static_cast<std::size_t>(col)];
      for (int b = 0; b < n; ++b) {
        const auto& m2 = ops[1][static_cast<std::size_t>(b)];
        const int r2 = m2.target[static_cast<std::size_t>(r3)];
        const cx p2 = m2.phase[static_cast<std::size_t>(r3)] * p3;
        for (int a = 0; a < n; ++a) {
          const auto& m1 = ops[0][static_cast<std::size_t>(a)];
          const int r1 = m1.target[static_cast<std::size_t>(r2)];
          cx& slot = scratch[static_cast<std::size_t>(r1)];
          if (slot == cx(0.0, 0.0)) touched.push_back(r1);
          slot += weight[static_cast<std::size_t>(a + b + c)] * m1.phase[static_cast<std::size_t>(r2)] * p2;
        }
      }
    }
    auto& out = columns[static_cast<std::size_t>(col)];
    for (int r : touched) {
      const cx v = scratch[static_cast<std::size_t>(r)] * scale;
      scratch[static_cast<std::size_t>(r)] = cx(0.0, 0.0);
      if (std::abs(v) > 1e-12) out.emplace_back(r, v);
    }
    std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  }

  // Connected blocks of the sparsity pattern.
  std::vector<int> parent(static_cast<std::size_t>(total));
  std::iota(parent.begin(), parent.end(), 0);
  for (int col = 0; col < total; ++col) {
    for (const auto& [row, v] : columns[static_cast<std::size_t>(col)]) {
      const int ra = find_root(parent, row);
      const int rb = find_root(parent, col);
      if (ra != rb) parent[static_cast<std::size_t>(ra)] = rb;
    }
  }
  std::vector<std::vector<int>> blocks;
  {
    std::vector<int> block_of(static_cast<std::size_t>(total), -1);
    for (int i = 0; i < total; ++i) {
      const int root = find_root(parent, i);
      if (block_of[static_cast<std::size_t>(root)] == -1) {
        block_of[static_cast<std::size_t>(root)] = static_cast<int>(blocks.size());
        blocks.emplace_back();
      }
      blocks[static_cast<std::size_t>(block_of[static_cast<std::size_t>(root)])].push_back(i);
    }
  }

  Eigenspace result;
  std::vector<int> local(static_cast<std::size_t>(total), -1);
  for (const auto& block : blocks) {
    const auto size = static_cast<Eigen::Index>(block.size());
    for (Eigen::Index i = 0; i < size; ++i) local[static_cast<std::size_t>(block[static_cast<std::size_t>(i)])] = static_cast<int>(i);
    Matrix sub = Matrix::Zero(size, size);
    for (Eigen::Index c = 0; c < size; ++c) {
      for (const auto& [row, v] : columns[static_cast<std::size_t>(block[static_cast<std::size_t>(c)])]) {
        sub(local[static_cast<std::size_t>(row)], c) = v;
      }
    }
    Eigen::JacobiSVD<Matrix> svd(sub, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
      if (sv[k] > threshold) {
        Amplitudes full = Amplitudes::Zero(total);
        for (Eigen::Index i = 0; i < size; ++i) full[block[static_cast<std::size_t>(i)]] = svd.matrixU()(i, k);
        result.basis.push_back(PureState::normalized(std::move(full), {n, n, n}));
        result.smallest_kept = result.rank == 0 ? sv[k] : std::min(result.smallest_kept, sv[k]);
        ++result.rank;
      } else {
        result.largest_dropped = std::max(result.largest_dropped, sv[k]);
      }
    }
  }
  return result;
}

}  // namespace qss
