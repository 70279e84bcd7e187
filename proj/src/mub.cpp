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

#include "qss/mub.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>

namespace qss {

std::string_view to_string(Direction dir) { return dir == Direction::X ? "X" : "Y"; }

std::string_view to_string(BasisLabel label) {
  switch (label) {
    case BasisLabel::X: return "X";
    case BasisLabel::Y: return "Y";
    case BasisLabel::UXUdag: return "UXUdag";
  }
  return "?";
}

Direction parse_direction(std::string_view text) {
  if (text == "X") return Direction::X;
  if (text == "Y") return Direction::Y;
  throw ContractError("unknown direction '" + std::string(text) + "'");
}

BasisLabel parse_basis_label(std::string_view text) {
  if (text == "X") return BasisLabel::X;
  if (text == "Y") return BasisLabel::Y;
  if (text == "UXUdag") return BasisLabel::UXUdag;
  throw ContractError("unknown basis label '" + std::string(text) + "'");
}

Operator pauli_x(Dim d) {
  const int n = d.value();
  Matrix m = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) m((j + 1) % n, j) = 1.0;
  return Operator(std::move(m), {n});
}

Operator pauli_z(Dim d) {
  const int n = d.value();
  Matrix m = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) m(j, j) = omega_pow(d, j);
  return Operator(std::move(m), {n});
}

Operator pauli_y(Dim d) {
  const int n = d.value();
  Matrix m = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) m((j + 1) % n, j) = omega_pow(d, j);
  return Operator(std::move(m), {n});
}

Operator unitary_u(Dim d) {
  const int n = d.value();
  const long long shift = d.is_even() ? 2 : 1;
  Matrix m = Matrix::Zero(n, n);
  for (long long j = 0; j < n; ++j) m(j, j) = omega_pow(d, j * (j - shift));
  return Operator(std::move(m), {n});
}

MeasBasis::MeasBasis(BasisLabel label, Dim d, std::vector<PureState> vectors)
    : label_(label), dim_(d), vectors_(std::move(vectors)) {
  const int n = d.value();
  if (static_cast<int>(vectors_.size()) != n) throw ContractError("basis needs exactly d vectors");
  columns_.resize(n, n);
  for (int k = 0; k < n; ++k) {
    if (vectors_[static_cast<std::size_t>(k)].dims() != std::vector<int>{n}) {
      throw ContractError("basis vector is not a single qudit of dimension d");
    }
    columns_.col(k) = vectors_[static_cast<std::size_t>(k)].amplitudes();
  }
  const Matrix gram = columns_.adjoint() * columns_;
  const double dev = (gram - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (dev >= kStateTolerance) {
    throw ContractError("basis vectors are not orthonormal (deviation " + std::to_string(dev) + ")");
  }
}

namespace {

MeasBasis build_x_basis(Dim d) {
  const int n = d.value();
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<PureState> vecs;
  vecs.reserve(static_cast<std::size_t>(n));
  for (long long k = 0; k < n; ++k) {
    Amplitudes a(n);
    for (long long j = 0; j < n; ++j) a[j] = norm * omega_pow(d, -k * j);
    vecs.push_back(PureState::from_amplitudes(std::move(a), {n}));
  }
  return MeasBasis(BasisLabel::X, d, std::move(vecs));
}

// Odd d: exponent (j^2 - 2kj - j)/2 is an integer, so it is evaluated as a power
// of omega. Even d: the exponent (j^2 - 2kj - 2j)/2 may be half-integral and is
// evaluated with the principal root sqrt(omega) = exp(pi i / d).
MeasBasis build_y_basis(Dim d) {
  const int n = d.value();
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<PureState> vecs;
  vecs.reserve(static_cast<std::size_t>(n));
  for (long long k = 0; k < n; ++k) {
    Amplitudes a(n);
    for (long long j = 0; j < n; ++j) {
      if (d.is_even()) {
        a[j] = norm * sqrt_omega_pow(d, j * j - 2 * k * j - 2 * j);
      } else {
        a[j] = norm * omega_pow(d, (j * j - j) / 2 - k * j);
      }
    }
    vecs.push_back(PureState::from_amplitudes(std::move(a), {n}));
  }
  return MeasBasis(BasisLabel::Y, d, std::move(vecs));
}

MeasBasis build_uxu_basis(Dim d) {
  const Operator u = unitary_u(d);
  const MeasBasis& x = x_basis(d);
  std::vector<PureState> vecs;
  vecs.reserve(static_cast<std::size_t>(d.value()));
  for (const PureState& v : x.vectors()) vecs.push_back(u.apply(v));
  return MeasBasis(BasisLabel::UXUdag, d, std::move(vecs));
}

const MeasBasis& cached_basis(BasisLabel label, Dim d) {
  static std::mutex mutex;
  static std::map<std::pair<int, BasisLabel>, std::unique_ptr<const MeasBasis>> cache;
  const auto key = std::make_pair(d.value(), label);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return *it->second;
  }
  // Built outside the lock: the UXUdag basis itself looks up the X basis.
  std::unique_ptr<const MeasBasis> built;
  switch (label) {
    case BasisLabel::X: built = std::make_unique<const MeasBasis>(build_x_basis(d)); break;
    case BasisLabel::Y: built = std::make_unique<const MeasBasis>(build_y_basis(d)); break;
    case BasisLabel::UXUdag: built = std::make_unique<const MeasBasis>(build_uxu_basis(d)); break;
  }
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.try_emplace(key, std::move(built));
  return *it->second;
}

}  // namespace

const MeasBasis& x_basis(Dim d) { return cached_basis(BasisLabel::X, d); }
const MeasBasis& y_basis(Dim d) { return cached_basis(BasisLabel::Y, d); }
const MeasBasis& uxu_basis(Dim d) { return cached_basis(BasisLabel::UXUdag, d); }
const MeasBasis& basis_for(BasisLabel label, Dim d) { return cached_basis(label, d); }

const MeasBasis& basis_for(Direction dir, Dim d) {
  return dir == Direction::X ? x_basis(d) : y_basis(d);
}

cx x_eigenvalue(Dim d, int k) { return omega_pow(d, k); }

cx y_eigenvalue(Dim d, int k) {
  return d.is_even() ? omega_pow(d, k) * sqrt_omega_pow(d, 1) : omega_pow(d, k);
}

double eigen_residual(const Operator& op, const PureState& v, cx lambda) {
  return (op.apply(v.amplitudes()) - lambda * v.amplitudes()).norm();
}

MubReport check_mub(Dim d) {
  const MeasBasis& x = x_basis(d);
  const MeasBasis& y = y_basis(d);
  const Matrix overlaps = x.columns().adjoint() * y.columns();
  const double target = 1.0 / std::sqrt(static_cast<double>(d.value()));
  MubReport report;
  for (int k = 0; k < d.value(); ++k) {
    for (int kp = 0; kp < d.value(); ++kp) {
      const double dev = std::abs(std::abs(overlaps(k, kp)) - target);
      if (dev > report.max_deviation) report = {dev, k, kp};
    }
  }
  return report;
}

}  // namespace qss
