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

#include "qss/core_math.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace qss {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

long long positive_mod(long long k, long long m) {
  long long r = k % m;
  return r < 0 ? r + m : r;
}

void check_dims(const std::vector<int>& dims) {
  if (dims.empty() || static_cast<int>(dims.size()) > kMaxSubsystems) {
    throw ContractError("state must have between 1 and " + std::to_string(kMaxSubsystems) +
                        " subsystems, got " + std::to_string(dims.size()));
  }
  for (int d : dims) {
    if (d < 2) throw ContractError("subsystem dimension must be >= 2, got " + std::to_string(d));
  }
}

std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void check_product_size(std::size_t a, std::size_t b, std::size_t max_dimension) {
  if (a != 0 && b > max_dimension / a) {
    throw ResourceError("tensor product dimension " + std::to_string(a) + " x " +
                        std::to_string(b) + " exceeds limit " + std::to_string(max_dimension));
  }
}

}  // namespace

Dim::Dim(int d) : d_(d) {
  if (d < 2) throw ContractError("qudit dimension must be >= 2, got " + std::to_string(d));
}

cx omega(Dim d) { return omega_pow(d, 1); }

cx omega_pow(Dim d, long long k) {
  const long long r = positive_mod(k, d.value());
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / d.value());
}

cx sqrt_omega_pow(Dim d, long long k) {
  const long long r = positive_mod(k, 2LL * d.value());
  return std::polar(1.0, std::numbers::pi * static_cast<double>(r) / d.value());
}

ZMod::ZMod(long long value, Dim d)
    : value_(static_cast<int>(positive_mod(value, d.value()))), dim_(d) {}

void ZMod::require_same_dim(ZMod other) const {
  if (other.dim_ != dim_) throw ContractError("ZMod arithmetic across different dimensions");
}

ZMod ZMod::operator+(ZMod other) const {
  require_same_dim(other);
  return ZMod(static_cast<long long>(value_) + other.value_, dim_);
}

ZMod ZMod::operator-(ZMod other) const {
  require_same_dim(other);
  return ZMod(static_cast<long long>(value_) - other.value_, dim_);
}

ZMod ZMod::operator*(ZMod other) const {
  require_same_dim(other);
  return ZMod(static_cast<long long>(value_) * other.value_, dim_);
}

ZMod ZMod::operator-() const { return ZMod(-static_cast<long long>(value_), dim_); }

std::size_t total_dimension(std::span<const int> dims) {
  std::size_t n = 1;
  for (int d : dims) n *= static_cast<std::size_t>(d);
  return n;
}

PureState::PureState(Amplitudes amplitudes, std::vector<int> dims)
    : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
  check_dims(dims_);
  if (static_cast<std::size_t>(amplitudes_.size()) != total_dimension(dims_)) {
    throw ContractError("amplitude count " + std::to_string(amplitudes_.size()) +
                        " does not match subsystem dimensions");
  }
}

PureState PureState::from_amplitudes(Amplitudes amplitudes, std::vector<int> dims) {
  PureState s(std::move(amplitudes), std::move(dims));
  const double norm2 = s.amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kStateTolerance) {
    throw ContractError("state is not normalized: squared norm " + std::to_string(norm2));
  }
  return s;
}

PureState PureState::normalized(Amplitudes amplitudes, std::vector<int> dims) {
  const double norm = amplitudes.norm();
  if (norm < 1e-12) throw NumericalError("cannot normalize a zero vector");
  amplitudes /= norm;
  return PureState(std::move(amplitudes), std::move(dims));
}

PureState PureState::computational(std::vector<int> dims, std::span<const int> digits) {
  check_dims(dims);
  if (digits.size() != dims.size()) throw ContractError("digit count does not match subsystems");
  std::size_t index = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (digits[i] < 0 || digits[i] >= dims[i]) throw ContractError("digit out of range");
    index = index * static_cast<std::size_t>(dims[i]) + static_cast<std::size_t>(digits[i]);
  }
  Amplitudes a = Amplitudes::Zero(static_cast<Eigen::Index>(total_dimension(dims)));
  a[static_cast<Eigen::Index>(index)] = 1.0;
  return PureState(std::move(a), std::move(dims));
}

PureState PureState::basis_state(Dim d, int k) {
  const int digit[] = {k};
  return computational({d.value()}, digit);
}

Operator::Operator(Matrix entries, std::vector<int> dims)
    : entries_(std::move(entries)), dims_(std::move(dims)) {
  if (dims_.empty()) throw ContractError("operator needs at least one subsystem");
  const auto n = total_dimension(dims_);
  if (static_cast<std::size_t>(entries_.rows()) != n ||
      static_cast<std::size_t>(entries_.cols()) != n) {
    throw ContractError("operator shape does not match subsystem dimensions");
  }
}

Operator Operator::identity(Dim d) {
  return Operator(Matrix::Identity(d.value(), d.value()), {d.value()});
}

double Operator::unitarity_deviation() const {
  const Matrix g = entries_.adjoint() * entries_ - Matrix::Identity(entries_.rows(), entries_.cols());
  return g.cwiseAbs().maxCoeff();
}

Operator Operator::adjoint() const { return Operator(entries_.adjoint(), dims_); }

Operator Operator::power(int exponent) const {
  if (exponent < 0) throw ContractError("negative operator power");
  Matrix result = Matrix::Identity(entries_.rows(), entries_.cols());
  Matrix base = entries_;
  for (int e = exponent; e > 0; e >>= 1) {
    if (e & 1) result = result * base;
    base = base * base;
  }
  return Operator(std::move(result), dims_);
}

Operator Operator::operator*(const Operator& rhs) const {
  if (rhs.dims_ != dims_) throw ContractError("operator product over different subsystems");
  return Operator(entries_ * rhs.entries_, dims_);
}

Amplitudes Operator::apply(const Amplitudes& v) const {
  if (v.size() != entries_.cols()) throw ContractError("operator/vector size mismatch");
  return entries_ * v;
}

PureState Operator::apply(const PureState& state) const {
  if (state.dims() != dims_) throw ContractError("operator/state subsystem mismatch");
  return PureState::from_amplitudes(entries_ * state.amplitudes(), dims_);
}

PureState tensor(const PureState& a, const PureState& b, std::size_t max_dimension) {
  check_product_size(a.size(), b.size(), max_dimension);
  const auto na = static_cast<Eigen::Index>(a.size());
  const auto nb = static_cast<Eigen::Index>(b.size());
  Amplitudes out(na * nb);
  for (Eigen::Index i = 0; i < na; ++i) out.segment(i * nb, nb) = a.amplitudes()[i] * b.amplitudes();
  return PureState::normalized(std::move(out), concat(a.dims(), b.dims()));
}

Operator tensor(const Operator& a, const Operator& b, std::size_t max_dimension) {
  check_product_size(a.dimension(), b.dimension(), max_dimension);
  const auto na = a.matrix().rows();
  const auto nb = b.matrix().rows();
  Matrix out(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < na; ++j) out.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
  }
  return Operator(std::move(out), concat(a.dims(), b.dims()));
}

PureState apply_on(const Operator& op, const PureState& state, int slot) {
  if (slot < 0 || slot >= state.subsystems()) throw ContractError("subsystem index out of range");
  const int width = state.dims()[static_cast<std::size_t>(slot)];
  if (op.dims().size() != 1 || op.dimension() != static_cast<std::size_t>(width)) {
    throw ContractError("local operator does not match subsystem dimension");
  }
  Eigen::Index right = 1;
  for (std::size_t i = static_cast<std::size_t>(slot) + 1; i < state.dims().size(); ++i) right *= state.dims()[i];
  const Eigen::Index left = static_cast<Eigen::Index>(state.size()) / (right * width);
  const Amplitudes& in = state.amplitudes();
  Amplitudes out = Amplitudes::Zero(in.size());
  const Matrix& m = op.matrix();
  for (Eigen::Index l = 0; l < left; ++l) {
    for (Eigen::Index r = 0; r < width; ++r) {
      for (Eigen::Index c = 0; c < width; ++c) {
        if (m(r, c) == cx(0.0, 0.0)) continue;
        out.segment((l * width + r) * right, right) += m(r, c) * in.segment((l * width + c) * right, right);
      }
    }
  }
  return PureState::from_amplitudes(std::move(out), state.dims());
}

cx inner(const PureState& a, const PureState& b) {
  if (a.size() != b.size()) {
    throw ContractError("inner product of states with dimensions " + std::to_string(a.size()) +
                        " and " + std::to_string(b.size()));
  }
  return a.amplitudes().dot(b.amplitudes());  // Eigen's dot conjugates the left operand
}

bool states_equal_up_to_phase(const PureState& a, const PureState& b, double tol) {
  if (a.dims() != b.dims()) return false;
  return std::abs(inner(a, b)) > 1.0 - tol;
}

Sampler::Sampler(std::uint64_t seed, std::string_view label)
    : engine_(splitmix64(splitmix64(seed) ^ fnv1a(label))) {}

double Sampler::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

int Sampler::uniform_int(int n) {
  if (n <= 0) throw ContractError("uniform_int needs a positive range");
  const auto range = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return static_cast<int>(x % range);
}

std::size_t Sampler::discrete(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) throw NumericalError("discrete distribution with no mass");
  const double target = uniform() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last_positive = i;
    acc += weights[i];
    if (target < acc) return i;
  }
  return last_positive;
}

Sampler rng_stream(std::uint64_t seed, std::string_view label) { return Sampler(seed, label); }

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
  return rng_stream(seed, label).next_u64();
}

}  // namespace qss
