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

#ifndef QSS_CORE_MATH_HPP
#define QSS_CORE_MATH_HPP

// Dense complex linear algebra on small multi-qudit systems.
//
// Subsystem ordering is big-endian throughout: in a state over dims
// (d0, d1, d2) the basis index of |j0 j1 j2> is (j0 * d1 + j1) * d2 + j2.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qss/errors.hpp"

namespace qss {

using cx = std::complex<double>;
using Amplitudes = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kStateTolerance = 1e-9;
inline constexpr double kEigenTolerance = 1e-7;
inline constexpr std::size_t kDefaultMaxDimension = 1'000'000;
inline constexpr int kMaxSubsystems = 4;

/// Dimension of a single qudit. Always at least 2.
class Dim {
 public:
  explicit Dim(int d);

  int value() const noexcept { return d_; }
  bool is_even() const noexcept { return d_ % 2 == 0; }

  friend bool operator==(Dim, Dim) = default;

 private:
  int d_;
};

/// omega = exp(2 pi i / d).
cx omega(Dim d);
/// omega^k with k reduced mod d before evaluating, so large exponents stay exact.
cx omega_pow(Dim d, long long k);
/// exp(pi i k / d), i.e. sqrt(omega)^k with the principal root; k reduced mod 2d.
cx sqrt_omega_pow(Dim d, long long k);

/// Residue in Z_d.
class ZMod {
 public:
  ZMod(long long value, Dim d);

  int value() const noexcept { return value_; }
  Dim dim() const noexcept { return dim_; }

  ZMod operator+(ZMod other) const;
  ZMod operator-(ZMod other) const;
  ZMod operator*(ZMod other) const;
  ZMod operator-() const;

  friend bool operator==(ZMod, ZMod) = default;

 private:
  void require_same_dim(ZMod other) const;

  int value_;
  Dim dim_;
};

/// Normalized pure state over one or more subsystems.
class PureState {
 public:
  /// Validates that the amplitudes have unit norm within kStateTolerance.
  static PureState from_amplitudes(Amplitudes amplitudes, std::vector<int> dims);
  /// Rescales to unit norm; throws NumericalError on a (near) zero vector.
  static PureState normalized(Amplitudes amplitudes, std::vector<int> dims);
  /// Computational basis state |digits[0] digits[1] ...>.
  static PureState computational(std::vector<int> dims, std::span<const int> digits);
  static PureState basis_state(Dim d, int k);

  const Amplitudes& amplitudes() const noexcept { return amplitudes_; }
  const std::vector<int>& dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
  int subsystems() const noexcept { return static_cast<int>(dims_.size()); }
  cx operator[](std::size_t i) const { return amplitudes_[static_cast<Eigen::Index>(i)]; }

 private:
  PureState(Amplitudes amplitudes, std::vector<int> dims);

  Amplitudes amplitudes_;
  std::vector<int> dims_;
};

/// Dense operator on one or more subsystems.
class Operator {
 public:
  Operator(Matrix entries, std::vector<int> dims);

  static Operator identity(Dim d);

  const Matrix& matrix() const noexcept { return entries_; }
  const std::vector<int>& dims() const noexcept { return dims_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(entries_.rows()); }

  /// max |(U^dagger U - I)_{ij}|
  double unitarity_deviation() const;
  bool is_unitary(double tol = kStateTolerance) const { return unitarity_deviation() < tol; }

  Operator adjoint() const;
  Operator power(int exponent) const;
  Operator operator*(const Operator& rhs) const;

  /// Applies the operator to raw amplitudes (no normalization involved).
  Amplitudes apply(const Amplitudes& v) const;
  /// Applies a unitary to a state; the result must stay normalized.
  PureState apply(const PureState& state) const;

 private:
  Matrix entries_;
  std::vector<int> dims_;
};

/// Kronecker product, first operand = most significant subsystem.
PureState tensor(const PureState& a, const PureState& b,
                 std::size_t max_dimension = kDefaultMaxDimension);
Operator tensor(const Operator& a, const Operator& b,
                std::size_t max_dimension = kDefaultMaxDimension);

/// Applies a single-qudit operator to subsystem `slot`, identity elsewhere.
PureState apply_on(const Operator& op, const PureState& state, int slot);

/// <a|b>, conjugate-linear in a.
cx inner(const PureState& a, const PureState& b);

bool states_equal_up_to_phase(const PureState& a, const PureState& b,
                              double tol = kStateTolerance);

/// Deterministic random stream. The same (seed, label) always reproduces the
/// same sequence; different labels give unrelated streams.
class Sampler {
 public:
  Sampler(std::uint64_t seed, std::string_view label);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, n).
  int uniform_int(int n);
  bool bernoulli(double p) { return uniform() < p; }
  /// Index drawn with probability proportional to weights[i].
  std::size_t discrete(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
};

Sampler rng_stream(std::uint64_t seed, std::string_view label);

/// Seed for an independent sub-experiment, e.g. derive_seed(base, "trial-17").
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);

std::size_t total_dimension(std::span<const int> dims);

}  // namespace qss

#endif  // QSS_CORE_MATH_HPP
