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

#ifndef QSS_ADVERSARY_HPP
#define QSS_ADVERSARY_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qss/adversary_hooks.hpp"
#include "qss/protocol.hpp"

namespace qss {

enum class AdversaryKind { None, EveInterceptResend, BobInterceptResend, BobEntangle };
enum class EveTarget { BobChannel, CharlieChannel, Both };

std::string_view to_string(AdversaryKind kind);
/// Accepts none, eve-ir, bob-ir, bob-entangle. Throws ContractError listing
/// the valid names otherwise.
AdversaryKind parse_adversary(std::string_view name);
std::string_view adversary_names();

/// 1 - ((d+1)/(2d))^n: detection probability of the uniform-guess
/// intercept-and-resend attack over n test rounds.
double detection_analytic(Dim d, int n);

/// Dishonest Bob measures each of Charlie's qudits in a uniformly guessed
/// direction and forwards the collapsed state. He announces honestly and,
/// after the reveal, derives the key digit of every key round where his guess
/// matched Charlie's announced direction.
std::unique_ptr<AdversaryStrategy> bob_intercept_resend(Dim d);

/// External eavesdropper measuring the targeted flying qudits in uniformly
/// guessed directions.
std::unique_ptr<AdversaryStrategy> eve_intercept_resend(Dim d, EveTarget target = EveTarget::Both);

/// Dishonest Bob keeps Charlie's qudits and sends him one half of a maximally
/// entangled pair instead. He announces his own outcomes and directions
/// honestly and measures the stored qudits in Charlie's direction once that
/// direction is public. Requires d <= kDefaultSolverLimit.
std::unique_ptr<AdversaryStrategy> bob_entangle_attack(Dim d);

/// nullptr for AdversaryKind::None.
std::unique_ptr<AdversaryStrategy> make_adversary(AdversaryKind kind, Dim d);

using StrategyFactory = std::function<std::unique_ptr<AdversaryStrategy>()>;

struct DetectionEstimate {
  std::string adversary = "none";
  std::int64_t trials = 0;
  std::int64_t detected = 0;  ///< aborted runs
  std::int64_t invalid = 0;   ///< runs stopped by a faulting adversary hook
  double rate = 0.0;
  double std_error = 0.0;     ///< sqrt(rate (1 - rate) / trials)
  std::optional<double> analytic;
  std::int64_t test_rounds = 0;
  std::int64_t test_rounds_passed = 0;

  /// (rate - analytic) / std_error; nullopt without an analytic reference.
  /// Infinite when std_error is zero and rate differs from the reference.
  std::optional<double> z_score() const;
};

/// Runs `trials` independent protocol runs; trial i uses seed
/// derive_seed(config.seed, "trial-i"). The result does not depend on `threads`.
DetectionEstimate estimate_detection(const ProtocolConfig& config, const StrategyFactory& factory,
                                     std::int64_t trials, int threads = 1);

/// Same, building the strategy from its kind and attaching detection_analytic
/// for bob-ir (using the realized number of test rounds under an exact mask).
DetectionEstimate estimate_detection(const ProtocolConfig& config, AdversaryKind kind,
                                     std::int64_t trials, int threads = 1);

/// Plug-in mutual information between paired symbols, in units of log(base).
double mutual_information(std::span<const int> x, std::span<const int> y, int x_alphabet,
                          int y_alphabet, double base);

/// (1/sqrt(d)) sum_j |jj>.
PureState maximally_entangled_pair(Dim d);

}  // namespace qss

#endif  // QSS_ADVERSARY_HPP
