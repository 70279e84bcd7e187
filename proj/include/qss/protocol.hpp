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

#ifndef QSS_PROTOCOL_HPP
#define QSS_PROTOCOL_HPP

// The three-party secret sharing run: preparation and distribution of GHZ-like
// states, receiver measurements, sifting with ordered test disclosures,
// Alice's correlation check, key measurement, and reconstruction once the
// hidden values are revealed.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qss/adversary_hooks.hpp"
#include "qss/measurement.hpp"
#include "qss/transcript.hpp"

namespace qss {

enum class AlphaMode { Fixed, PerRound };
enum class MaskMode { Exact, Bernoulli };
enum class OrderPolicy { PerRound, PerRun };

std::string_view to_string(AlphaMode mode);
std::string_view to_string(MaskMode mode);
std::string_view to_string(OrderPolicy policy);

struct ProtocolConfig {
  Dim d{2};
  int n = 1;  ///< 2n states are prepared
  AlphaMode alpha_mode = AlphaMode::Fixed;
  /// Fixed hidden value; drawn from the seed when unset.
  std::optional<int> alpha;
  /// Exact: round(test_fraction * 2n) test rounds. Bernoulli: each round is a
  /// test round with probability test_fraction.
  MaskMode mask_mode = MaskMode::Exact;
  double test_fraction = 0.5;
  OrderPolicy order_policy = OrderPolicy::PerRound;
  std::uint64_t seed = 0;

  int total_rounds() const { return 2 * n; }
  /// Throws ContractError on inconsistent settings.
  void validate() const;
};

struct RoundRecord {
  int index = 0;
  bool is_test = false;
  int alpha = 0;
  Direction bob_dir = Direction::X;
  Direction charlie_dir = Direction::X;
  std::optional<BasisLabel> alice_basis;
  std::optional<MeasOutcome> s;
  std::optional<MeasOutcome> t;
  std::optional<MeasOutcome> u;
  std::optional<AnnounceOrder> announce_order;
  std::optional<bool> passed;  ///< only ever set for test rounds
};

struct RunReport {
  ProtocolConfig config;
  std::string adversary = "none";
  bool aborted = false;
  std::optional<int> first_failed_round;
  /// Set when an adversary hook threw; the run stops and is neither aborted nor keyed.
  bool invalid = false;
  std::string invalid_reason;
  std::vector<int> alice_key;
  std::vector<int> reconstructed_key;
  bool key_agreement = false;
  std::vector<RoundRecord> rounds;
  std::vector<Message> transcript;
  std::vector<std::optional<int>> adversary_key_guess;

  int test_rounds() const;
  int passed_test_rounds() const;
};

/// Runs the full protocol. `adversary` may be null for an honest run; it is
/// driven through its hooks and must be fresh (one instance per run).
RunReport run_protocol(const ProtocolConfig& config, AdversaryStrategy* adversary = nullptr);

/// Uniform choice between the two test-round disclosure orders.
AnnounceOrder announcement_order(int round, Sampler& sampler);

/// digit i = alpha_i - t_i - u_i mod d.
std::vector<int> reconstruct_key(const std::vector<int>& bob_outcomes,
                                 const std::vector<int>& charlie_outcomes,
                                 const std::vector<int>& alpha_schedule, Dim d);

struct Violation {
  int seq = -1;  ///< offending message, -1 for run-level problems
  std::string reason;
};

/// Causality and consistency check over a finished transcript. Empty for
/// every run the engine produces.
std::vector<Violation> transcript_audit(const RunReport& report);

}  // namespace qss

#endif  // QSS_PROTOCOL_HPP
