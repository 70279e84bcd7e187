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

#include <gtest/gtest.h>

#include "qss/adversary.hpp"
#include "qss/errors.hpp"
#include "qss/protocol.hpp"
#include "qss/quantum_world.hpp"
#include "test_util.hpp"

namespace qss {
namespace {

ProtocolConfig config(int d, int n, std::uint64_t seed = 1) {
  ProtocolConfig c;
  c.d = Dim(d);
  c.n = n;
  c.seed = seed;
  return c;
}

double per_round_escape(const DetectionEstimate& e) {
  return double(e.test_rounds_passed) / double(e.test_rounds);
}

TEST(Detection, AnalyticValues) {
  EXPECT_DOUBLE_EQ(detection_analytic(Dim(2), 1), 0.25);
  EXPECT_DOUBLE_EQ(detection_analytic(Dim(7), 0), 0.0);
  EXPECT_NEAR(detection_analytic(Dim(3), 2), 5.0 / 9.0, 1e-15);
  EXPECT_NEAR(detection_analytic(Dim(2), 4), 1.0 - std::pow(0.75, 4), 1e-15);
  EXPECT_THROW(detection_analytic(Dim(2), -1), ContractError);
}

TEST(Detection, OracleEscapeProbabilities) {
  for (int d = 2; d <= 6; ++d) {
    for (int a = 0; a < d; ++a) {
      EXPECT_NEAR(oracle::intercept_escape(d, a, false, true), (d + 1.0) / (2.0 * d), 1e-12);
      EXPECT_NEAR(oracle::entangle_pass(d, a), 1.0 / d, 1e-12);
    }
  }
  EXPECT_NEAR(oracle::intercept_escape(2, 0, true, true), 0.625, 1e-12);
}

TEST(Adversaries, ParseNames) {
  EXPECT_EQ(parse_adversary("bob-ir"), AdversaryKind::BobInterceptResend);
  EXPECT_EQ(parse_adversary("none"), AdversaryKind::None);
  try {
    parse_adversary("mallory");
    FAIL();
  } catch (const ContractError& e) {
    EXPECT_NE(std::string(e.what()).find("eve-ir, bob-ir, bob-entangle"), std::string::npos);
  }
  EXPECT_THROW(bob_entangle_attack(Dim(17)), ResourceError);
}

TEST(Detection, HonestRunsNeverAbort) {
  const auto e = estimate_detection(config(3, 8), AdversaryKind::None, 300);
  EXPECT_EQ(e.detected, 0);
  EXPECT_EQ(e.rate, 0.0);
  EXPECT_EQ(e.test_rounds, e.test_rounds_passed);
  EXPECT_FALSE(e.analytic);
}

TEST(Detection, BobInterceptResendPerRoundEscape) {
  for (int d : {2, 3, 5}) {
    ProtocolConfig c = config(d, 100, 10 + d);
    const auto e = estimate_detection(c, AdversaryKind::BobInterceptResend, 100);
    ASSERT_EQ(e.test_rounds, 10000);
    const double oracle_escape = oracle::intercept_escape(d, 0, false, true);
    EXPECT_LT(testing::binomial_z(e.test_rounds_passed, e.test_rounds, oracle_escape), 3.0) << d;
  }
}

TEST(Detection, BobInterceptResendRunLevel) {
  const auto e = estimate_detection(config(2, 4, 5), AdversaryKind::BobInterceptResend, 4000);
  ASSERT_TRUE(e.analytic);
  EXPECT_NEAR(*e.analytic, 0.68359375, 1e-12);
  EXPECT_LT(std::abs(*e.z_score()), 3.0);
  EXPECT_EQ(e.adversary, "bob-ir");
  EXPECT_EQ(e.invalid, 0);
}

// A dishonest Bob whose guess always equals Charlie's later choice passes
// every test round; checked on the joint table with Charlie's qudit collapsed.
TEST(Detection, MatchedGuessAlwaysPasses) {
  for (int n = 2; n <= 5; ++n) {
    const Dim d(n);
    Sampler rng(2, "matched");
    for (int trial = 0; trial < 40; ++trial) {
      const int a = trial % n;
      const Direction b = trial % 2 ? Direction::X : Direction::Y;
      const Direction c = trial % 3 ? Direction::X : Direction::Y;
      PureState psi = ghz_closed_form({d, a, GhzForm::XYY});
      psi = measure_subsystem(psi, 2, basis_for(c, d), rng).state;
      const ProbTable p = joint_distribution(psi, {&alice_basis_for(b, c, d), &basis_for(b, d), &basis_for(c, d)});
      double pass = 0.0;
      for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) pass += p(s, t, ((a - s - t) % n + n) % n);
      EXPECT_NEAR(pass, 1.0, 1e-10);
    }
  }
}

TEST(Detection, EveBothChannelsMatchesOracle) {
  ProtocolConfig c = config(2, 100, 3);
  const auto e = estimate_detection(c, AdversaryKind::EveInterceptResend, 100);
  EXPECT_FALSE(e.analytic);
  EXPECT_LT(testing::binomial_z(e.test_rounds_passed, e.test_rounds, oracle::intercept_escape(2, 0, true, true)), 3.0);
}

TEST(Detection, EveSingleChannelMatchesOracle) {
  for (auto target : {EveTarget::BobChannel, EveTarget::CharlieChannel}) {
    const auto e = estimate_detection(
        config(3, 100, 8), [target] { return eve_intercept_resend(Dim(3), target); }, 100);
    const bool bob = target == EveTarget::BobChannel;
    EXPECT_LT(testing::binomial_z(e.test_rounds_passed, e.test_rounds, oracle::intercept_escape(3, 0, bob, !bob)), 3.0);
  }
}

TEST(Detection, EveDetectionGrowsWithRounds) {
  double previous = -1.0;
  for (int n : {1, 2, 4, 8}) {
    const auto e = estimate_detection(config(3, n, 4), AdversaryKind::EveInterceptResend, 3000);
    EXPECT_GT(e.rate, previous) << n;
    previous = e.rate;
  }
}

TEST(Detection, EveInformationBounded) {
  const int d = 3;
  std::vector<int> key, guess;
  ProtocolConfig c = config(d, 16);
  c.test_fraction = 0.0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    c.seed = seed;
    auto eve = eve_intercept_resend(c.d);
    const RunReport r = run_protocol(c, eve.get());
    ASSERT_FALSE(r.aborted);
    ASSERT_EQ(r.adversary_key_guess.size(), r.alice_key.size());
    for (std::size_t i = 0; i < r.alice_key.size(); ++i) {
      key.push_back(r.alice_key[i]);
      guess.push_back(r.adversary_key_guess[i].value_or(d));
      if (r.adversary_key_guess[i]) EXPECT_EQ(*r.adversary_key_guess[i], r.alice_key[i]);
    }
  }
  const double mi = mutual_information(key, guess, d, d + 1, d);
  EXPECT_GT(mi, 0.1);
  EXPECT_LT(mi, 0.5);
}

TEST(Detection, DimensionImprovesSecurity) {
  const auto low = estimate_detection(config(2, 4, 6), AdversaryKind::BobInterceptResend, 3000);
  const auto high = estimate_detection(config(8, 4, 6), AdversaryKind::BobInterceptResend, 3000);
  EXPECT_GT(high.rate - 3 * high.std_error, low.rate + 3 * low.std_error);
}

TEST(Detection, ThreadCountDoesNotChangeResult) {
  const auto one = estimate_detection(config(3, 3, 9), AdversaryKind::BobEntangle, 200, 1);
  const auto three = estimate_detection(config(3, 3, 9), AdversaryKind::BobEntangle, 200, 3);
  EXPECT_EQ(one.detected, three.detected);
  EXPECT_EQ(one.test_rounds_passed, three.test_rounds_passed);
}

TEST(Entangle, DetectedAndRespectsOrdering) {
  for (auto policy : {OrderPolicy::PerRound, OrderPolicy::PerRun}) {
    ProtocolConfig c = config(2, 4);
    c.order_policy = policy;
    long aborted = 0;
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
      c.seed = seed;
      auto bob = bob_entangle_attack(c.d);
      const RunReport r = run_protocol(c, bob.get());
      ASSERT_FALSE(r.invalid) << r.invalid_reason;
      EXPECT_TRUE(transcript_audit(r).empty());
      aborted += r.aborted;
    }
    EXPECT_GT(aborted / 400.0, 0.1);
  }
}

TEST(Entangle, PerRoundPassMatchesOracle) {
  for (int d : {2, 3}) {
    const auto e = estimate_detection(config(d, 100, 12), AdversaryKind::BobEntangle, 50);
    EXPECT_LT(testing::binomial_z(e.test_rounds_passed, e.test_rounds, oracle::entangle_pass(d, 0)), 3.0);
    EXPECT_LT(oracle::entangle_pass(d, 0), 0.95);
  }
}

TEST(Entangle, KeyGuessUsesStoredQudit) {
  ProtocolConfig c = config(3, 8);
  c.test_fraction = 0.0;
  long right = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    c.seed = seed;
    auto bob = bob_entangle_attack(c.d);
    const RunReport r = run_protocol(c, bob.get());
    ASSERT_EQ(r.adversary_key_guess.size(), r.alice_key.size());
    for (std::size_t i = 0; i < r.alice_key.size(); ++i) {
      ASSERT_TRUE(r.adversary_key_guess[i]);
      right += *r.adversary_key_guess[i] == r.alice_key[i];
      ++total;
    }
  }
  // Alice's key follows Charlie's true GHZ qudit, which Bob kept.
  EXPECT_EQ(right, total);
}

// Records every view it is handed and checks nothing beyond it leaks.
class WatchfulBob : public DishonestBobStrategy {
 public:
  std::string_view name() const override { return "watchful"; }
  void begin_run(Dim, int, std::uint64_t) override {}
  void on_qudit_in_transit(ChannelTap& tap) override {
    taps += tap.channel() == Channel::ToCharlie;
    EXPECT_THROW(tap.substitute(maximally_entangled_pair(tap.dim()), 2), ContractError);
  }
  int announce_outcome(const AnnouncementRequest& req, const ReceiverMemory& own, LogView& log, Lab&) override {
    check(req, log);
    return own.outcome;
  }
  Direction announce_direction(const AnnouncementRequest& req, const ReceiverMemory& own, LogView& log,
                               Lab&) override {
    check(req, log);
    return own.direction;
  }
  void on_public_log(LogView& log, std::span<const ReceiverMemory>, std::span<Lab>) override {
    final_size = log.size();
  }
  std::vector<std::optional<int>> key_guess() const override { return {}; }

  void check(const AnnouncementRequest& req, LogView& log) {
    ++calls;
    for (std::size_t i = 0; i < log.size(); ++i) {
      const Message& m = log.at(i);
      EXPECT_LT(m.seq, static_cast<int>(log.size()));
      if (m.kind == MessageKind::Alpha) ++alpha_seen;
    }
    EXPECT_THROW(log.at(log.size()), ContractError);
    if (req.kind == MessageKind::Outcome) {
      const auto own_dir = log.find(req.round, Party::Bob, MessageKind::Direction);
      EXPECT_EQ(own_dir, nullptr);
    }
  }

  int taps = 0;
  int calls = 0;
  int alpha_seen = 0;
  std::size_t final_size = 0;
};

TEST(Hooks, VisibilityIsLimitedToThePublicPrefix) {
  WatchfulBob bob;
  const RunReport r = run_protocol(config(3, 6, 2), &bob);
  ASSERT_FALSE(r.invalid) << r.invalid_reason;
  EXPECT_EQ(bob.taps, 12);
  EXPECT_GT(bob.calls, 0);
  EXPECT_EQ(bob.alpha_seen, 0);
  EXPECT_EQ(bob.final_size, r.transcript.size());
  // Each Bob disclosure cites exactly the prefix it read.
  for (const Message& m : r.transcript) {
    if (m.sender != Party::Bob || m.kind == MessageKind::Receipt) continue;
    ASSERT_EQ(m.cites.size(), static_cast<std::size_t>(m.seq));
    for (int c : m.cites) EXPECT_LT(c, m.seq);
  }
  EXPECT_TRUE(transcript_audit(r).empty());
}

TEST(Information, MutualInformationBounds) {
  std::vector<int> x, y, z;
  Sampler rng(1, "mi");
  for (int i = 0; i < 50000; ++i) {
    x.push_back(rng.uniform_int(4));
    z.push_back(rng.uniform_int(4));
  }
  EXPECT_NEAR(mutual_information(x, x, 4, 4, 4), 1.0, 0.01);
  EXPECT_LT(mutual_information(x, z, 4, 4, 4), 0.01);
  EXPECT_THROW(mutual_information(x, std::vector<int>{1}, 4, 4, 2), ContractError);
}

TEST(Information, MaximallyEntangledPair) {
  const PureState phi = maximally_entangled_pair(Dim(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(std::abs(phi[i * 3 + j]), i == j ? 1.0 / std::sqrt(3.0) : 0.0, 1e-15);
}

}  // namespace
}  // namespace qss
