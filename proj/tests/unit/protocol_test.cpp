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

#include <set>

#include "qss/adversary.hpp"
#include "qss/errors.hpp"
#include "qss/protocol.hpp"
#include "qss/quantum_world.hpp"
#include "test_util.hpp"

namespace qss {
namespace {

ProtocolConfig config(int d, int n, std::uint64_t seed) {
  ProtocolConfig c;
  c.d = Dim(d);
  c.n = n;
  c.seed = seed;
  return c;
}

TEST(Protocol, HonestRunsAgree) {
  for (int d : {2, 3, 4, 5, 7, 8}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const RunReport r = run_protocol(config(d, 16, seed));
      EXPECT_FALSE(r.aborted);
      EXPECT_FALSE(r.invalid);
      EXPECT_TRUE(r.key_agreement);
      EXPECT_EQ(r.alice_key.size(), 16u);
      EXPECT_EQ(r.test_rounds(), 16);
      EXPECT_EQ(r.passed_test_rounds(), 16);
      EXPECT_TRUE(transcript_audit(r).empty());
    }
  }
}

TEST(Protocol, Deterministic) {
  ProtocolConfig c = config(3, 12, 77);
  c.alpha_mode = AlphaMode::PerRound;
  const RunReport a = run_protocol(c), b = run_protocol(c);
  EXPECT_EQ(a.transcript, b.transcript);
  EXPECT_EQ(a.alice_key, b.alice_key);
  c.seed = 78;
  EXPECT_NE(run_protocol(c).transcript, a.transcript);
}

TEST(Protocol, ReconstructKeyByHand) {
  EXPECT_EQ(reconstruct_key({1, 2}, {3, 4}, {0, 1}, Dim(5)), (std::vector<int>{1, 0}));
  EXPECT_THROW(reconstruct_key({1}, {1, 2}, {0}, Dim(5)), ContractError);
}

TEST(Protocol, HiddenValueSweepIsBijective) {
  for (int n = 2; n <= 8; ++n) {
    const Dim d(n);
    for (int t = 0; t < n; ++t) {
      for (int u = 0; u < n; ++u) {
        std::set<int> keys;
        for (int a = 0; a < n; ++a) keys.insert(reconstruct_key({t}, {u}, {a}, d).front());
        EXPECT_EQ(keys.size(), static_cast<std::size_t>(n));
      }
    }
  }
}

TEST(Protocol, PerRoundHiddenValues) {
  ProtocolConfig c = config(4, 8, 9);
  c.alpha_mode = AlphaMode::PerRound;
  const RunReport r = run_protocol(c);
  ASSERT_FALSE(r.aborted);
  EXPECT_TRUE(r.key_agreement);
  std::set<int> alphas;
  std::vector<int> t, u, schedule;
  for (const RoundRecord& rec : r.rounds) {
    alphas.insert(rec.alpha);
    if (rec.is_test) continue;
    t.push_back(rec.t->value.value());
    u.push_back(rec.u->value.value());
    schedule.push_back(rec.alpha);
  }
  EXPECT_GT(alphas.size(), 1u);
  EXPECT_EQ(reconstruct_key(t, u, schedule, c.d), r.alice_key);
  int reveals = 0;
  for (const Message& m : r.transcript) {
    if (m.kind != MessageKind::Alpha) continue;
    ++reveals;
    EXPECT_GE(m.round, 0);
    EXPECT_FALSE(r.rounds[static_cast<std::size_t>(m.round)].is_test);
    EXPECT_EQ(std::stoi(m.payload), r.rounds[static_cast<std::size_t>(m.round)].alpha);
  }
  EXPECT_EQ(reveals, 8);
}

TEST(Protocol, FixedHiddenValue) {
  ProtocolConfig c = config(5, 6, 3);
  c.alpha = 4;
  const RunReport r = run_protocol(c);
  for (const RoundRecord& rec : r.rounds) EXPECT_EQ(rec.alpha, 4);
  int reveals = 0;
  for (const Message& m : r.transcript) reveals += m.kind == MessageKind::Alpha && m.round == -1 && m.payload == "4";
  EXPECT_EQ(reveals, 1);
}

TEST(Protocol, TestFractionAndMasks) {
  ProtocolConfig c = config(3, 10, 1);
  c.test_fraction = 0.3;
  EXPECT_EQ(run_protocol(c).test_rounds(), 6);
  c.test_fraction = 0.0;
  const RunReport none = run_protocol(c);
  EXPECT_EQ(none.test_rounds(), 0);
  EXPECT_EQ(none.alice_key.size(), 20u);
  EXPECT_TRUE(none.key_agreement);
  c.test_fraction = 0.5;
  c.mask_mode = MaskMode::Bernoulli;
  long tests = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    c.seed = s;
    const RunReport r = run_protocol(c);
    EXPECT_TRUE(r.key_agreement || r.alice_key.empty());
    tests += r.test_rounds();
  }
  EXPECT_LT(testing::binomial_z(tests, 50 * 20, 0.5), 4.0);
}

TEST(Protocol, ConfigValidation) {
  ProtocolConfig c = config(3, 4, 0);
  c.alpha = 3;
  EXPECT_THROW(run_protocol(c), ContractError);
  c.alpha = 1;
  c.alpha_mode = AlphaMode::PerRound;
  EXPECT_THROW(run_protocol(c), ContractError);
  c = config(3, 0, 0);
  EXPECT_THROW(run_protocol(c), ContractError);
  c = config(3, 4, 0);
  c.test_fraction = 1.5;
  EXPECT_THROW(run_protocol(c), ContractError);
}

TEST(Protocol, KeyDigitsUniform) {
  const int d = 5;
  std::vector<long> counts(d);
  for (std::uint64_t seed = 0; seed < 200; ++seed)
    for (int k : run_protocol(config(d, 32, seed)).alice_key) ++counts[static_cast<std::size_t>(k)];
  const auto [stat, dof] = testing::chi_square(counts, std::vector<double>(d, 1.0 / d));
  EXPECT_LT(stat, testing::chi_square_critical(dof, 0.001));
}

TEST(Protocol, AnnouncementOrderVaries) {
  ProtocolConfig c = config(2, 32, 4);
  std::set<AnnounceOrder> seen;
  for (const RoundRecord& r : run_protocol(c).rounds)
    if (r.is_test) seen.insert(*r.announce_order);
  EXPECT_EQ(seen.size(), 2u);
  c.order_policy = OrderPolicy::PerRun;
  seen.clear();
  for (const RoundRecord& r : run_protocol(c).rounds)
    if (r.is_test) seen.insert(*r.announce_order);
  EXPECT_EQ(seen.size(), 1u);
}

RunReport honest_report() { return run_protocol(config(3, 4, 21)); }

int find_seq(const RunReport& r, MessageKind kind) {
  for (const Message& m : r.transcript)
    if (m.kind == kind) return m.seq;
  return -1;
}

TEST(Audit, ForwardCitation) {
  RunReport r = honest_report();
  r.transcript[static_cast<std::size_t>(find_seq(r, MessageKind::Outcome))].cites = {
      static_cast<int>(r.transcript.size()) - 1};
  const auto v = transcript_audit(r);
  ASSERT_FALSE(v.empty());
  EXPECT_NE(v.front().reason.find("posted later"), std::string::npos);
}

TEST(Audit, DisclosureBeforeMask) {
  RunReport r = honest_report();
  const int mask = find_seq(r, MessageKind::Mask);
  const int first = find_seq(r, MessageKind::Outcome);
  std::swap(r.transcript[static_cast<std::size_t>(mask)], r.transcript[static_cast<std::size_t>(first)]);
  std::swap(r.transcript[static_cast<std::size_t>(mask)].seq, r.transcript[static_cast<std::size_t>(first)].seq);
  bool found = false;
  for (const auto& v : transcript_audit(r)) found |= v.reason == "disclosure before the sift mask";
  EXPECT_TRUE(found);
}

TEST(Audit, KeyRoundOutcomeLeaked) {
  RunReport r = honest_report();
  int key_round = -1;
  for (const RoundRecord& rec : r.rounds)
    if (!rec.is_test) key_round = rec.index;
  ASSERT_GE(key_round, 0);
  Message leak = r.transcript.back();
  leak.seq = static_cast<int>(r.transcript.size());
  leak.round = key_round;
  leak.sender = Party::Charlie;
  leak.kind = MessageKind::Outcome;
  leak.payload = "1";
  r.transcript.push_back(leak);
  bool found = false;
  for (const auto& v : transcript_audit(r)) found |= v.reason == "key-round outcome made public";
  EXPECT_TRUE(found);
}

TEST(Audit, EarlyReveal) {
  RunReport r = honest_report();
  const int alpha = find_seq(r, MessageKind::Alpha);
  ASSERT_GE(alpha, 0);
  Message early = r.transcript[static_cast<std::size_t>(alpha)];
  r.transcript.erase(r.transcript.begin() + alpha);
  r.transcript.insert(r.transcript.begin() + 3, early);
  for (std::size_t i = 0; i < r.transcript.size(); ++i) r.transcript[i].seq = static_cast<int>(i);
  bool found = false;
  for (const auto& v : transcript_audit(r)) found |= v.reason == "hidden value revealed before sifting finished";
  EXPECT_TRUE(found);
}

TEST(Audit, WrongOrder) {
  RunReport r = honest_report();
  for (RoundRecord& rec : r.rounds)
    if (rec.is_test) {
      rec.announce_order = *rec.announce_order == AnnounceOrder::BobFirst ? AnnounceOrder::CharlieFirst
                                                                          : AnnounceOrder::BobFirst;
      break;
    }
  bool found = false;
  for (const auto& v : transcript_audit(r)) found |= v.reason.find("order") != std::string::npos;
  EXPECT_TRUE(found);
}

class ThrowingEve : public EveStrategy {
 public:
  std::string_view name() const override { return "throwing"; }
  void begin_run(Dim, int, std::uint64_t) override {}
  void on_qudit_in_transit(ChannelTap& tap) override {
    if (tap.round() == 1) throw std::runtime_error("boom");
  }
  void on_public_log(LogView&) override {}
  std::vector<std::optional<int>> key_guess() const override { return {}; }
};

TEST(Protocol, HookFaultMarksRunInvalid) {
  ThrowingEve eve;
  const RunReport r = run_protocol(config(3, 4, 0), &eve);
  EXPECT_TRUE(r.invalid);
  EXPECT_FALSE(r.aborted);
  EXPECT_EQ(r.invalid_reason, "boom");
  EXPECT_TRUE(r.alice_key.empty());
  EXPECT_FALSE(r.key_agreement);
}

// Tries to read the outcome of a qudit it does not hold.
class NosyBob : public DishonestBobStrategy {
 public:
  std::string_view name() const override { return "nosy"; }
  void begin_run(Dim, int, std::uint64_t) override {}
  void on_qudit_in_transit(ChannelTap&) override {}
  int announce_outcome(const AnnouncementRequest&, const ReceiverMemory& own, LogView&, Lab& lab) override {
    Sampler rng(0, "nosy");
    for (int slot = 0; slot < 3; ++slot)
      if (!lab.holds(slot)) return lab.measure(slot, x_basis(Dim(2)), rng);
    return own.outcome;
  }
  Direction announce_direction(const AnnouncementRequest&, const ReceiverMemory& own, LogView&, Lab&) override {
    return own.direction;
  }
  void on_public_log(LogView&, std::span<const ReceiverMemory>, std::span<Lab>) override {}
  std::vector<std::optional<int>> key_guess() const override { return {}; }
};

TEST(Protocol, LabRefusesForeignQudits) {
  NosyBob bob;
  const RunReport r = run_protocol(config(2, 4, 0), &bob);
  EXPECT_TRUE(r.invalid);
  EXPECT_NE(r.invalid_reason.find("not held by"), std::string::npos);
}

}  // namespace
}  // namespace qss
