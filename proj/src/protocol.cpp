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

#include "qss/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <utility>

#include "qss/ghz.hpp"

namespace qss {

std::string_view to_string(AlphaMode mode) { return mode == AlphaMode::Fixed ? "fixed" : "string"; }
std::string_view to_string(MaskMode mode) { return mode == MaskMode::Exact ? "exact" : "bernoulli"; }
std::string_view to_string(OrderPolicy policy) {
  return policy == OrderPolicy::PerRound ? "per-round" : "per-run";
}

void ProtocolConfig::validate() const {
  if (n < 1) throw ContractError("n must be >= 1, got " + std::to_string(n));
  if (alpha && (*alpha < 0 || *alpha >= d.value())) {
    throw ContractError("alpha must lie in [0, d), got " + std::to_string(*alpha));
  }
  if (alpha && alpha_mode == AlphaMode::PerRound) {
    throw ContractError("a fixed alpha cannot be combined with per-round hidden values");
  }
  if (!(test_fraction >= 0.0 && test_fraction <= 1.0)) {
    throw ContractError("test fraction must lie in [0, 1]");
  }
}

int RunReport::test_rounds() const {
  return static_cast<int>(std::count_if(rounds.begin(), rounds.end(),
                                        [](const RoundRecord& r) { return r.is_test; }));
}

int RunReport::passed_test_rounds() const {
  return static_cast<int>(std::count_if(rounds.begin(), rounds.end(), [](const RoundRecord& r) {
    return r.is_test && r.passed.value_or(false);
  }));
}

AnnounceOrder announcement_order(int round, Sampler& sampler) {
  if (round < 0) throw ContractError("announcement order requested for a run-level message");
  return sampler.uniform_int(2) == 0 ? AnnounceOrder::BobFirst : AnnounceOrder::CharlieFirst;
}

std::vector<int> reconstruct_key(const std::vector<int>& bob_outcomes,
                                 const std::vector<int>& charlie_outcomes,
                                 const std::vector<int>& alpha_schedule, Dim d) {
  if (bob_outcomes.size() != charlie_outcomes.size() || bob_outcomes.size() != alpha_schedule.size()) {
    throw ContractError("reconstruct_key: outcome and hidden-value lists differ in length");
  }
  std::vector<int> key(bob_outcomes.size());
  for (std::size_t i = 0; i < key.size(); ++i) {
    key[i] = (ZMod(alpha_schedule[i], d) - ZMod(bob_outcomes[i], d) - ZMod(charlie_outcomes[i], d)).value();
  }
  return key;
}

namespace {

constexpr int kStepReceive = 2;
constexpr int kStepSift = 3;
constexpr int kStepTestResult = 5;
constexpr int kStepKeyDirections = 5;
constexpr int kStepReveal = 7;

struct HookFault {
  std::string what;
};

template <class F>
decltype(auto) guarded(F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    throw HookFault{e.what()};
  }
}

struct RoundState {
  QuantumWorld world;
  int alice_slot = 0;
  int bob_slot = 1;
  int charlie_slot = 2;
  ReceiverMemory bob;
  ReceiverMemory charlie;
  // What was said in public; may differ from memory when Bob lies.
  std::optional<int> bob_said_outcome;
  std::optional<int> charlie_said_outcome;
  std::optional<Direction> bob_said_dir;
  std::optional<Direction> charlie_said_dir;
};

class Engine {
 public:
  Engine(const ProtocolConfig& config, AdversaryStrategy* adversary)
      : cfg_(config),
        d_(config.d),
        adversary_(adversary),
        eve_(dynamic_cast<EveStrategy*>(adversary)),
        bob_adv_(dynamic_cast<DishonestBobStrategy*>(adversary)),
        alpha_rng_(config.seed, "alice-alpha"),
        mask_rng_(config.seed, "alice-mask"),
        alice_rng_(config.seed, "alice-measure"),
        bob_rng_(config.seed, "bob"),
        charlie_rng_(config.seed, "charlie"),
        order_rng_(config.seed, "announce-order") {
    if (adversary_ != nullptr && eve_ == nullptr && bob_adv_ == nullptr) {
      throw ContractError("adversary must derive from EveStrategy or DishonestBobStrategy");
    }
  }

  RunReport run() {
    report_.config = cfg_;
    report_.adversary = adversary_ ? std::string(adversary_->name()) : "none";
    try {
      draw_hidden_values();
      prepare_and_send();
      receive_and_measure();
      sift();
      announce_tests();
      check_tests();
      if (!report_.aborted) {
        announce_key_directions();
        measure_key();
        reveal_and_reconstruct();
      }
      finish_adversary();
    } catch (const HookFault& fault) {
      report_.invalid = true;
      report_.invalid_reason = fault.what;
      report_.aborted = false;
      report_.alice_key.clear();
      report_.reconstructed_key.clear();
      report_.key_agreement = false;
      report_.adversary_key_guess.clear();
    }
    report_.transcript.assign(log_.messages().begin(), log_.messages().end());
    return std::move(report_);
  }

 private:
  int rounds() const { return cfg_.total_rounds(); }

  void draw_hidden_values() {
    report_.rounds.resize(static_cast<std::size_t>(rounds()));
    const int fixed = cfg_.alpha.value_or(alpha_rng_.uniform_int(d_.value()));
    for (int r = 0; r < rounds(); ++r) {
      auto& rec = report_.rounds[static_cast<std::size_t>(r)];
      rec.index = r;
      rec.alpha = cfg_.alpha_mode == AlphaMode::Fixed ? fixed : alpha_rng_.uniform_int(d_.value());
    }
  }

  void prepare_and_send() {
    if (adversary_) {
      guarded([&] {
        adversary_->begin_run(d_, rounds(), derive_seed(cfg_.seed, "adversary"));
        return 0;
      });
    }
    state_.resize(static_cast<std::size_t>(rounds()));
    for (int r = 0; r < rounds(); ++r) {
      RoundState& rs = state_[static_cast<std::size_t>(r)];
      const GhzSpec spec(d_, rec(r).alpha, GhzForm::XYY);
      const auto slots = rs.world.add_register(
          ghz_closed_form(spec), {Holder::Alice, Holder::InTransit, Holder::InTransit});
      rs.alice_slot = slots[0];
      rs.bob_slot = transmit(rs, r, Channel::ToBob, slots[1], Holder::Bob);
      rs.charlie_slot = transmit(rs, r, Channel::ToCharlie, slots[2], Holder::Charlie);
    }
  }

  int transmit(RoundState& rs, int r, Channel channel, int slot, Holder receiver) {
    int delivered = slot;
    if (adversary_) {
      const Holder tapper = eve_ ? Holder::Eve : Holder::Bob;
      ChannelTap tap(rs.world, r, channel, slot, tapper);
      guarded([&] {
        adversary_->on_qudit_in_transit(tap);
        return 0;
      });
      delivered = tap.delivered_slot();
    }
    rs.world.set_holder(delivered, receiver);
    return delivered;
  }

  void receive_and_measure() {
    const std::string receipt = "received=" + std::to_string(rounds());
    log_.post(-1, kStepReceive, Party::Bob, MessageKind::Receipt, receipt);
    log_.post(-1, kStepReceive, Party::Charlie, MessageKind::Receipt, receipt);
    for (int r = 0; r < rounds(); ++r) {
      RoundState& rs = state_[static_cast<std::size_t>(r)];
      rs.bob.direction = bob_rng_.uniform_int(2) == 0 ? Direction::X : Direction::Y;
      rs.bob.outcome = rs.world.measure(rs.bob_slot, basis_for(rs.bob.direction, d_), bob_rng_);
      rs.charlie.direction = charlie_rng_.uniform_int(2) == 0 ? Direction::X : Direction::Y;
      rs.charlie.outcome =
          rs.world.measure(rs.charlie_slot, basis_for(rs.charlie.direction, d_), charlie_rng_);
      RoundRecord& rc = rec(r);
      rc.bob_dir = rs.bob.direction;
      rc.charlie_dir = rs.charlie.direction;
      rc.t = MeasOutcome{ZMod(rs.bob.outcome, d_), basis_for(rs.bob.direction, d_).label(), Party::Bob};
      rc.u = MeasOutcome{ZMod(rs.charlie.outcome, d_), basis_for(rs.charlie.direction, d_).label(),
                         Party::Charlie};
    }
  }

  void sift() {
    const int total = rounds();
    std::vector<bool> test(static_cast<std::size_t>(total), false);
    if (cfg_.mask_mode == MaskMode::Exact) {
      const int wanted = static_cast<int>(std::lround(cfg_.test_fraction * total));
      std::vector<int> idx(static_cast<std::size_t>(total));
      std::iota(idx.begin(), idx.end(), 0);
      for (int i = 0; i < wanted; ++i) {
        const int j = i + mask_rng_.uniform_int(total - i);
        std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
        test[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] = true;
      }
    } else {
      for (int r = 0; r < total; ++r) test[static_cast<std::size_t>(r)] = mask_rng_.bernoulli(cfg_.test_fraction);
    }
    std::string bits;
    for (int r = 0; r < total; ++r) {
      rec(r).is_test = test[static_cast<std::size_t>(r)];
      bits.push_back(test[static_cast<std::size_t>(r)] ? '1' : '0');
    }
    log_.post(-1, kStepSift, Party::Alice, MessageKind::Mask, bits);
  }

  void announce(int r, int step, Party who, MessageKind kind) {
    RoundState& rs = state_[static_cast<std::size_t>(r)];
    const ReceiverMemory& own = who == Party::Bob ? rs.bob : rs.charlie;
    std::vector<int> cites;
    std::string payload;
    if (who == Party::Bob && bob_adv_ != nullptr) {
      LogView view(log_);
      Lab lab(rs.world, Holder::Bob);
      const AnnouncementRequest req{r, step, kind};
      if (kind == MessageKind::Outcome) {
        const int v = guarded([&] { return bob_adv_->announce_outcome(req, own, view, lab); });
        if (v < 0 || v >= d_.value()) throw HookFault{"announced outcome out of range"};
        rs.bob_said_outcome = v;
        payload = std::to_string(v);
      } else {
        const Direction v = guarded([&] { return bob_adv_->announce_direction(req, own, view, lab); });
        rs.bob_said_dir = v;
        payload = std::string(to_string(v));
      }
      cites = view.reads();
    } else {
      auto& said_outcome = who == Party::Bob ? rs.bob_said_outcome : rs.charlie_said_outcome;
      auto& said_dir = who == Party::Bob ? rs.bob_said_dir : rs.charlie_said_dir;
      if (kind == MessageKind::Outcome) {
        said_outcome = own.outcome;
        payload = std::to_string(own.outcome);
      } else {
        said_dir = own.direction;
        payload = std::string(to_string(own.direction));
      }
    }
    log_.post(r, step, who, kind, std::move(payload), std::move(cites));
  }

  void announce_tests() {
    std::optional<AnnounceOrder> run_order;
    for (int r = 0; r < rounds(); ++r) {
      if (!rec(r).is_test) continue;
      AnnounceOrder order;
      if (cfg_.order_policy == OrderPolicy::PerRun) {
        if (!run_order) run_order = announcement_order(r, order_rng_);
        order = *run_order;
      } else {
        order = announcement_order(r, order_rng_);
      }
      rec(r).announce_order = order;
      for (const Announcement& a : announcement_sequence(order)) announce(r, kStepSift, a.sender, a.kind);
    }
  }

  MeasOutcome alice_measures(int r) {
    RoundState& rs = state_[static_cast<std::size_t>(r)];
    const MeasBasis& basis = alice_basis_for(*rs.bob_said_dir, *rs.charlie_said_dir, d_);
    const int s = rs.world.measure(rs.alice_slot, basis, alice_rng_);
    rec(r).alice_basis = basis.label();
    rec(r).s = MeasOutcome{ZMod(s, d_), basis.label(), Party::Alice};
    return *rec(r).s;
  }

  void check_tests() {
    for (int r = 0; r < rounds(); ++r) {
      if (!rec(r).is_test) continue;
      const RoundState& rs = state_[static_cast<std::size_t>(r)];
      const MeasOutcome s = alice_measures(r);
      const MeasOutcome t{ZMod(*rs.bob_said_outcome, d_), basis_for(*rs.bob_said_dir, d_).label(), Party::Bob};
      const MeasOutcome u{ZMod(*rs.charlie_said_outcome, d_), basis_for(*rs.charlie_said_dir, d_).label(),
                          Party::Charlie};
      const bool ok = correlation_holds(s, t, u, ZMod(rec(r).alpha, d_));
      rec(r).passed = ok;
      if (!ok && !report_.first_failed_round) report_.first_failed_round = r;
    }
    report_.aborted = report_.first_failed_round.has_value();
    log_.post(-1, kStepTestResult, Party::Alice, MessageKind::TestResult,
              report_.aborted ? "abort:" + std::to_string(*report_.first_failed_round) : "pass");
  }

  void announce_key_directions() {
    for (int r = 0; r < rounds(); ++r) {
      if (rec(r).is_test) continue;
      announce(r, kStepKeyDirections, Party::Bob, MessageKind::Direction);
      announce(r, kStepKeyDirections, Party::Charlie, MessageKind::Direction);
    }
  }

  void measure_key() {
    for (int r = 0; r < rounds(); ++r) {
      if (rec(r).is_test) continue;
      report_.alice_key.push_back(alice_measures(r).value.value());
    }
  }

  void reveal_and_reconstruct() {
    std::vector<int> t, u, alpha;
    if (cfg_.alpha_mode == AlphaMode::Fixed) {
      log_.post(-1, kStepReveal, Party::Alice, MessageKind::Alpha, std::to_string(rec(0).alpha));
    }
    for (int r = 0; r < rounds(); ++r) {
      if (rec(r).is_test) continue;
      if (cfg_.alpha_mode == AlphaMode::PerRound) {
        log_.post(r, kStepReveal, Party::Alice, MessageKind::Alpha, std::to_string(rec(r).alpha));
      }
      t.push_back(state_[static_cast<std::size_t>(r)].bob.outcome);
      u.push_back(state_[static_cast<std::size_t>(r)].charlie.outcome);
      alpha.push_back(rec(r).alpha);
    }
    report_.reconstructed_key = reconstruct_key(t, u, alpha, d_);
    report_.key_agreement = report_.reconstructed_key == report_.alice_key;
  }

  void finish_adversary() {
    if (!adversary_) return;
    LogView view(log_);
    if (eve_) {
      guarded([&] {
        eve_->on_public_log(view);
        return 0;
      });
    } else {
      std::vector<ReceiverMemory> memory;
      std::vector<Lab> labs;
      for (RoundState& rs : state_) {
        memory.push_back(rs.bob);
        labs.emplace_back(rs.world, Holder::Bob);
      }
      guarded([&] {
        bob_adv_->on_public_log(view, memory, labs);
        return 0;
      });
    }
    report_.adversary_key_guess = guarded([&] { return adversary_->key_guess(); });
  }

  RoundRecord& rec(int r) { return report_.rounds[static_cast<std::size_t>(r)]; }

  ProtocolConfig cfg_;
  Dim d_;
  AdversaryStrategy* adversary_;
  EveStrategy* eve_;
  DishonestBobStrategy* bob_adv_;
  Sampler alpha_rng_;
  Sampler mask_rng_;
  Sampler alice_rng_;
  Sampler bob_rng_;
  Sampler charlie_rng_;
  Sampler order_rng_;
  BroadcastLog log_;
  std::vector<RoundState> state_;
  RunReport report_;
};

}  // namespace

RunReport run_protocol(const ProtocolConfig& config, AdversaryStrategy* adversary) {
  config.validate();
  return Engine(config, adversary).run();
}

std::vector<Violation> transcript_audit(const RunReport& report) {
  std::vector<Violation> out;
  const auto& msgs = report.transcript;

  for (std::size_t i = 0; i < msgs.size(); ++i) {
    const Message& m = msgs[i];
    if (m.seq != static_cast<int>(i)) out.push_back({m.seq, "sequence number out of place"});
    for (int c : m.cites) {
      if (c >= m.seq) {
        out.push_back({m.seq, "content depends on message " + std::to_string(c) + " posted later"});
      }
    }
  }

  auto first_seq = [&](auto pred) {
    for (const Message& m : msgs) {
      if (pred(m)) return m.seq;
    }
    return -1;
  };
  const int mask_seq = first_seq([](const Message& m) { return m.kind == MessageKind::Mask; });
  for (Party p : {Party::Bob, Party::Charlie}) {
    const int receipt = first_seq([p](const Message& m) { return m.kind == MessageKind::Receipt && m.sender == p; });
    if (mask_seq >= 0 && (receipt < 0 || receipt > mask_seq)) {
      out.push_back({mask_seq, "sift mask published before " + std::string(to_string(p)) + "'s receipt"});
    }
  }

  std::map<int, std::vector<const Message*>> disclosures;
  int last_disclosure = -1;
  int test_result = -1;
  for (const Message& m : msgs) {
    if (m.kind == MessageKind::Outcome || m.kind == MessageKind::Direction) {
      disclosures[m.round].push_back(&m);
      last_disclosure = std::max(last_disclosure, m.seq);
      if (mask_seq < 0 || m.seq < mask_seq) out.push_back({m.seq, "disclosure before the sift mask"});
    }
    if (m.kind == MessageKind::TestResult) test_result = m.seq;
  }
  for (const Message& m : msgs) {
    if (m.kind != MessageKind::Alpha) continue;
    if (m.seq < last_disclosure || m.seq < test_result) {
      out.push_back({m.seq, "hidden value revealed before sifting finished"});
    }
  }

  for (const RoundRecord& rec : report.rounds) {
    const auto it = disclosures.find(rec.index);
    if (!rec.is_test) {
      if (it == disclosures.end()) continue;
      for (const Message* m : it->second) {
        if (m->kind == MessageKind::Outcome) out.push_back({m->seq, "key-round outcome made public"});
      }
      continue;
    }
    if (!rec.announce_order) {
      out.push_back({-1, "test round " + std::to_string(rec.index) + " has no recorded order"});
      continue;
    }
    const auto expected = announcement_sequence(*rec.announce_order);
    const std::vector<const Message*> got = it == disclosures.end() ? std::vector<const Message*>{} : it->second;
    if (got.size() != expected.size()) {
      out.push_back({-1, "test round " + std::to_string(rec.index) + " has " + std::to_string(got.size()) +
                             " disclosures, expected 4"});
      continue;
    }
    for (std::size_t k = 0; k < expected.size(); ++k) {
      if (got[k]->sender != expected[k].sender || got[k]->kind != expected[k].kind) {
        out.push_back({got[k]->seq, "disclosure out of the recorded " +
                                        std::string(to_string(*rec.announce_order)) + " order"});
        break;
      }
    }
  }
  return out;
}

}  // namespace qss
