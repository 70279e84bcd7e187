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

#include "qss/adversary.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "qss/ghz.hpp"

namespace qss {

std::string_view to_string(AdversaryKind kind) {
  switch (kind) {
    case AdversaryKind::None: return "none";
    case AdversaryKind::EveInterceptResend: return "eve-ir";
    case AdversaryKind::BobInterceptResend: return "bob-ir";
    case AdversaryKind::BobEntangle: return "bob-entangle";
  }
  return "?";
}

std::string_view adversary_names() { return "none, eve-ir, bob-ir, bob-entangle"; }

AdversaryKind parse_adversary(std::string_view name) {
  for (auto k : {AdversaryKind::None, AdversaryKind::EveInterceptResend,
                 AdversaryKind::BobInterceptResend, AdversaryKind::BobEntangle}) {
    if (to_string(k) == name) return k;
  }
  throw ContractError("unknown adversary '" + std::string(name) + "' (valid: " +
                      std::string(adversary_names()) + ")");
}

double detection_analytic(Dim d, int n) {
  if (n < 0) throw ContractError("number of test rounds must be >= 0");
  const double escape = (d.value() + 1.0) / (2.0 * d.value());
  return 1.0 - std::pow(escape, n);
}

PureState maximally_entangled_pair(Dim d) {
  const int n = d.value();
  Amplitudes a = Amplitudes::Zero(static_cast<Eigen::Index>(n) * n);
  for (int j = 0; j < n; ++j) a[static_cast<Eigen::Index>(j) * n + j] = 1.0;
  return PureState::normalized(std::move(a), {n, n});
}

namespace {

Direction random_direction(Sampler& rng) { return rng.uniform_int(2) == 0 ? Direction::X : Direction::Y; }

// Key rounds (mask bit 0) in index order, read from the public log.
std::vector<int> key_rounds(LogView& log) {
  std::vector<int> out;
  const auto mask = log.mask();
  if (!mask) return out;
  for (std::size_t r = 0; r < mask->size(); ++r) {
    if ((*mask)[r] == '0') out.push_back(static_cast<int>(r));
  }
  return out;
}

class BobInterceptResend final : public DishonestBobStrategy {
 public:
  explicit BobInterceptResend(Dim d) : d_(d), rng_(0, "") {}

  std::string_view name() const override { return "bob-ir"; }

  void begin_run(Dim d, int rounds, std::uint64_t seed) override {
    if (d != d_) throw ContractError("strategy built for a different dimension");
    rng_ = Sampler(seed, "bob-ir");
    guess_.assign(static_cast<std::size_t>(rounds), Direction::X);
    stolen_.assign(static_cast<std::size_t>(rounds), 0);
  }

  void on_qudit_in_transit(ChannelTap& tap) override {
    if (tap.channel() != Channel::ToCharlie) return;
    const Direction g = random_direction(rng_);
    guess_[static_cast<std::size_t>(tap.round())] = g;
    stolen_[static_cast<std::size_t>(tap.round())] = tap.measure(basis_for(g, d_), rng_);
  }

  int announce_outcome(const AnnouncementRequest&, const ReceiverMemory& own, LogView&, Lab&) override {
    return own.outcome;
  }

  Direction announce_direction(const AnnouncementRequest&, const ReceiverMemory& own, LogView&,
                               Lab&) override {
    return own.direction;
  }

  void on_public_log(LogView& log, std::span<const ReceiverMemory> memory, std::span<Lab>) override {
    guesses_.clear();
    for (int r : key_rounds(log)) {
      const auto alpha = log.alpha(r);
      if (!alpha) {
        guesses_.clear();
        return;
      }
      const auto charlie_dir = log.direction(r, Party::Charlie);
      if (charlie_dir && *charlie_dir == guess_[static_cast<std::size_t>(r)]) {
        const int t = memory[static_cast<std::size_t>(r)].outcome;
        guesses_.push_back((ZMod(*alpha, d_) - ZMod(t, d_) - ZMod(stolen_[static_cast<std::size_t>(r)], d_)).value());
      } else {
        guesses_.push_back(std::nullopt);
      }
    }
  }

  std::vector<std::optional<int>> key_guess() const override { return guesses_; }

 private:
  Dim d_;
  Sampler rng_;
  std::vector<Direction> guess_;
  std::vector<int> stolen_;
  std::vector<std::optional<int>> guesses_;
};

class EveInterceptResend final : public EveStrategy {
 public:
  EveInterceptResend(Dim d, EveTarget target) : d_(d), target_(target), rng_(0, "") {}

  std::string_view name() const override { return "eve-ir"; }

  void begin_run(Dim d, int rounds, std::uint64_t seed) override {
    if (d != d_) throw ContractError("strategy built for a different dimension");
    rng_ = Sampler(seed, "eve-ir");
    records_.assign(static_cast<std::size_t>(rounds), {});
  }

  void on_qudit_in_transit(ChannelTap& tap) override {
    const bool to_bob = tap.channel() == Channel::ToBob;
    if ((to_bob && target_ == EveTarget::CharlieChannel) || (!to_bob && target_ == EveTarget::BobChannel)) return;
    const Direction g = random_direction(rng_);
    const int k = tap.measure(basis_for(g, d_), rng_);
    auto& rec = records_[static_cast<std::size_t>(tap.round())];
    (to_bob ? rec.bob : rec.charlie) = Intercept{g, k};
  }

  void on_public_log(LogView& log) override {
    guesses_.clear();
    for (int r : key_rounds(log)) {
      const auto alpha = log.alpha(r);
      if (!alpha) {
        guesses_.clear();
        return;
      }
      const auto& rec = records_[static_cast<std::size_t>(r)];
      const auto bob_dir = log.direction(r, Party::Bob);
      const auto charlie_dir = log.direction(r, Party::Charlie);
      if (rec.bob && rec.charlie && bob_dir == rec.bob->dir && charlie_dir == rec.charlie->dir) {
        guesses_.push_back((ZMod(*alpha, d_) - ZMod(rec.bob->outcome, d_) - ZMod(rec.charlie->outcome, d_)).value());
      } else {
        guesses_.push_back(std::nullopt);
      }
    }
  }

  std::vector<std::optional<int>> key_guess() const override { return guesses_; }

 private:
  struct Intercept {
    Direction dir;
    int outcome;
  };
  struct Record {
    std::optional<Intercept> bob;
    std::optional<Intercept> charlie;
  };

  Dim d_;
  EveTarget target_;
  Sampler rng_;
  std::vector<Record> records_;
  std::vector<std::optional<int>> guesses_;
};

class BobEntangle final : public DishonestBobStrategy {
 public:
  explicit BobEntangle(Dim d) : d_(d), rng_(0, "") {
    if (d.value() > kDefaultSolverLimit) {
      throw ResourceError("bob-entangle supports d <= " + std::to_string(kDefaultSolverLimit));
    }
  }

  std::string_view name() const override { return "bob-entangle"; }

  void begin_run(Dim d, int rounds, std::uint64_t seed) override {
    if (d != d_) throw ContractError("strategy built for a different dimension");
    rng_ = Sampler(seed, "bob-entangle");
    stored_.assign(static_cast<std::size_t>(rounds), {});
  }

  void on_qudit_in_transit(ChannelTap& tap) override {
    if (tap.channel() != Channel::ToCharlie) return;
    const auto kept = tap.substitute(maximally_entangled_pair(d_), 0);
    auto& s = stored_[static_cast<std::size_t>(tap.round())];
    s.charlie_qudit = kept.at(0);
    s.ancilla = kept.at(1);
  }

  int announce_outcome(const AnnouncementRequest&, const ReceiverMemory& own, LogView&, Lab&) override {
    return own.outcome;
  }

  Direction announce_direction(const AnnouncementRequest& req, const ReceiverMemory& own, LogView& log,
                               Lab& lab) override {
    // Under the Bob-first order Charlie's direction is already public here.
    if (const auto dir = log.direction(req.round, Party::Charlie)) measure_stored(req.round, *dir, lab);
    return own.direction;
  }

  void on_public_log(LogView& log, std::span<const ReceiverMemory> memory, std::span<Lab> labs) override {
    guesses_.clear();
    for (std::size_t r = 0; r < stored_.size(); ++r) {
      if (const auto dir = log.direction(static_cast<int>(r), Party::Charlie)) {
        measure_stored(static_cast<int>(r), *dir, labs[r]);
      }
    }
    for (int r : key_rounds(log)) {
      const auto alpha = log.alpha(r);
      if (!alpha) {
        guesses_.clear();
        return;
      }
      const auto& s = stored_[static_cast<std::size_t>(r)];
      if (s.charlie_outcome) {
        const int t = memory[static_cast<std::size_t>(r)].outcome;
        guesses_.push_back((ZMod(*alpha, d_) - ZMod(t, d_) - ZMod(*s.charlie_outcome, d_)).value());
      } else {
        guesses_.push_back(std::nullopt);
      }
    }
  }

  std::vector<std::optional<int>> key_guess() const override { return guesses_; }

 private:
  struct Stored {
    int charlie_qudit = -1;
    int ancilla = -1;
    std::optional<int> charlie_outcome;
    std::optional<int> ancilla_outcome;
  };

  void measure_stored(int round, Direction dir, Lab& lab) {
    auto& s = stored_[static_cast<std::size_t>(round)];
    if (s.charlie_outcome || s.charlie_qudit < 0) return;
    const MeasBasis& basis = basis_for(dir, d_);
    s.charlie_outcome = lab.measure(s.charlie_qudit, basis, rng_);
    s.ancilla_outcome = lab.measure(s.ancilla, basis, rng_);
  }

  Dim d_;
  Sampler rng_;
  std::vector<Stored> stored_;
  std::vector<std::optional<int>> guesses_;
};

}  // namespace

std::unique_ptr<AdversaryStrategy> bob_intercept_resend(Dim d) { return std::make_unique<BobInterceptResend>(d); }

std::unique_ptr<AdversaryStrategy> eve_intercept_resend(Dim d, EveTarget target) {
  return std::make_unique<EveInterceptResend>(d, target);
}

std::unique_ptr<AdversaryStrategy> bob_entangle_attack(Dim d) { return std::make_unique<BobEntangle>(d); }

std::unique_ptr<AdversaryStrategy> make_adversary(AdversaryKind kind, Dim d) {
  switch (kind) {
    case AdversaryKind::None: return nullptr;
    case AdversaryKind::EveInterceptResend: return eve_intercept_resend(d);
    case AdversaryKind::BobInterceptResend: return bob_intercept_resend(d);
    case AdversaryKind::BobEntangle: return bob_entangle_attack(d);
  }
  return nullptr;
}

std::optional<double> DetectionEstimate::z_score() const {
  if (!analytic) return std::nullopt;
  const double diff = rate - *analytic;
  if (std_error > 0.0) return diff / std_error;
  if (diff == 0.0) return 0.0;
  return diff > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
}

DetectionEstimate estimate_detection(const ProtocolConfig& config, const StrategyFactory& factory,
                                     std::int64_t trials, int threads) {
  if (trials < 1) throw ContractError("trials must be >= 1");
  config.validate();
  threads = std::max(1, threads);

  struct Tally {
    std::int64_t detected = 0, invalid = 0, tests = 0, passed = 0;
    std::string name = "none";
  };
  std::vector<Tally> tallies(static_cast<std::size_t>(threads));
  std::atomic<std::int64_t> next{0};
  auto worker = [&](Tally& tally) {
    for (std::int64_t i = next++; i < trials; i = next++) {
      ProtocolConfig cfg = config;
      cfg.seed = derive_seed(config.seed, "trial-" + std::to_string(i));
      auto strategy = factory ? factory() : nullptr;
      const RunReport rep = run_protocol(cfg, strategy.get());
      if (strategy) tally.name = std::string(strategy->name());
      tally.detected += rep.aborted ? 1 : 0;
      tally.invalid += rep.invalid ? 1 : 0;
      tally.tests += rep.test_rounds();
      tally.passed += rep.passed_test_rounds();
    }
  };
  if (threads == 1) {
    worker(tallies[0]);
  } else {
    std::vector<std::thread> pool;
    for (auto& t : tallies) pool.emplace_back(worker, std::ref(t));
    for (auto& t : pool) t.join();
  }

  DetectionEstimate est;
  est.trials = trials;
  for (const Tally& t : tallies) {
    est.detected += t.detected;
    est.invalid += t.invalid;
    est.test_rounds += t.tests;
    est.test_rounds_passed += t.passed;
    if (t.name != "none") est.adversary = t.name;
  }
  est.rate = static_cast<double>(est.detected) / static_cast<double>(trials);
  est.std_error = std::sqrt(est.rate * (1.0 - est.rate) / static_cast<double>(trials));
  return est;
}

DetectionEstimate estimate_detection(const ProtocolConfig& config, AdversaryKind kind,
                                     std::int64_t trials, int threads) {
  const Dim d = config.d;
  StrategyFactory factory;
  if (kind != AdversaryKind::None) factory = [kind, d] { return make_adversary(kind, d); };
  DetectionEstimate est = estimate_detection(config, factory, trials, threads);
  est.adversary = std::string(to_string(kind));
  if (kind == AdversaryKind::BobInterceptResend && config.mask_mode == MaskMode::Exact) {
    const int tests = static_cast<int>(std::lround(config.test_fraction * config.total_rounds()));
    est.analytic = detection_analytic(d, tests);
  }
  return est;
}

double mutual_information(std::span<const int> x, std::span<const int> y, int x_alphabet,
                          int y_alphabet, double base) {
  if (x.size() != y.size()) throw ContractError("mutual_information: length mismatch");
  if (x.empty()) return 0.0;
  std::vector<double> joint(static_cast<std::size_t>(x_alphabet * y_alphabet), 0.0);
  std::vector<double> px(static_cast<std::size_t>(x_alphabet), 0.0);
  std::vector<double> py(static_cast<std::size_t>(y_alphabet), 0.0);
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0 || x[i] >= x_alphabet || y[i] < 0 || y[i] >= y_alphabet) {
      throw ContractError("mutual_information: symbol outside alphabet");
    }
    joint[static_cast<std::size_t>(x[i] * y_alphabet + y[i])] += 1.0 / n;
    px[static_cast<std::size_t>(x[i])] += 1.0 / n;
    py[static_cast<std::size_t>(y[i])] += 1.0 / n;
  }
  double mi = 0.0;
  for (int a = 0; a < x_alphabet; ++a) {
    for (int b = 0; b < y_alphabet; ++b) {
      const double p = joint[static_cast<std::size_t>(a * y_alphabet + b)];
      if (p > 0.0) mi += p * std::log(p / (px[static_cast<std::size_t>(a)] * py[static_cast<std::size_t>(b)]));
    }
  }
  return mi / std::log(base);
}

}  // namespace qss
