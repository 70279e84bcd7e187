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

#include "commands.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string_view>

#include "CLI11.hpp"
#include "qss/adversary.hpp"
#include "qss/protocol.hpp"
#include "qss/report_json.hpp"
#include "qss/verify.hpp"

namespace qss::cli {

namespace {

struct UsageError {
  std::string message;
};

int parse_int(std::string_view text) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError{"not an integer: '" + std::string(text) + "'"};
  }
  return v;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  const int lo = parse_int(std::string_view(text).substr(0, dots));
  const int hi = dots == std::string::npos ? lo : parse_int(std::string_view(text).substr(dots + 2));
  if (lo > hi) throw UsageError{"empty dimension range " + text};
  return {lo, hi};
}

void check_dimension(int d, int limit) {
  if (d < 2) throw UsageError{"d must be >= 2 (got d = " + std::to_string(d) + ")"};
  if (d > limit) {
    throw UsageError{"d = " + std::to_string(d) + " exceeds the supported limit of " + std::to_string(limit)};
  }
}

ProtocolConfig protocol_config(const CliConfig& cfg) {
  check_dimension(cfg.d, kSimulationLimit);
  if (cfg.n < 1) throw UsageError{"n must be >= 1"};
  ProtocolConfig pc;
  pc.d = Dim(cfg.d);
  pc.n = cfg.n;
  if (cfg.alpha_mode == "fixed") {
    pc.alpha_mode = AlphaMode::Fixed;
  } else if (cfg.alpha_mode == "string") {
    pc.alpha_mode = AlphaMode::PerRound;
  } else {
    throw UsageError{"alpha mode must be fixed or string"};
  }
  if (cfg.alpha) {
    if (pc.alpha_mode == AlphaMode::PerRound) throw UsageError{"--alpha cannot be combined with --alpha-mode string"};
    if (*cfg.alpha < 0 || *cfg.alpha >= cfg.d) throw UsageError{"alpha must lie in [0, d)"};
    pc.alpha = cfg.alpha;
  }
  if (cfg.mask == "exact") {
    pc.mask_mode = MaskMode::Exact;
  } else if (cfg.mask == "bernoulli") {
    pc.mask_mode = MaskMode::Bernoulli;
  } else {
    throw UsageError{"mask must be exact or bernoulli"};
  }
  if (cfg.order == "per-round") {
    pc.order_policy = OrderPolicy::PerRound;
  } else if (cfg.order == "per-run") {
    pc.order_policy = OrderPolicy::PerRun;
  } else {
    throw UsageError{"order must be per-round or per-run"};
  }
  if (cfg.test_fraction) {
    if (!(*cfg.test_fraction >= 0.0 && *cfg.test_fraction <= 1.0)) {
      throw UsageError{"test fraction must lie in [0, 1]"};
    }
    pc.test_fraction = *cfg.test_fraction;
  }
  pc.seed = cfg.seed;
  return pc;
}

AdversaryKind adversary_kind(const std::string& name) {
  try {
    return parse_adversary(name);
  } catch (const ContractError& e) {
    throw UsageError{e.what()};
  }
}

bool write_file(const std::string& path, const std::string& content, std::ostream& err) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    err << "error: cannot open " << path << " for writing\n";
    return false;
  }
  f << content;
  f.close();
  if (!f) {
    err << "error: failed writing " << path << '\n';
    return false;
  }
  return true;
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "usage error: " << e.message << '\n';
    return kExitUsage;
  } catch (const ContractError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace

int cmd_verify(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto [lo, hi] = parse_range(cfg.d_range);
    check_dimension(lo, kVerifyLimit);
    check_dimension(hi, kVerifyLimit);
    std::vector<DimensionCheck> checks;
    out << std::left << std::setw(4) << "d" << std::setw(12) << "mub" << std::setw(12) << "x-resid"
        << std::setw(12) << "y-resid" << std::setw(12) << "sum/closed" << std::setw(8) << "U-rel"
        << std::setw(8) << "forms" << std::setw(8) << "rank-1" << "status\n";
    for (int d = lo; d <= hi; ++d) {
      checks.push_back(verify_dimension(Dim(d), kVerifyLimit));
      const auto& c = checks.back();
      const bool ranks = std::all_of(c.eigenspace_ranks.begin(), c.eigenspace_ranks.end(),
                                     [](int r) { return r == 1; });
      out << std::setw(4) << d << std::setprecision(2) << std::scientific << std::setw(12) << c.mub_deviation
          << std::setw(12) << c.x_residual << std::setw(12) << c.y_residual << std::setw(12)
          << c.sum_vs_closed << std::setw(8) << (c.u_relation ? "ok" : "FAIL") << std::setw(8)
          << (c.form_equivalence ? "ok" : "FAIL") << std::setw(8)
          << (ranks && c.eigenspace_matches ? "ok" : "FAIL") << (c.passed() ? "PASS" : "FAIL") << '\n';
    }
    out << std::defaultfloat;
    const Json doc = verify_report_json(checks);
    if (!cfg.out.empty() && !write_file(cfg.out, doc.dump(2) + "\n", err)) return kExitFailure;
    return doc["passed"].get<bool>() ? kExitOk : kExitFailure;
  });
}

int cmd_run(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ProtocolConfig pc = protocol_config(cfg);
    const AdversaryKind kind = adversary_kind(cfg.adversary);
    auto adversary = make_adversary(kind, pc.d);
    const RunReport report = run_protocol(pc, adversary.get());
    if (!cfg.out.empty() && !write_file(cfg.out, run_report_json(report).dump(2) + "\n", err)) {
      return kExitFailure;
    }
    if (!cfg.transcript.empty() && !write_file(cfg.transcript, transcript_text(report), err)) {
      return kExitFailure;
    }
    out << "aborted=" << (report.aborted ? "true" : "false") << " key_length=" << report.alice_key.size()
        << " key_agreement=" << (report.key_agreement ? "true" : "false");
    if (report.invalid) out << " invalid=\"" << report.invalid_reason << '"';
    out << '\n';
    if (report.invalid) return kExitFailure;
    return cfg.strict && report.aborted ? kExitFailure : kExitOk;
  });
}

int cmd_attack(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ProtocolConfig pc = protocol_config(cfg);
    const AdversaryKind kind = adversary_kind(cfg.adversary);
    if (kind == AdversaryKind::None) {
      throw UsageError{"attack needs an adversary (valid: eve-ir, bob-ir, bob-entangle)"};
    }
    if (cfg.trials < 1) throw UsageError{"trials must be >= 1"};
    const DetectionEstimate est = estimate_detection(pc, kind, cfg.trials, cfg.threads);
    if (!cfg.out.empty() && !write_file(cfg.out, attack_report_json(pc, est).dump(2) + "\n", err)) {
      return kExitFailure;
    }
    out << "adversary=" << est.adversary << " trials=" << est.trials << " detected=" << est.detected
        << " rate=" << est.rate << " std_error=" << est.std_error;
    if (est.analytic) out << " analytic=" << *est.analytic;
    if (const auto z = est.z_score()) out << " z=" << *z;
    out << '\n';
    return kExitOk;
  });
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Three-party d-level quantum secret sharing simulator"};
  app.require_subcommand(1);
  CliConfig cfg;

  auto* verify = app.add_subcommand("verify", "Check the MUB, GHZ and uniqueness identities");
  verify->add_option("--d", cfg.d_range, "Dimension or range a..b")->required();
  verify->add_option("--out", cfg.out, "Write the JSON report here");

  auto add_protocol_flags = [&](CLI::App* sub) {
    sub->add_option("--d", cfg.d, "Qudit dimension")->required();
    sub->add_option("--n", cfg.n, "Rounds after sifting (2n states are prepared)")->required();
    sub->add_option("--alpha", cfg.alpha, "Fixed hidden value");
    sub->add_option("--alpha-mode", cfg.alpha_mode, "fixed or string");
    sub->add_option("--adversary", cfg.adversary, "none, eve-ir, bob-ir, bob-entangle");
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--out", cfg.out, "Write the JSON report here");
    sub->add_option("--test-fraction", cfg.test_fraction, "Fraction of rounds used for testing");
    sub->add_option("--mask", cfg.mask, "exact or bernoulli sift mask");
    sub->add_option("--order", cfg.order, "per-round or per-run announcement order");
  };

  auto* run = app.add_subcommand("run", "Run the protocol once");
  add_protocol_flags(run);
  run->add_option("--transcript", cfg.transcript, "Write the line-delimited transcript here");
  run->add_flag("--strict", cfg.strict, "Exit 1 when the run aborts");

  auto* attack = app.add_subcommand("attack", "Estimate the detection rate of an attack");
  add_protocol_flags(attack);
  attack->add_option("--trials", cfg.trials, "Number of independent runs")->required();
  attack->add_option("--threads", cfg.threads, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (verify->parsed()) return cmd_verify(cfg, out, err);
  if (run->parsed()) return cmd_run(cfg, out, err);
  return cmd_attack(cfg, out, err);
}

}  // namespace qss::cli
