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

#include "qss/report_json.hpp"

#include <cmath>
#include <sstream>

namespace qss {

namespace {

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json outcome_json(const std::optional<MeasOutcome>& o) {
  if (!o) return nullptr;
  return o->value.value();
}

}  // namespace

Json to_json(const ProtocolConfig& c) {
  Json j;
  j["d"] = c.d.value();
  j["n"] = c.n;
  j["alpha_mode"] = to_string(c.alpha_mode);
  j["alpha"] = optional_json(c.alpha);
  j["mask_mode"] = to_string(c.mask_mode);
  j["test_fraction"] = c.test_fraction;
  j["order_policy"] = to_string(c.order_policy);
  j["seed"] = c.seed;
  return j;
}

Json to_json(const RoundRecord& r) {
  Json j;
  j["index"] = r.index;
  j["is_test"] = r.is_test;
  j["alpha"] = r.alpha;
  j["bob_dir"] = to_string(r.bob_dir);
  j["charlie_dir"] = to_string(r.charlie_dir);
  j["alice_basis"] = r.alice_basis ? Json(to_string(*r.alice_basis)) : Json(nullptr);
  j["s"] = outcome_json(r.s);
  j["t"] = outcome_json(r.t);
  j["u"] = outcome_json(r.u);
  j["announce_order"] = r.announce_order ? Json(to_string(*r.announce_order)) : Json(nullptr);
  j["passed"] = optional_json(r.passed);
  return j;
}

Json to_json(const Message& m) {
  Json j;
  j["seq"] = m.seq;
  j["round"] = m.round;
  j["step"] = m.step;
  j["sender"] = to_string(m.sender);
  j["kind"] = to_string(m.kind);
  j["payload"] = m.payload;
  j["cites"] = m.cites;
  return j;
}

Json to_json(const DetectionEstimate& e) {
  Json j;
  j["adversary"] = e.adversary;
  j["trials"] = e.trials;
  j["detected"] = e.detected;
  j["invalid"] = e.invalid;
  j["rate"] = e.rate;
  j["std_error"] = e.std_error;
  j["analytic"] = optional_json(e.analytic);
  const auto z = e.z_score();
  j["z_score"] = z && std::isfinite(*z) ? Json(*z) : Json(nullptr);
  j["test_rounds"] = e.test_rounds;
  j["test_rounds_passed"] = e.test_rounds_passed;
  return j;
}

Json to_json(const DimensionCheck& c) {
  Json j;
  j["d"] = c.d;
  j["passed"] = c.passed();
  j["mub_deviation"] = c.mub_deviation;
  j["x_residual"] = c.x_residual;
  j["y_residual"] = c.y_residual;
  j["unitarity_deviation"] = c.unitarity_deviation;
  j["sum_vs_closed"] = c.sum_vs_closed;
  j["u_relation"] = c.u_relation;
  j["form_equivalence"] = c.form_equivalence;
  j["eigenspace_ranks"] = c.eigenspace_ranks;
  j["eigenspace_matches"] = c.eigenspace_matches;
  return j;
}

Json run_report_json(const RunReport& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "run-report";
  j["config"] = to_json(r.config);
  j["adversary"] = r.adversary;
  j["aborted"] = r.aborted;
  j["first_failed_round"] = optional_json(r.first_failed_round);
  j["invalid"] = r.invalid;
  j["invalid_reason"] = r.invalid_reason;
  j["test_rounds"] = r.test_rounds();
  j["passed_test_rounds"] = r.passed_test_rounds();
  j["key_length"] = r.alice_key.size();
  j["alice_key"] = r.alice_key;
  j["reconstructed_key"] = r.reconstructed_key;
  j["key_agreement"] = r.key_agreement;
  Json guess = Json::array();
  for (const auto& g : r.adversary_key_guess) guess.push_back(optional_json(g));
  j["adversary_key_guess"] = std::move(guess);
  Json rounds = Json::array();
  for (const auto& rec : r.rounds) rounds.push_back(to_json(rec));
  j["rounds"] = std::move(rounds);
  Json transcript = Json::array();
  for (const auto& m : r.transcript) transcript.push_back(to_json(m));
  j["transcript"] = std::move(transcript);
  return j;
}

Json attack_report_json(const ProtocolConfig& config, const DetectionEstimate& estimate) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "attack-report";
  j["config"] = to_json(config);
  j["attack"] = to_json(estimate);
  return j;
}

Json verify_report_json(const std::vector<DimensionCheck>& checks) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "verify-report";
  bool all = true;
  Json list = Json::array();
  for (const auto& c : checks) {
    all = all && c.passed();
    list.push_back(to_json(c));
  }
  j["passed"] = all;
  j["tolerances"] = {{"state", kStateTolerance}, {"eigen", kEigenTolerance}};
  j["checks"] = std::move(list);
  return j;
}

std::string transcript_text(const RunReport& report) {
  std::ostringstream out;
  out << "# qss-transcript schema_version=" << kSchemaVersion << '\n';
  for (const auto& m : report.transcript) out << to_line(m) << '\n';
  return out.str();
}

}  // namespace qss
