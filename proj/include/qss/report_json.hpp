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

#ifndef QSS_REPORT_JSON_HPP
#define QSS_REPORT_JSON_HPP

// JSON documents written by the command-line tool. Every document carries
// `schema_version` and `kind`; see the README for the field list.

#include <string>

#include <nlohmann/json.hpp>

#include "qss/adversary.hpp"
#include "qss/protocol.hpp"
#include "qss/verify.hpp"

namespace qss {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

Json to_json(const ProtocolConfig& config);
Json to_json(const RoundRecord& record);
Json to_json(const Message& message);
Json to_json(const DetectionEstimate& estimate);
Json to_json(const DimensionCheck& check);

/// Full run document (kind "run-report").
Json run_report_json(const RunReport& report);
/// Attack experiment document (kind "attack-report"), estimate under "attack".
Json attack_report_json(const ProtocolConfig& config, const DetectionEstimate& estimate);
/// Verification document (kind "verify-report").
Json verify_report_json(const std::vector<DimensionCheck>& checks);

/// Header line `# qss-transcript schema_version=N`, then one
/// `round,step,sender,kind,payload` line per message.
std::string transcript_text(const RunReport& report);

}  // namespace qss

#endif  // QSS_REPORT_JSON_HPP
