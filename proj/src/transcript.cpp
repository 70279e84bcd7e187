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

#include "qss/transcript.hpp"

#include <charconv>
#include <sstream>
#include <string>

namespace qss {

std::string_view to_string(MessageKind kind) {
  switch (kind) {
    case MessageKind::Receipt: return "receipt";
    case MessageKind::Mask: return "mask";
    case MessageKind::Outcome: return "outcome";
    case MessageKind::Direction: return "direction";
    case MessageKind::TestResult: return "test-result";
    case MessageKind::Alpha: return "alpha";
  }
  return "?";
}

std::string_view to_string(AnnounceOrder order) {
  return order == AnnounceOrder::BobFirst ? "bob-first" : "charlie-first";
}

MessageKind parse_message_kind(std::string_view text) {
  for (auto k : {MessageKind::Receipt, MessageKind::Mask, MessageKind::Outcome,
                 MessageKind::Direction, MessageKind::TestResult, MessageKind::Alpha}) {
    if (to_string(k) == text) return k;
  }
  throw ContractError("unknown message kind '" + std::string(text) + "'");
}

AnnounceOrder parse_announce_order(std::string_view text) {
  if (text == "bob-first") return AnnounceOrder::BobFirst;
  if (text == "charlie-first") return AnnounceOrder::CharlieFirst;
  throw ContractError("unknown announcement order '" + std::string(text) + "'");
}

std::vector<Announcement> announcement_sequence(AnnounceOrder order) {
  using K = MessageKind;
  if (order == AnnounceOrder::BobFirst) {
    return {{Party::Bob, K::Outcome}, {Party::Charlie, K::Outcome},
            {Party::Charlie, K::Direction}, {Party::Bob, K::Direction}};
  }
  return {{Party::Charlie, K::Outcome}, {Party::Bob, K::Outcome},
          {Party::Bob, K::Direction}, {Party::Charlie, K::Direction}};
}

const Message& BroadcastLog::post(int round, int step, Party sender, MessageKind kind,
                                  std::string payload, std::vector<int> cites) {
  Message m;
  m.seq = static_cast<int>(messages_.size());
  m.round = round;
  m.step = step;
  m.sender = sender;
  m.kind = kind;
  m.payload = std::move(payload);
  m.cites = std::move(cites);
  messages_.push_back(std::move(m));
  return messages_.back();
}

void LogView::note(int seq) {
  for (int s : reads_) {
    if (s == seq) return;
  }
  reads_.push_back(seq);
}

const Message& LogView::at(std::size_t seq) {
  if (seq >= limit_) throw ContractError("log entry " + std::to_string(seq) + " is not public yet");
  const Message& m = log_->messages()[seq];
  note(m.seq);
  return m;
}

const Message* LogView::find(int round, Party sender, MessageKind kind) {
  const auto msgs = log_->messages().first(limit_);
  for (const Message& m : msgs) {
    if (m.round == round && m.sender == sender && m.kind == kind) {
      note(m.seq);
      return &m;
    }
  }
  return nullptr;
}

std::optional<Direction> LogView::direction(int round, Party who) {
  const Message* m = find(round, who, MessageKind::Direction);
  if (m == nullptr) return std::nullopt;
  return parse_direction(m->payload);
}

std::optional<int> LogView::outcome(int round, Party who) {
  const Message* m = find(round, who, MessageKind::Outcome);
  if (m == nullptr) return std::nullopt;
  return std::stoi(m->payload);
}

std::optional<std::string> LogView::mask() {
  const Message* m = find(-1, Party::Alice, MessageKind::Mask);
  if (m == nullptr) return std::nullopt;
  return m->payload;
}

std::optional<int> LogView::alpha(int round) {
  const Message* m = find(round, Party::Alice, MessageKind::Alpha);
  if (m == nullptr) m = find(-1, Party::Alice, MessageKind::Alpha);
  if (m == nullptr) return std::nullopt;
  return std::stoi(m->payload);
}

std::string to_line(const Message& m) {
  std::ostringstream out;
  out << m.round << ',' << m.step << ',' << to_string(m.sender) << ',' << to_string(m.kind) << ','
      << m.payload;
  if (!m.cites.empty()) {
    out << ";cites=";
    for (std::size_t i = 0; i < m.cites.size(); ++i) out << (i ? "|" : "") << m.cites[i];
  }
  return out.str();
}

namespace {

int to_int(std::string_view text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ContractError("malformed integer '" + std::string(text) + "' in transcript line");
  }
  return value;
}

}  // namespace

Message parse_line(std::string_view line, int seq) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (int i = 0; i < 4; ++i) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) throw ContractError("transcript line needs five fields");
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  std::string_view payload = line.substr(start);
  Message m;
  m.seq = seq;
  m.round = to_int(fields[0]);
  m.step = to_int(fields[1]);
  m.sender = parse_party(fields[2]);
  m.kind = parse_message_kind(fields[3]);
  if (const auto pos = payload.find(";cites="); pos != std::string_view::npos) {
    std::string_view cites = payload.substr(pos + 7);
    payload = payload.substr(0, pos);
    while (!cites.empty()) {
      const auto bar = cites.find('|');
      m.cites.push_back(to_int(cites.substr(0, bar)));
      cites = bar == std::string_view::npos ? std::string_view{} : cites.substr(bar + 1);
    }
  }
  m.payload = std::string(payload);
  return m;
}

}  // namespace qss
