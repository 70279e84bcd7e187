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

#ifndef QSS_TRANSCRIPT_HPP
#define QSS_TRANSCRIPT_HPP

// Authenticated, ordered, append-only classical broadcast channel.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qss/measurement.hpp"
#include "qss/mub.hpp"

namespace qss {

enum class MessageKind { Receipt, Mask, Outcome, Direction, TestResult, Alpha };

/// Test-round disclosure orders:
///   BobFirst:     Bob outcome, Charlie outcome, Charlie direction, Bob direction
///   CharlieFirst: Charlie outcome, Bob outcome, Bob direction, Charlie direction
enum class AnnounceOrder { BobFirst, CharlieFirst };

std::string_view to_string(MessageKind kind);
std::string_view to_string(AnnounceOrder order);
MessageKind parse_message_kind(std::string_view text);
AnnounceOrder parse_announce_order(std::string_view text);

struct Announcement {
  Party sender;
  MessageKind kind;
};

/// The four test-round announcements in the order they must be posted.
std::vector<Announcement> announcement_sequence(AnnounceOrder order);

struct Message {
  int seq = 0;
  int round = -1;  ///< -1 for run-level messages
  int step = 0;
  Party sender = Party::Alice;
  MessageKind kind = MessageKind::Receipt;
  std::string payload;
  std::vector<int> cites;  ///< seqs of earlier messages the sender consulted

  friend bool operator==(const Message&, const Message&) = default;
};

class BroadcastLog {
 public:
  const Message& post(int round, int step, Party sender, MessageKind kind, std::string payload,
                      std::vector<int> cites = {});

  std::span<const Message> messages() const noexcept { return messages_; }
  std::size_t size() const noexcept { return messages_.size(); }

 private:
  std::vector<Message> messages_;
};

/// Read-only view of the log as it stood when the view was made. Every
/// message handed out is recorded, so a sender's message can cite exactly
/// what it looked at.
class LogView {
 public:
  explicit LogView(const BroadcastLog& log) : log_(&log), limit_(log.size()) {}

  std::size_t size() const noexcept { return limit_; }
  const Message& at(std::size_t seq);
  /// First message matching (round, sender, kind), if any.
  const Message* find(int round, Party sender, MessageKind kind);

  std::optional<Direction> direction(int round, Party who);
  std::optional<int> outcome(int round, Party who);
  /// Alice's sift mask as a 0/1 string.
  std::optional<std::string> mask();
  /// Revealed hidden value for a round (per-round reveal or a single run-level one).
  std::optional<int> alpha(int round);

  const std::vector<int>& reads() const noexcept { return reads_; }

 private:
  void note(int seq);

  const BroadcastLog* log_;
  std::size_t limit_;
  std::vector<int> reads_;
};

/// `round,step,sender,kind,payload` where payload may carry `;cites=a|b|c`.
std::string to_line(const Message& m);
Message parse_line(std::string_view line, int seq);

}  // namespace qss

#endif  // QSS_TRANSCRIPT_HPP
