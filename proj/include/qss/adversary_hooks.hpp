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

#ifndef QSS_ADVERSARY_HOOKS_HPP
#define QSS_ADVERSARY_HOOKS_HPP

// Extension points the protocol engine calls into. The two identities have
// disjoint hook signatures: an external eavesdropper only ever receives
// in-flight qudits and the public log, while a dishonest Bob also receives his
// own private memory and a Lab over the qudits he holds.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qss/quantum_world.hpp"
#include "qss/transcript.hpp"

namespace qss {

enum class AdversaryIdentity { ExternalEve, DishonestBob };

/// A receiver's private record of one round.
struct ReceiverMemory {
  Direction direction = Direction::X;
  int outcome = 0;
};

struct AnnouncementRequest {
  int round = 0;
  int step = 0;
  MessageKind kind = MessageKind::Outcome;
};

class AdversaryStrategy {
 public:
  virtual ~AdversaryStrategy() = default;

  virtual std::string_view name() const = 0;
  virtual AdversaryIdentity identity() const = 0;

  /// Called once before any qudit is sent. `seed` feeds the adversary's own stream.
  virtual void begin_run(Dim d, int rounds, std::uint64_t seed) = 0;

  /// Called for every qudit leaving Alice, Bob's channel first.
  virtual void on_qudit_in_transit(ChannelTap& tap) = 0;

  /// Key digits the adversary claims to know, one entry per key round in index
  /// order; nullopt where it has no information. Empty if the run aborted.
  virtual std::vector<std::optional<int>> key_guess() const = 0;
};

class EveStrategy : public AdversaryStrategy {
 public:
  AdversaryIdentity identity() const final { return AdversaryIdentity::ExternalEve; }

  /// Called once at the end of the run with the complete public log.
  virtual void on_public_log(LogView& log) = 0;
};

class DishonestBobStrategy : public AdversaryStrategy {
 public:
  AdversaryIdentity identity() const final { return AdversaryIdentity::DishonestBob; }

  /// Content of Bob's outcome / direction announcements. `log` only shows what
  /// is already public; whatever it is asked for becomes the message's citations.
  virtual int announce_outcome(const AnnouncementRequest& request, const ReceiverMemory& own,
                               LogView& log, Lab& lab) = 0;
  virtual Direction announce_direction(const AnnouncementRequest& request,
                                       const ReceiverMemory& own, LogView& log, Lab& lab) = 0;

  /// Called once at the end of the run.
  virtual void on_public_log(LogView& log, std::span<const ReceiverMemory> memory,
                             std::span<Lab> labs) = 0;
};

}  // namespace qss

#endif  // QSS_ADVERSARY_HOOKS_HPP
