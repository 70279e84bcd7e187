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

#ifndef QSS_QUANTUM_WORLD_HPP
#define QSS_QUANTUM_WORLD_HPP

// Quantum state of one protocol round as a set of independent registers with
// per-qudit ownership. Parties and adversaries touch qudits only through the
// narrow handles below (ChannelTap, Lab), never the amplitudes.

#include <string_view>
#include <vector>

#include "qss/core_math.hpp"
#include "qss/mub.hpp"

namespace qss {

enum class Holder { Alice, Bob, Charlie, Eve, InTransit };
enum class Channel { ToBob, ToCharlie };

std::string_view to_string(Holder holder);
std::string_view to_string(Channel channel);

class QuantumWorld {
 public:
  /// Adds an independent register; returns global slot ids of its subsystems.
  std::vector<int> add_register(const PureState& state, const std::vector<Holder>& holders);

  /// Projective measurement of one qudit with collapse of its register.
  int measure(int slot, const MeasBasis& basis, Sampler& sampler);

  Holder holder(int slot) const;
  void set_holder(int slot, Holder holder);
  int slot_count() const noexcept { return static_cast<int>(slots_.size()); }
  Dim slot_dim(int slot) const;

  /// State of the register containing `slot` (oracle/test access).
  const PureState& register_state(int slot) const;
  /// Subsystem index of `slot` inside its register.
  int local_index(int slot) const;

 private:
  struct SlotRef {
    int reg;
    int local;
    Holder holder;
  };

  const SlotRef& ref(int slot) const;

  std::vector<PureState> registers_;
  std::vector<SlotRef> slots_;
};

/// What an interceptor can do to a qudit in flight.
class ChannelTap {
 public:
  ChannelTap(QuantumWorld& world, int round, Channel channel, int flying_slot, Holder tapper);

  int round() const noexcept { return round_; }
  Channel channel() const noexcept { return channel_; }
  Dim dim() const { return world_->slot_dim(flying_); }

  /// Measures the flying qudit; it continues to the receiver collapsed.
  int measure(const MeasBasis& basis, Sampler& sampler);

  /// Keeps the flying qudit and forwards subsystem `deliver` of `fresh` in its
  /// place. Returns the slots the tapper now holds: the intercepted qudit
  /// first, then the undelivered subsystems of `fresh`.
  std::vector<int> substitute(const PureState& fresh, int deliver);

  /// Slot that will reach the receiver.
  int delivered_slot() const noexcept { return delivered_; }

 private:
  QuantumWorld* world_;
  int round_;
  Channel channel_;
  int flying_;
  int delivered_;
  Holder tapper_;
};

/// Measurement access to the qudits one holder owns in one round.
class Lab {
 public:
  Lab(QuantumWorld& world, Holder owner) : world_(&world), owner_(owner) {}

  bool holds(int slot) const;
  /// Throws ContractError if `slot` is not held by the owner.
  int measure(int slot, const MeasBasis& basis, Sampler& sampler);

 private:
  QuantumWorld* world_;
  Holder owner_;
};

}  // namespace qss

#endif  // QSS_QUANTUM_WORLD_HPP
