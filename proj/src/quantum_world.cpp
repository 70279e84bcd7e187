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

#include "qss/quantum_world.hpp"

#include <string>

#include "qss/measurement.hpp"

namespace qss {

std::string_view to_string(Holder holder) {
  switch (holder) {
    case Holder::Alice: return "alice";
    case Holder::Bob: return "bob";
    case Holder::Charlie: return "charlie";
    case Holder::Eve: return "eve";
    case Holder::InTransit: return "in-transit";
  }
  return "?";
}

std::string_view to_string(Channel channel) {
  return channel == Channel::ToBob ? "to-bob" : "to-charlie";
}

std::vector<int> QuantumWorld::add_register(const PureState& state, const std::vector<Holder>& holders) {
  if (static_cast<int>(holders.size()) != state.subsystems()) {
    throw ContractError("one holder per subsystem required");
  }
  const int reg = static_cast<int>(registers_.size());
  registers_.push_back(state);
  std::vector<int> ids;
  for (int i = 0; i < state.subsystems(); ++i) {
    ids.push_back(static_cast<int>(slots_.size()));
    slots_.push_back({reg, i, holders[static_cast<std::size_t>(i)]});
  }
  return ids;
}

const QuantumWorld::SlotRef& QuantumWorld::ref(int slot) const {
  if (slot < 0 || slot >= slot_count()) throw ContractError("no qudit slot " + std::to_string(slot));
  return slots_[static_cast<std::size_t>(slot)];
}

int QuantumWorld::measure(int slot, const MeasBasis& basis, Sampler& sampler) {
  const SlotRef& r = ref(slot);
  auto& state = registers_[static_cast<std::size_t>(r.reg)];
  Measured m = measure_subsystem(state, r.local, basis, sampler);
  state = std::move(m.state);
  return m.outcome.value.value();
}

Holder QuantumWorld::holder(int slot) const { return ref(slot).holder; }

void QuantumWorld::set_holder(int slot, Holder holder) {
  ref(slot);
  slots_[static_cast<std::size_t>(slot)].holder = holder;
}

Dim QuantumWorld::slot_dim(int slot) const {
  const SlotRef& r = ref(slot);
  return Dim(registers_[static_cast<std::size_t>(r.reg)].dims()[static_cast<std::size_t>(r.local)]);
}

const PureState& QuantumWorld::register_state(int slot) const {
  return registers_[static_cast<std::size_t>(ref(slot).reg)];
}

int QuantumWorld::local_index(int slot) const { return ref(slot).local; }

ChannelTap::ChannelTap(QuantumWorld& world, int round, Channel channel, int flying_slot, Holder tapper)
    : world_(&world), round_(round), channel_(channel), flying_(flying_slot), delivered_(flying_slot),
      tapper_(tapper) {
  if (world.holder(flying_slot) != Holder::InTransit) throw ContractError("qudit is not in transit");
}

int ChannelTap::measure(const MeasBasis& basis, Sampler& sampler) {
  if (delivered_ != flying_) throw ContractError("flying qudit was already substituted");
  return world_->measure(flying_, basis, sampler);
}

std::vector<int> ChannelTap::substitute(const PureState& fresh, int deliver) {
  if (delivered_ != flying_) throw ContractError("flying qudit was already substituted");
  if (deliver < 0 || deliver >= fresh.subsystems()) throw ContractError("no such subsystem to deliver");
  std::vector<Holder> holders(static_cast<std::size_t>(fresh.subsystems()), tapper_);
  holders[static_cast<std::size_t>(deliver)] = Holder::InTransit;
  const std::vector<int> ids = world_->add_register(fresh, holders);
  world_->set_holder(flying_, tapper_);
  delivered_ = ids[static_cast<std::size_t>(deliver)];
  std::vector<int> kept = {flying_};
  for (int i = 0; i < static_cast<int>(ids.size()); ++i) {
    if (i != deliver) kept.push_back(ids[static_cast<std::size_t>(i)]);
  }
  return kept;
}

bool Lab::holds(int slot) const {
  return slot >= 0 && slot < world_->slot_count() && world_->holder(slot) == owner_;
}

int Lab::measure(int slot, const MeasBasis& basis, Sampler& sampler) {
  if (!holds(slot)) {
    throw ContractError("qudit " + std::to_string(slot) + " is not held by " +
                        std::string(to_string(owner_)));
  }
  return world_->measure(slot, basis, sampler);
}

}  // namespace qss
