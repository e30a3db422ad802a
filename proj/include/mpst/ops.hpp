#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mpst/term.hpp"

namespace mpst {

// Participants mentioned by a process: its choice partners, recursively.
ParticipantSet participants(const ProcessArena& arena, ProcessId p);
// Senders and receivers of all queued messages.
ParticipantSet participants(const Queue& q);
// Union of participants() over all bound processes.
ParticipantSet participants(const ProcessArena& arena, const Network& n);
// Actively bound participants (inactive bindings are already absent).
ParticipantSet players(const Network& n);
// Players of a global type: output senders and input readers, recursively.
ParticipantSet players(const TypeArena& arena, TypeId g);

// Canonical per-channel view of a queue: (sender, receiver) -> label sequence
// in emission order. Two queues are equivalent iff their channel forms are
// equal.
using Channel = std::pair<Participant, Participant>;
using ChannelForm = std::map<Channel, std::vector<Label>>;

ChannelForm channel_form(const Queue& q);
bool queues_equivalent(const Queue& a, const Queue& b);

// Structural congruence of networks: equal binding maps modulo process
// bisimilarity (inactive bindings were dropped on construction). Both
// networks must live in the given arena.
bool networks_equivalent(const ProcessArena& arena, const Network& a, const Network& b);

struct Violation {
  std::string where;  // offending definition/participant/node
  std::string what;   // violated condition
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const ProcessArena& arena, ProcessId p);
ValidationReport validate(const TypeArena& arena, TypeId g);
ValidationReport validate(const Queue& q);
ValidationReport validate(const ProcessArena& arena, const Network& n);
ValidationReport validate(const ProcessArena& arena, const Session& s);

// Stable keys for hashing/deduplicating semantic states. Networks are keyed
// by sorted (participant, bisimilarity class); queues by channel form.
std::string network_key(const ProcessArena& arena, const Network& n);
std::string queue_key(const Queue& q);

}  // namespace mpst
