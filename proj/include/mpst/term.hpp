#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mpst {

// Participants and labels are interned as plain strings; comparison is
// exact string equality and the lexicographic order doubles as the
// deterministic enumeration order used throughout.
struct Participant {
  std::string name;

  auto operator<=>(const Participant&) const = default;
};

struct Label {
  std::string name;

  auto operator<=>(const Label&) const = default;
};

using ParticipantSet = std::set<Participant>;

// Handles into the term arenas. Regular (possibly cyclic) terms are stored
// as finite graphs; a handle is an index into its arena.
struct ProcessId {
  uint32_t index = 0;

  auto operator<=>(const ProcessId&) const = default;
};

struct TypeId {
  uint32_t index = 0;

  auto operator<=>(const TypeId&) const = default;
};

enum class ProcessKind : uint8_t { Inactive, InternalChoice, ExternalChoice };

struct ProcessBranch {
  Label label;
  ProcessId target;
};

struct ProcessNode {
  ProcessKind kind = ProcessKind::Inactive;
  Participant peer;                     // choice partner (send target / read source)
  std::vector<ProcessBranch> branches;  // source order; labels pairwise distinct
  std::optional<std::string> name;      // definition name, display only
};

// Arena of process nodes. Index 0 is always the inactive process. Nodes are
// immutable once created; recursion is built through reserve()/fill_*().
// Construction is single-threaded per arena; sealed arenas are safe to share.
class ProcessArena {
 public:
  ProcessArena();

  ProcessId inactive() const { return ProcessId{0}; }
  ProcessId add(ProcessKind kind, Participant peer, std::vector<ProcessBranch> branches);
  ProcessId reserve();
  void fill(ProcessId slot, ProcessKind kind, Participant peer,
            std::vector<ProcessBranch> branches);
  void set_name(ProcessId id, std::string name);

  const ProcessNode& operator[](ProcessId id) const { return nodes_[id.index]; }
  size_t size() const { return nodes_.size(); }

  // Bisimilarity class of a node; two nodes denote the same regular term
  // iff their classes coincide. Computed lazily, invalidated on growth.
  uint32_t bisim_class(ProcessId id) const;

 private:
  std::vector<ProcessNode> nodes_;
  std::map<std::string, uint32_t> dedup_;
  mutable std::vector<uint32_t> classes_;
  mutable bool classes_valid_ = false;

  void refresh_classes() const;
};

enum class TypeKind : uint8_t { End, Output, Input };

struct TypeBranch {
  Label label;
  TypeId target;
};

// Global type node. For Output, player is the sender and partner the
// receiver (player -> partner ! labels). For Input, player is the reader and
// partner the sender (player <- partner ? label); inputs carry exactly one
// branch. The reader is the node's player in both the LTS and the depth
// computation.
struct TypeNode {
  TypeKind kind = TypeKind::End;
  Participant player;
  Participant partner;
  std::vector<TypeBranch> branches;
  std::optional<std::string> name;
};

class TypeArena {
 public:
  TypeArena();

  TypeId end() const { return TypeId{0}; }
  TypeId add_output(Participant sender, Participant receiver, std::vector<TypeBranch> branches);
  TypeId add_input(Participant reader, Participant sender, Label label, TypeId continuation);
  TypeId reserve();
  void fill_output(TypeId slot, Participant sender, Participant receiver,
                   std::vector<TypeBranch> branches);
  void fill_input(TypeId slot, Participant reader, Participant sender, Label label,
                  TypeId continuation);
  void set_name(TypeId id, std::string name);

  const TypeNode& operator[](TypeId id) const { return nodes_[id.index]; }
  size_t size() const { return nodes_.size(); }

  uint32_t bisim_class(TypeId id) const;

 private:
  std::vector<TypeNode> nodes_;
  std::map<std::string, uint32_t> dedup_;
  mutable std::vector<uint32_t> classes_;
  mutable bool classes_valid_ = false;

  void refresh_classes() const;
};

// A queued message: sender emitted label towards receiver.
struct Message {
  Participant sender;
  Label label;
  Participant receiver;

  auto operator<=>(const Message&) const = default;
};

// Message queue, kept in emission order. Equivalence is per-channel: messages
// on distinct (sender, receiver) channels commute, same-channel order is
// significant. See channel_form() in ops.hpp.
struct Queue {
  std::vector<Message> messages;

  bool empty() const { return messages.empty(); }
  size_t size() const { return messages.size(); }
};

Queue queue_append(const Queue& q, Message m);
// First message on the (sender -> receiver) channel, if any.
std::optional<Message> channel_head(const Queue& q, const Participant& sender,
                                    const Participant& receiver);
// Queue with the (sender -> receiver) channel head removed; requires it exists.
Queue remove_channel_head(const Queue& q, const Participant& sender, const Participant& receiver);
// Queue with the last (sender -> receiver) message removed; requires it exists.
Queue remove_channel_last(const Queue& q, const Participant& sender, const Participant& receiver);
size_t channel_length(const Queue& q, const Participant& sender, const Participant& receiver);

// Parallel composition of named processes. Inactive bindings are dropped on
// construction, so structural congruence is map equality plus process
// bisimilarity.
class Network {
 public:
  Network() = default;
  explicit Network(std::map<Participant, ProcessId> bindings);

  const std::map<Participant, ProcessId>& bindings() const { return bindings_; }
  std::optional<ProcessId> process_of(const Participant& p) const;
  Network rebind(const Participant& p, ProcessId id) const;
  bool empty() const { return bindings_.empty(); }

 private:
  std::map<Participant, ProcessId> bindings_;
};

struct Session {
  Network network;
  Queue queue;
};

enum class CommKind : uint8_t { Send, Receive };

// One LTS transition label. Send: player emits label towards peer.
// Receive: player reads label previously sent by peer. The player is the
// active participant in both cases.
struct Communication {
  CommKind kind = CommKind::Send;
  Participant player;
  Participant peer;
  Label label;

  auto operator<=>(const Communication&) const = default;
};

using Trace = std::vector<Communication>;

// Human form: "p q!l" / "p q?l".
std::string to_string(const Communication& c);
// Machine form used in trace files: "p>q!l" / "p<q?l".
std::string trace_token(const Communication& c);

// Cross-arena bisimilarity, used where terms from independent arenas must be
// compared (e.g. parse/render round-trips). Within one arena prefer
// bisim_class().
bool bisimilar(const ProcessArena& a, ProcessId x, const ProcessArena& b, ProcessId y);
bool bisimilar(const TypeArena& a, TypeId x, const TypeArena& b, TypeId y);

}  // namespace mpst
