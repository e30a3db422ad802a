#include "mpst/term.hpp"

#include <algorithm>

namespace mpst {

namespace {

std::string node_key(ProcessKind kind, const Participant& peer,
                     const std::vector<ProcessBranch>& branches) {
  std::string key;
  key += static_cast<char>('0' + static_cast<int>(kind));
  key += '|';
  key += peer.name;
  for (const auto& b : branches) {
    key += '|';
    key += b.label.name;
    key += ':';
    key += std::to_string(b.target.index);
  }
  return key;
}

std::string node_key(TypeKind kind, const Participant& player, const Participant& partner,
                     const std::vector<TypeBranch>& branches) {
  std::string key;
  key += static_cast<char>('0' + static_cast<int>(kind));
  key += '|';
  key += player.name;
  key += '|';
  key += partner.name;
  for (const auto& b : branches) {
    key += '|';
    key += b.label.name;
    key += ':';
    key += std::to_string(b.target.index);
  }
  return key;
}

// Assigns partition-refinement classes. `signature(i, classes)` must map a
// node to its refinement key given the current classes.
template <typename Signature>
std::vector<uint32_t> refine(size_t count, Signature&& signature) {
  std::vector<uint32_t> classes(count, 0);
  size_t distinct = 1;
  for (;;) {
    std::map<std::string, uint32_t> ids;
    std::vector<uint32_t> next(count);
    for (size_t i = 0; i < count; ++i) {
      std::string key = signature(i, classes);
      auto [it, fresh] = ids.emplace(std::move(key), static_cast<uint32_t>(ids.size()));
      (void)fresh;
      next[i] = it->second;
    }
    if (ids.size() == distinct) return next;
    distinct = ids.size();
    classes = std::move(next);
  }
}

}  // namespace

ProcessArena::ProcessArena() { nodes_.push_back(ProcessNode{}); }

ProcessId ProcessArena::add(ProcessKind kind, Participant peer,
                            std::vector<ProcessBranch> branches) {
  if (kind == ProcessKind::Inactive) return inactive();
  std::string key = node_key(kind, peer, branches);
  if (auto it = dedup_.find(key); it != dedup_.end()) return ProcessId{it->second};
  ProcessId id{static_cast<uint32_t>(nodes_.size())};
  nodes_.push_back(ProcessNode{kind, std::move(peer), std::move(branches), std::nullopt});
  dedup_.emplace(std::move(key), id.index);
  classes_valid_ = false;
  return id;
}

ProcessId ProcessArena::reserve() {
  ProcessId id{static_cast<uint32_t>(nodes_.size())};
  nodes_.push_back(ProcessNode{});
  classes_valid_ = false;
  return id;
}

void ProcessArena::fill(ProcessId slot, ProcessKind kind, Participant peer,
                        std::vector<ProcessBranch> branches) {
  if (slot.index == 0 || slot.index >= nodes_.size())
    throw std::logic_error("fill: bad process slot");
  auto& node = nodes_[slot.index];
  node.kind = kind;
  node.peer = std::move(peer);
  node.branches = std::move(branches);
  classes_valid_ = false;
}

void ProcessArena::set_name(ProcessId id, std::string name) {
  nodes_[id.index].name = std::move(name);
}

uint32_t ProcessArena::bisim_class(ProcessId id) const {
  if (!classes_valid_) refresh_classes();
  return classes_[id.index];
}

void ProcessArena::refresh_classes() const {
  classes_ = refine(nodes_.size(), [this](size_t i, const std::vector<uint32_t>& classes) {
    const auto& node = nodes_[i];
    std::vector<std::pair<Label, uint32_t>> kids;
    kids.reserve(node.branches.size());
    for (const auto& b : node.branches) kids.emplace_back(b.label, classes[b.target.index]);
    std::sort(kids.begin(), kids.end());
    std::string key;
    key += static_cast<char>('0' + static_cast<int>(node.kind));
    key += '|';
    key += node.peer.name;
    for (const auto& [label, cls] : kids) {
      key += '|';
      key += label.name;
      key += ':';
      key += std::to_string(cls);
    }
    return key;
  });
  classes_valid_ = true;
}

TypeArena::TypeArena() { nodes_.push_back(TypeNode{}); }

TypeId TypeArena::add_output(Participant sender, Participant receiver,
                             std::vector<TypeBranch> branches) {
  std::string key = node_key(TypeKind::Output, sender, receiver, branches);
  if (auto it = dedup_.find(key); it != dedup_.end()) return TypeId{it->second};
  TypeId id{static_cast<uint32_t>(nodes_.size())};
  nodes_.push_back(
      TypeNode{TypeKind::Output, std::move(sender), std::move(receiver), std::move(branches), {}});
  dedup_.emplace(std::move(key), id.index);
  classes_valid_ = false;
  return id;
}

TypeId TypeArena::add_input(Participant reader, Participant sender, Label label,
                            TypeId continuation) {
  std::vector<TypeBranch> branches{TypeBranch{std::move(label), continuation}};
  std::string key = node_key(TypeKind::Input, reader, sender, branches);
  if (auto it = dedup_.find(key); it != dedup_.end()) return TypeId{it->second};
  TypeId id{static_cast<uint32_t>(nodes_.size())};
  nodes_.push_back(
      TypeNode{TypeKind::Input, std::move(reader), std::move(sender), std::move(branches), {}});
  dedup_.emplace(std::move(key), id.index);
  classes_valid_ = false;
  return id;
}

TypeId TypeArena::reserve() {
  TypeId id{static_cast<uint32_t>(nodes_.size())};
  nodes_.push_back(TypeNode{});
  classes_valid_ = false;
  return id;
}

void TypeArena::fill_output(TypeId slot, Participant sender, Participant receiver,
                            std::vector<TypeBranch> branches) {
  if (slot.index == 0 || slot.index >= nodes_.size())
    throw std::logic_error("fill_output: bad type slot");
  auto& node = nodes_[slot.index];
  node.kind = TypeKind::Output;
  node.player = std::move(sender);
  node.partner = std::move(receiver);
  node.branches = std::move(branches);
  classes_valid_ = false;
}

void TypeArena::fill_input(TypeId slot, Participant reader, Participant sender, Label label,
                           TypeId continuation) {
  if (slot.index == 0 || slot.index >= nodes_.size())
    throw std::logic_error("fill_input: bad type slot");
  auto& node = nodes_[slot.index];
  node.kind = TypeKind::Input;
  node.player = std::move(reader);
  node.partner = std::move(sender);
  node.branches = {TypeBranch{std::move(label), continuation}};
  classes_valid_ = false;
}

void TypeArena::set_name(TypeId id, std::string name) { nodes_[id.index].name = std::move(name); }

uint32_t TypeArena::bisim_class(TypeId id) const {
  if (!classes_valid_) refresh_classes();
  return classes_[id.index];
}

void TypeArena::refresh_classes() const {
  classes_ = refine(nodes_.size(), [this](size_t i, const std::vector<uint32_t>& classes) {
    const auto& node = nodes_[i];
    std::vector<std::pair<Label, uint32_t>> kids;
    kids.reserve(node.branches.size());
    for (const auto& b : node.branches) kids.emplace_back(b.label, classes[b.target.index]);
    std::sort(kids.begin(), kids.end());
    std::string key;
    key += static_cast<char>('0' + static_cast<int>(node.kind));
    key += '|';
    key += node.player.name;
    key += '|';
    key += node.partner.name;
    for (const auto& [label, cls] : kids) {
      key += '|';
      key += label.name;
      key += ':';
      key += std::to_string(cls);
    }
    return key;
  });
  classes_valid_ = true;
}

Queue queue_append(const Queue& q, Message m) {
  Queue out = q;
  out.messages.push_back(std::move(m));
  return out;
}

std::optional<Message> channel_head(const Queue& q, const Participant& sender,
                                    const Participant& receiver) {
  for (const auto& m : q.messages)
    if (m.sender == sender && m.receiver == receiver) return m;
  return std::nullopt;
}

Queue remove_channel_head(const Queue& q, const Participant& sender,
                          const Participant& receiver) {
  Queue out;
  out.messages.reserve(q.messages.size());
  bool removed = false;
  for (const auto& m : q.messages) {
    if (!removed && m.sender == sender && m.receiver == receiver) {
      removed = true;
      continue;
    }
    out.messages.push_back(m);
  }
  if (!removed) throw std::logic_error("remove_channel_head: channel empty");
  return out;
}

Queue remove_channel_last(const Queue& q, const Participant& sender,
                          const Participant& receiver) {
  size_t last = q.messages.size();
  for (size_t i = 0; i < q.messages.size(); ++i)
    if (q.messages[i].sender == sender && q.messages[i].receiver == receiver) last = i;
  if (last == q.messages.size()) throw std::logic_error("remove_channel_last: channel empty");
  Queue out;
  out.messages.reserve(q.messages.size() - 1);
  for (size_t i = 0; i < q.messages.size(); ++i)
    if (i != last) out.messages.push_back(q.messages[i]);
  return out;
}

size_t channel_length(const Queue& q, const Participant& sender, const Participant& receiver) {
  size_t n = 0;
  for (const auto& m : q.messages)
    if (m.sender == sender && m.receiver == receiver) ++n;
  return n;
}

Network::Network(std::map<Participant, ProcessId> bindings) {
  for (auto& [p, id] : bindings)
    if (id.index != 0) bindings_.emplace(p, id);
}

std::optional<ProcessId> Network::process_of(const Participant& p) const {
  auto it = bindings_.find(p);
  if (it == bindings_.end()) return std::nullopt;
  return it->second;
}

Network Network::rebind(const Participant& p, ProcessId id) const {
  Network out = *this;
  out.bindings_.erase(p);
  if (id.index != 0) out.bindings_.emplace(p, id);
  return out;
}

std::string to_string(const Communication& c) {
  return c.player.name + " " + c.peer.name + (c.kind == CommKind::Send ? "!" : "?") +
         c.label.name;
}

std::string trace_token(const Communication& c) {
  if (c.kind == CommKind::Send) return c.player.name + ">" + c.peer.name + "!" + c.label.name;
  return c.player.name + "<" + c.peer.name + "?" + c.label.name;
}

namespace {

std::vector<std::pair<Label, ProcessId>> sorted_branches(const ProcessNode& n) {
  std::vector<std::pair<Label, ProcessId>> out;
  out.reserve(n.branches.size());
  for (const auto& b : n.branches) out.emplace_back(b.label, b.target);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Label, TypeId>> sorted_branches(const TypeNode& n) {
  std::vector<std::pair<Label, TypeId>> out;
  out.reserve(n.branches.size());
  for (const auto& b : n.branches) out.emplace_back(b.label, b.target);
  std::sort(out.begin(), out.end());
  return out;
}

template <typename Arena, typename Id>
bool bisimilar_impl(const Arena& a, Id x, const Arena& b, Id y,
                    std::set<std::pair<uint32_t, uint32_t>>& assumed) {
  if (assumed.count({x.index, y.index})) return true;
  const auto& nx = a[x];
  const auto& ny = b[y];
  if (nx.kind != ny.kind) return false;
  if constexpr (std::is_same_v<Id, TypeId>) {
    if (nx.kind == TypeKind::End) return true;
    if (nx.player != ny.player || nx.partner != ny.partner) return false;
  } else {
    if (nx.kind == ProcessKind::Inactive) return true;
    if (nx.peer != ny.peer) return false;
  }
  auto bx = sorted_branches(nx);
  auto by = sorted_branches(ny);
  if (bx.size() != by.size()) return false;
  for (size_t i = 0; i < bx.size(); ++i)
    if (bx[i].first != by[i].first) return false;
  assumed.insert({x.index, y.index});
  for (size_t i = 0; i < bx.size(); ++i)
    if (!bisimilar_impl(a, bx[i].second, b, by[i].second, assumed)) return false;
  return true;
}

}  // namespace

bool bisimilar(const ProcessArena& a, ProcessId x, const ProcessArena& b, ProcessId y) {
  std::set<std::pair<uint32_t, uint32_t>> assumed;
  return bisimilar_impl(a, x, b, y, assumed);
}

bool bisimilar(const TypeArena& a, TypeId x, const TypeArena& b, TypeId y) {
  std::set<std::pair<uint32_t, uint32_t>> assumed;
  return bisimilar_impl(a, x, b, y, assumed);
}

}  // namespace mpst
