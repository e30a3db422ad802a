#include "mpst/ops.hpp"

#include <functional>
#include <set>

namespace mpst {

ParticipantSet participants(const ProcessArena& arena, ProcessId p) {
  ParticipantSet out;
  std::set<uint32_t> seen;
  std::vector<ProcessId> todo{p};
  while (!todo.empty()) {
    ProcessId id = todo.back();
    todo.pop_back();
    if (!seen.insert(id.index).second) continue;
    const auto& node = arena[id];
    if (node.kind == ProcessKind::Inactive) continue;
    out.insert(node.peer);
    for (const auto& b : node.branches) todo.push_back(b.target);
  }
  return out;
}

ParticipantSet participants(const Queue& q) {
  ParticipantSet out;
  for (const auto& m : q.messages) {
    out.insert(m.sender);
    out.insert(m.receiver);
  }
  return out;
}

ParticipantSet participants(const ProcessArena& arena, const Network& n) {
  ParticipantSet out;
  for (const auto& [p, id] : n.bindings()) {
    auto ps = participants(arena, id);
    out.insert(ps.begin(), ps.end());
  }
  return out;
}

ParticipantSet players(const Network& n) {
  ParticipantSet out;
  for (const auto& [p, id] : n.bindings()) out.insert(p);
  return out;
}

ParticipantSet players(const TypeArena& arena, TypeId g) {
  ParticipantSet out;
  std::set<uint32_t> seen;
  std::vector<TypeId> todo{g};
  while (!todo.empty()) {
    TypeId id = todo.back();
    todo.pop_back();
    if (!seen.insert(id.index).second) continue;
    const auto& node = arena[id];
    if (node.kind == TypeKind::End) continue;
    out.insert(node.player);
    for (const auto& b : node.branches) todo.push_back(b.target);
  }
  return out;
}

ChannelForm channel_form(const Queue& q) {
  ChannelForm out;
  for (const auto& m : q.messages) out[{m.sender, m.receiver}].push_back(m.label);
  return out;
}

bool queues_equivalent(const Queue& a, const Queue& b) {
  return channel_form(a) == channel_form(b);
}

bool networks_equivalent(const ProcessArena& arena, const Network& a, const Network& b) {
  if (a.bindings().size() != b.bindings().size()) return false;
  auto ia = a.bindings().begin();
  auto ib = b.bindings().begin();
  for (; ia != a.bindings().end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (arena.bisim_class(ia->second) != arena.bisim_class(ib->second)) return false;
  }
  return true;
}

namespace {

std::string describe(const ProcessArena& arena, ProcessId id) {
  if (arena[id].name) return *arena[id].name;
  return "process node #" + std::to_string(id.index);
}

std::string describe(const TypeArena& arena, TypeId id) {
  if (arena[id].name) return *arena[id].name;
  return "type node #" + std::to_string(id.index);
}

}  // namespace

ValidationReport validate(const ProcessArena& arena, ProcessId p) {
  ValidationReport report;
  std::set<uint32_t> seen;
  std::vector<ProcessId> todo{p};
  while (!todo.empty()) {
    ProcessId id = todo.back();
    todo.pop_back();
    if (!seen.insert(id.index).second) continue;
    const auto& node = arena[id];
    if (node.kind == ProcessKind::Inactive) continue;
    if (node.branches.empty())
      report.violations.push_back({describe(arena, id), "empty branch list"});
    std::set<Label> labels;
    for (const auto& b : node.branches) {
      if (!labels.insert(b.label).second)
        report.violations.push_back(
            {describe(arena, id), "duplicate labels: " + b.label.name});
      todo.push_back(b.target);
    }
  }
  return report;
}

ValidationReport validate(const TypeArena& arena, TypeId g) {
  ValidationReport report;
  std::set<uint32_t> seen;
  std::vector<TypeId> todo{g};
  while (!todo.empty()) {
    TypeId id = todo.back();
    todo.pop_back();
    if (!seen.insert(id.index).second) continue;
    const auto& node = arena[id];
    if (node.kind == TypeKind::End) continue;
    if (node.player == node.partner)
      report.violations.push_back(
          {describe(arena, id), "self-communication: " + node.player.name});
    if (node.branches.empty())
      report.violations.push_back({describe(arena, id), "empty branch list"});
    if (node.kind == TypeKind::Input && node.branches.size() != 1)
      report.violations.push_back({describe(arena, id), "input with more than one label"});
    std::set<Label> labels;
    for (const auto& b : node.branches) {
      if (!labels.insert(b.label).second)
        report.violations.push_back(
            {describe(arena, id), "duplicate labels: " + b.label.name});
      todo.push_back(b.target);
    }
  }
  return report;
}

ValidationReport validate(const Queue& q) {
  ValidationReport report;
  for (const auto& m : q.messages)
    if (m.sender == m.receiver)
      report.violations.push_back(
          {"message " + m.sender.name + ">" + m.receiver.name + ":" + m.label.name,
           "self-communication"});
  return report;
}

ValidationReport validate(const ProcessArena& arena, const Network& n) {
  ValidationReport report;
  for (const auto& [p, id] : n.bindings()) {
    auto sub = validate(arena, id);
    report.violations.insert(report.violations.end(), sub.violations.begin(),
                             sub.violations.end());
    if (participants(arena, id).count(p))
      report.violations.push_back({p.name + "[" + describe(arena, id) + "]",
                                   "self-communication: " + p.name});
  }
  return report;
}

ValidationReport validate(const ProcessArena& arena, const Session& s) {
  ValidationReport report = validate(arena, s.network);
  auto qr = validate(s.queue);
  report.violations.insert(report.violations.end(), qr.violations.begin(), qr.violations.end());
  return report;
}

std::string network_key(const ProcessArena& arena, const Network& n) {
  std::string key;
  for (const auto& [p, id] : n.bindings()) {
    key += p.name;
    key += '=';
    key += std::to_string(arena.bisim_class(id));
    key += ';';
  }
  return key;
}

std::string queue_key(const Queue& q) {
  std::string key;
  for (const auto& [channel, labels] : channel_form(q)) {
    key += channel.first.name;
    key += '>';
    key += channel.second.name;
    key += ':';
    for (const auto& l : labels) {
      key += l.name;
      key += ',';
    }
    key += ';';
  }
  return key;
}

}  // namespace mpst
