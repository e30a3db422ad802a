#include "mpst/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <memory>
#include <set>
#include <sstream>

#include "mpst/ops.hpp"

namespace mpst {

ParseError::ParseError(size_t line, size_t column, const std::string& message)
    : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok {
  Ident,
  Arrow,      // ->
  BackArrow,  // <-
  Bang,
  Question,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Bar,
  Comma,
  Dot,
  Equals,
  Colon,
  End,  // end of input
};

struct Token {
  Tok kind;
  std::string text;
  size_t line;
  size_t column;
};

const std::set<std::string> kKeywords = {"process", "global", "network", "queue",
                                         "session", "set",    "with",    "end",
                                         "End"};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  size_t line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    size_t tl = line, tc = col;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                 text[j] == '_'))
        ++j;
      out.push_back({Tok::Ident, text.substr(i, j - i), tl, tc});
      advance(j - i);
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", tl, tc});
      advance(2);
      continue;
    }
    if (c == '<' && i + 1 < text.size() && text[i + 1] == '-') {
      out.push_back({Tok::BackArrow, "<-", tl, tc});
      advance(2);
      continue;
    }
    Tok kind;
    switch (c) {
      case '!': kind = Tok::Bang; break;
      case '?': kind = Tok::Question; break;
      case '{': kind = Tok::LBrace; break;
      case '}': kind = Tok::RBrace; break;
      case '[': kind = Tok::LBracket; break;
      case ']': kind = Tok::RBracket; break;
      case '|': kind = Tok::Bar; break;
      case ',': kind = Tok::Comma; break;
      case '.': kind = Tok::Dot; break;
      case '=': kind = Tok::Equals; break;
      case ':': kind = Tok::Colon; break;
      default:
        throw ParseError(tl, tc, std::string("unexpected character '") + c + "'");
    }
    out.push_back({kind, std::string(1, c), tl, tc});
    advance(1);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

// Parse trees kept until all definitions are known, then resolved.
struct ProcExpr {
  enum class K { Inactive, Choice, Ref } k = K::Inactive;
  bool internal = false;
  std::string peer;
  std::vector<std::pair<std::string, std::unique_ptr<ProcExpr>>> branches;
  std::string ref;
  size_t line = 0, column = 0;
};

struct TypeExpr {
  enum class K { End, Output, Input, Ref } k = K::End;
  std::string player;   // Output: sender; Input: reader
  std::string partner;  // Output: receiver; Input: sender
  std::vector<std::pair<std::string, std::unique_ptr<TypeExpr>>> branches;
  std::string ref;
  size_t line = 0, column = 0;
};

struct NetExprItem {
  std::string participant;
  std::unique_ptr<ProcExpr> body;
  size_t line, column;
};

struct QueueItem {
  std::string sender, label, receiver;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : tokens_(tokenize(text)) {}

  SourceModule run() {
    while (peek().kind != Tok::End) top_definition();
    resolve();
    return std::move(module_);
  }

 private:
  std::vector<Token> tokens_;
  size_t pos_ = 0;
  SourceModule module_;

  std::vector<std::pair<std::string, std::unique_ptr<ProcExpr>>> proc_asts_;
  std::vector<std::pair<std::string, std::unique_ptr<TypeExpr>>> type_asts_;
  std::vector<std::pair<std::string, std::vector<NetExprItem>>> net_asts_;
  std::vector<std::pair<std::string, std::vector<QueueItem>>> queue_asts_;
  std::vector<std::pair<std::string, std::pair<std::string, std::string>>> session_asts_;
  std::vector<std::pair<std::string, std::vector<std::string>>> set_asts_;
  std::map<std::string, Token> def_sites_;  // "<kind> <name>" -> first definition

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const Token& t, const std::string& expected) {
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.column, "expected " + expected + ", found " + found);
  }

  Token expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) fail(peek(), what);
    return next();
  }

  std::string ident(const std::string& what) {
    if (peek().kind != Tok::Ident) fail(peek(), what);
    if (kKeywords.count(peek().text))
      throw ParseError(peek().line, peek().column,
                       "keyword '" + peek().text + "' cannot be used as " + what);
    return next().text;
  }

  bool at_keyword(const std::string& kw) const {
    return peek().kind == Tok::Ident && peek().text == kw;
  }

  void register_def(const std::string& kind, const std::string& name, const Token& site) {
    auto [it, fresh] = def_sites_.emplace(kind + " " + name, site);
    if (!fresh)
      throw ParseError(site.line, site.column,
                       "duplicate " + kind + " definition '" + name + "'");
  }

  void top_definition() {
    const Token& t = peek();
    if (at_keyword("process")) {
      next();
      Token site = peek();
      std::string name = ident("definition name");
      register_def("process", name, site);
      expect(Tok::Equals, "'='");
      proc_asts_.emplace_back(name, parse_proc());
      module_.process_order.push_back(name);
    } else if (at_keyword("global")) {
      next();
      Token site = peek();
      std::string name = ident("definition name");
      register_def("global", name, site);
      expect(Tok::Equals, "'='");
      type_asts_.emplace_back(name, parse_type());
      module_.global_order.push_back(name);
    } else if (at_keyword("network")) {
      next();
      Token site = peek();
      std::string name = ident("definition name");
      register_def("network", name, site);
      expect(Tok::Equals, "'='");
      std::vector<NetExprItem> items;
      items.push_back(parse_net_item());
      while (peek().kind == Tok::Bar) {
        next();
        items.push_back(parse_net_item());
      }
      net_asts_.emplace_back(name, std::move(items));
    } else if (at_keyword("queue")) {
      next();
      Token site = peek();
      std::string name = ident("definition name");
      register_def("queue", name, site);
      expect(Tok::Equals, "'='");
      expect(Tok::LBracket, "'['");
      std::vector<QueueItem> items;
      if (peek().kind != Tok::RBracket) {
        items.push_back(parse_queue_item());
        while (peek().kind == Tok::Comma) {
          next();
          items.push_back(parse_queue_item());
        }
      }
      expect(Tok::RBracket, "']'");
      queue_asts_.emplace_back(name, std::move(items));
    } else if (at_keyword("session")) {
      next();
      Token site = peek();
      std::string name = ident("definition name");
      register_def("session", name, site);
      expect(Tok::Equals, "'='");
      std::string net = ident("network name");
      if (!at_keyword("with")) fail(peek(), "'with'");
      next();
      std::string queue = ident("queue name");
      session_asts_.emplace_back(name, std::make_pair(net, queue));
    } else if (at_keyword("set")) {
      next();
      Token site = peek();
      std::string name = ident("definition name");
      register_def("set", name, site);
      expect(Tok::Equals, "'='");
      expect(Tok::LBrace, "'{'");
      std::vector<std::string> members;
      if (peek().kind != Tok::RBrace) {
        members.push_back(ident("participant"));
        while (peek().kind == Tok::Comma) {
          next();
          members.push_back(ident("participant"));
        }
      }
      expect(Tok::RBrace, "'}'");
      set_asts_.emplace_back(name, std::move(members));
    } else {
      fail(t, "a definition ('process', 'global', 'network', 'queue', 'session' or 'set')");
    }
  }

  std::unique_ptr<ProcExpr> parse_proc() {
    auto expr = std::make_unique<ProcExpr>();
    expr->line = peek().line;
    expr->column = peek().column;
    if (at_keyword("end")) {
      next();
      expr->k = ProcExpr::K::Inactive;
      return expr;
    }
    if (peek().kind != Tok::Ident) fail(peek(), "a process");
    std::string name = ident("a process");
    if (peek().kind == Tok::Bang || peek().kind == Tok::Question) {
      expr->k = ProcExpr::K::Choice;
      expr->internal = next().kind == Tok::Bang;
      expr->peer = std::move(name);
      parse_branches(expr->branches, [this] { return parse_proc(); });
      return expr;
    }
    expr->k = ProcExpr::K::Ref;
    expr->ref = std::move(name);
    return expr;
  }

  template <typename Sub, typename ParseSub>
  void parse_branches(std::vector<std::pair<std::string, std::unique_ptr<Sub>>>& out,
                      ParseSub&& sub) {
    if (peek().kind == Tok::LBrace) {
      next();
      out.emplace_back(parse_branch_label(), nullptr);
      expect(Tok::Dot, "'.'");
      out.back().second = sub();
      while (peek().kind == Tok::Comma) {
        next();
        out.emplace_back(parse_branch_label(), nullptr);
        expect(Tok::Dot, "'.'");
        out.back().second = sub();
      }
      expect(Tok::RBrace, "'}'");
      return;
    }
    out.emplace_back(parse_branch_label(), nullptr);
    expect(Tok::Dot, "'.'");
    out.back().second = sub();
  }

  std::string parse_branch_label() { return ident("a label"); }

  std::unique_ptr<TypeExpr> parse_type() {
    auto expr = std::make_unique<TypeExpr>();
    expr->line = peek().line;
    expr->column = peek().column;
    if (at_keyword("End")) {
      next();
      expr->k = TypeExpr::K::End;
      return expr;
    }
    if (peek().kind != Tok::Ident) fail(peek(), "a global type");
    std::string name = ident("a global type");
    if (peek().kind == Tok::Arrow) {
      next();
      expr->k = TypeExpr::K::Output;
      expr->player = std::move(name);  // sender
      expr->partner = ident("a participant");
      expect(Tok::Bang, "'!'");
      parse_branches(expr->branches, [this] { return parse_type(); });
      return expr;
    }
    if (peek().kind == Tok::BackArrow) {
      next();
      expr->k = TypeExpr::K::Input;
      expr->player = std::move(name);  // reader
      expr->partner = ident("a participant");
      expect(Tok::Question, "'?'");
      std::string label = ident("a label");
      expect(Tok::Dot, "'.'");
      expr->branches.emplace_back(std::move(label), parse_type());
      return expr;
    }
    expr->k = TypeExpr::K::Ref;
    expr->ref = std::move(name);
    return expr;
  }

  NetExprItem parse_net_item() {
    NetExprItem item;
    item.line = peek().line;
    item.column = peek().column;
    item.participant = ident("a participant");
    expect(Tok::LBracket, "'['");
    item.body = parse_proc();
    expect(Tok::RBracket, "']'");
    return item;
  }

  QueueItem parse_queue_item() {
    QueueItem item;
    item.sender = ident("a participant");
    expect(Tok::Arrow, "'->'");
    item.receiver = ident("a participant");
    expect(Tok::Colon, "':'");
    item.label = ident("a label");
    return item;
  }

  // Resolution: constructor-bodied definitions get reserved arena slots so
  // recursion can point at them; alias definitions resolve through a chain
  // with cycle detection (an alias cycle is unguarded recursion).
  void resolve() {
    std::map<std::string, ProcessId> proc_slots;
    std::map<std::string, const ProcExpr*> proc_alias;
    for (const auto& [name, ast] : proc_asts_) {
      if (ast->k == ProcExpr::K::Ref)
        proc_alias.emplace(name, ast.get());
      else if (ast->k == ProcExpr::K::Inactive)
        proc_slots.emplace(name, module_.procs.inactive());
      else
        proc_slots.emplace(name, module_.procs.reserve());
    }
    std::function<ProcessId(const std::string&, size_t, size_t, std::set<std::string>&)>
        proc_lookup = [&](const std::string& name, size_t line, size_t col,
                          std::set<std::string>& visiting) -> ProcessId {
      if (auto it = proc_slots.find(name); it != proc_slots.end()) return it->second;
      auto alias = proc_alias.find(name);
      if (alias == proc_alias.end())
        throw ParseError(line, col, "unresolved process reference '" + name + "'");
      if (!visiting.insert(name).second)
        throw ParseError(alias->second->line, alias->second->column,
                         "unguarded recursion through '" + name + "'");
      ProcessId id = proc_lookup(alias->second->ref, alias->second->line,
                                 alias->second->column, visiting);
      proc_slots.emplace(name, id);
      return id;
    };
    std::function<ProcessId(const ProcExpr&)> build_proc = [&](const ProcExpr& e) -> ProcessId {
      switch (e.k) {
        case ProcExpr::K::Inactive:
          return module_.procs.inactive();
        case ProcExpr::K::Ref: {
          std::set<std::string> visiting;
          return proc_lookup(e.ref, e.line, e.column, visiting);
        }
        case ProcExpr::K::Choice: {
          std::vector<ProcessBranch> branches;
          for (const auto& [label, sub] : e.branches)
            branches.push_back({Label{label}, build_proc(*sub)});
          return module_.procs.add(
              e.internal ? ProcessKind::InternalChoice : ProcessKind::ExternalChoice,
              Participant{e.peer}, std::move(branches));
        }
      }
      throw std::logic_error("unreachable");
    };
    for (const auto& [name, ast] : proc_asts_) {
      if (ast->k != ProcExpr::K::Choice) continue;
      std::vector<ProcessBranch> branches;
      for (const auto& [label, sub] : ast->branches)
        branches.push_back({Label{label}, build_proc(*sub)});
      module_.procs.fill(proc_slots.at(name),
                         ast->internal ? ProcessKind::InternalChoice
                                       : ProcessKind::ExternalChoice,
                         Participant{ast->peer}, std::move(branches));
    }
    for (const auto& [name, ast] : proc_asts_) {
      std::set<std::string> visiting;
      ProcessId id = proc_lookup(name, ast->line, ast->column, visiting);
      module_.process_defs.emplace(name, id);
      if (ast->k == ProcExpr::K::Choice) module_.procs.set_name(id, name);
    }

    std::map<std::string, TypeId> type_slots;
    std::map<std::string, const TypeExpr*> type_alias;
    for (const auto& [name, ast] : type_asts_) {
      if (ast->k == TypeExpr::K::Ref)
        type_alias.emplace(name, ast.get());
      else if (ast->k == TypeExpr::K::End)
        type_slots.emplace(name, module_.types.end());
      else
        type_slots.emplace(name, module_.types.reserve());
    }
    std::function<TypeId(const std::string&, size_t, size_t, std::set<std::string>&)>
        type_lookup = [&](const std::string& name, size_t line, size_t col,
                          std::set<std::string>& visiting) -> TypeId {
      if (auto it = type_slots.find(name); it != type_slots.end()) return it->second;
      auto alias = type_alias.find(name);
      if (alias == type_alias.end())
        throw ParseError(line, col, "unresolved global type reference '" + name + "'");
      if (!visiting.insert(name).second)
        throw ParseError(alias->second->line, alias->second->column,
                         "unguarded recursion through '" + name + "'");
      TypeId id = type_lookup(alias->second->ref, alias->second->line,
                              alias->second->column, visiting);
      type_slots.emplace(name, id);
      return id;
    };
    std::function<TypeId(const TypeExpr&)> build_type = [&](const TypeExpr& e) -> TypeId {
      switch (e.k) {
        case TypeExpr::K::End:
          return module_.types.end();
        case TypeExpr::K::Ref: {
          std::set<std::string> visiting;
          return type_lookup(e.ref, e.line, e.column, visiting);
        }
        case TypeExpr::K::Output: {
          std::vector<TypeBranch> branches;
          for (const auto& [label, sub] : e.branches)
            branches.push_back({Label{label}, build_type(*sub)});
          return module_.types.add_output(Participant{e.player}, Participant{e.partner},
                                          std::move(branches));
        }
        case TypeExpr::K::Input:
          return module_.types.add_input(Participant{e.player}, Participant{e.partner},
                                         Label{e.branches[0].first},
                                         build_type(*e.branches[0].second));
      }
      throw std::logic_error("unreachable");
    };
    for (const auto& [name, ast] : type_asts_) {
      if (ast->k == TypeExpr::K::Ref || ast->k == TypeExpr::K::End) continue;
      if (ast->k == TypeExpr::K::Output) {
        std::vector<TypeBranch> branches;
        for (const auto& [label, sub] : ast->branches)
          branches.push_back({Label{label}, build_type(*sub)});
        module_.types.fill_output(type_slots.at(name), Participant{ast->player},
                                  Participant{ast->partner}, std::move(branches));
      } else {
        module_.types.fill_input(type_slots.at(name), Participant{ast->player},
                                 Participant{ast->partner}, Label{ast->branches[0].first},
                                 build_type(*ast->branches[0].second));
      }
    }
    for (const auto& [name, ast] : type_asts_) {
      std::set<std::string> visiting;
      TypeId id = type_lookup(name, ast->line, ast->column, visiting);
      module_.global_defs.emplace(name, id);
      if (ast->k == TypeExpr::K::Output || ast->k == TypeExpr::K::Input)
        module_.types.set_name(id, name);
    }

    for (const auto& [name, items] : net_asts_) {
      std::map<Participant, ProcessId> bindings;
      for (const auto& item : items) {
        Participant p{item.participant};
        if (bindings.count(p))
          throw ParseError(item.line, item.column,
                           "participant '" + p.name + "' bound twice");
        bindings.emplace(p, build_proc(*item.body));
      }
      module_.network_defs.emplace(name, Network{std::move(bindings)});
    }

    for (const auto& [name, items] : queue_asts_) {
      Queue q;
      for (const auto& item : items)
        q.messages.push_back(
            {Participant{item.sender}, Label{item.label}, Participant{item.receiver}});
      module_.queue_defs.emplace(name, std::move(q));
    }

    for (const auto& [name, refs] : session_asts_) {
      auto net = module_.network_defs.find(refs.first);
      if (net == module_.network_defs.end())
        throw ParseError(1, 1, "unresolved network reference '" + refs.first +
                                   "' in session '" + name + "'");
      auto queue = module_.queue_defs.find(refs.second);
      if (queue == module_.queue_defs.end())
        throw ParseError(1, 1, "unresolved queue reference '" + refs.second +
                                   "' in session '" + name + "'");
      module_.session_defs.emplace(name, Session{net->second, queue->second});
    }

    for (const auto& [name, members] : set_asts_) {
      ParticipantSet ps;
      for (const auto& m : members) ps.insert(Participant{m});
      module_.set_defs.emplace(name, std::move(ps));
    }

    check_well_formed();
  }

  void check_well_formed() {
    auto report = [&](const ValidationReport& r, const std::string& where) {
      if (r.ok()) return;
      throw ParseError(1, 1, "ill-formed " + where + ": " + r.violations.front().where +
                                 ": " + r.violations.front().what);
    };
    for (const auto& [name, id] : module_.process_defs)
      report(validate(module_.procs, id), "process '" + name + "'");
    for (const auto& [name, id] : module_.global_defs)
      report(validate(module_.types, id), "global '" + name + "'");
    for (const auto& [name, net] : module_.network_defs)
      report(validate(module_.procs, net), "network '" + name + "'");
    for (const auto& [name, q] : module_.queue_defs)
      report(validate(q), "queue '" + name + "'");
  }
};

}  // namespace

SourceModule parse_module(const std::string& text) { return Parser(text).run(); }

SourceModule parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, 0, "cannot open file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_module(buffer.str());
}

namespace {

// Nodes that lie on a cycle must become named definitions when rendering.
template <typename Arena, typename Id>
std::set<uint32_t> cyclic_nodes(const Arena& arena, Id root) {
  std::set<uint32_t> on_cycle;
  std::set<uint32_t> done;
  std::vector<uint32_t> path;
  std::function<void(uint32_t)> dfs = [&](uint32_t v) {
    auto it = std::find(path.begin(), path.end(), v);
    if (it != path.end()) {
      for (; it != path.end(); ++it) on_cycle.insert(*it);
      return;
    }
    if (done.count(v)) return;
    path.push_back(v);
    for (const auto& b : arena[Id{v}].branches) dfs(b.target.index);
    path.pop_back();
    done.insert(v);
  };
  dfs(root.index);
  return on_cycle;
}

struct RenderNames {
  std::map<uint32_t, std::string> names;  // node -> definition name
  std::vector<uint32_t> order;            // emission order, root first
};

template <typename Arena, typename Id>
RenderNames assign_names(const Arena& arena, Id root, const std::string& root_name) {
  RenderNames rn;
  auto cyc = cyclic_nodes(arena, root);
  cyc.insert(root.index);
  std::set<std::string> used{root_name};
  rn.names[root.index] = root_name;
  rn.order.push_back(root.index);
  int counter = 0;
  for (uint32_t v : cyc) {
    if (v == root.index) continue;
    std::string base = arena[Id{v}].name.value_or("");
    std::string name = base;
    while (name.empty() || used.count(name)) name = "X" + std::to_string(++counter);
    used.insert(name);
    rn.names[v] = name;
    rn.order.push_back(v);
  }
  return rn;
}

std::string proc_expr(const ProcessArena& arena, ProcessId id, const RenderNames& rn,
                      bool at_def) {
  if (!at_def) {
    auto it = rn.names.find(id.index);
    if (it != rn.names.end()) return it->second;
  }
  const auto& node = arena[id];
  if (node.kind == ProcessKind::Inactive) return "end";
  std::string out = node.peer.name;
  out += node.kind == ProcessKind::InternalChoice ? "!" : "?";
  if (node.branches.size() == 1) {
    out += node.branches[0].label.name + "." + proc_expr(arena, node.branches[0].target, rn, false);
  } else {
    out += "{";
    for (size_t i = 0; i < node.branches.size(); ++i) {
      if (i) out += ", ";
      out += node.branches[i].label.name + "." +
             proc_expr(arena, node.branches[i].target, rn, false);
    }
    out += "}";
  }
  return out;
}

std::string type_expr(const TypeArena& arena, TypeId id, const RenderNames& rn, bool at_def) {
  if (!at_def) {
    auto it = rn.names.find(id.index);
    if (it != rn.names.end()) return it->second;
  }
  const auto& node = arena[id];
  if (node.kind == TypeKind::End) return "End";
  if (node.kind == TypeKind::Input) {
    return node.player.name + "<-" + node.partner.name + "?" + node.branches[0].label.name +
           "." + type_expr(arena, node.branches[0].target, rn, false);
  }
  std::string out = node.player.name + "->" + node.partner.name + "!";
  if (node.branches.size() == 1) {
    out += node.branches[0].label.name + "." + type_expr(arena, node.branches[0].target, rn, false);
  } else {
    out += "{";
    for (size_t i = 0; i < node.branches.size(); ++i) {
      if (i) out += ", ";
      out += node.branches[i].label.name + "." +
             type_expr(arena, node.branches[i].target, rn, false);
    }
    out += "}";
  }
  return out;
}

}  // namespace

std::string render_process(const ProcessArena& arena, ProcessId root) {
  RenderNames rn = assign_names(arena, root, "main");
  std::string out;
  for (uint32_t v : rn.order)
    out += "process " + rn.names.at(v) + " = " + proc_expr(arena, ProcessId{v}, rn, true) + "\n";
  return out;
}

std::string render_global(const TypeArena& arena, TypeId root) {
  RenderNames rn = assign_names(arena, root, "main");
  std::string out;
  for (uint32_t v : rn.order)
    out += "global " + rn.names.at(v) + " = " + type_expr(arena, TypeId{v}, rn, true) + "\n";
  return out;
}

std::string render_session(const ProcessArena& arena, const Session& s) {
  std::string out;
  std::string net = "network main_net =";
  bool first = true;
  int counter = 0;
  for (const auto& [p, id] : s.network.bindings()) {
    std::string def = "P" + std::to_string(++counter) + "_" + p.name;
    RenderNames rn = assign_names(arena, id, def);
    for (uint32_t v : rn.order)
      out += "process " + rn.names.at(v) + " = " + proc_expr(arena, ProcessId{v}, rn, true) +
             "\n";
    net += first ? " " : " | ";
    net += p.name + "[" + def + "]";
    first = false;
  }
  out += net + "\n";
  out += "queue main_queue = " + queue_text(s.queue) + "\n";
  out += "session main = main_net with main_queue\n";
  return out;
}

namespace {

std::string proc_display(const ProcessArena& arena, ProcessId id, std::set<uint32_t>& path) {
  const auto& node = arena[id];
  if (node.kind == ProcessKind::Inactive) return "end";
  if (path.count(id.index)) return node.name ? *node.name : "#" + std::to_string(id.index);
  if (node.name && path.size() > 0) return *node.name;
  path.insert(id.index);
  std::string out = node.peer.name;
  out += node.kind == ProcessKind::InternalChoice ? "!" : "?";
  if (node.branches.size() == 1) {
    out += node.branches[0].label.name + "." + proc_display(arena, node.branches[0].target, path);
  } else {
    out += "{";
    for (size_t i = 0; i < node.branches.size(); ++i) {
      if (i) out += ", ";
      out += node.branches[i].label.name + "." +
             proc_display(arena, node.branches[i].target, path);
    }
    out += "}";
  }
  path.erase(id.index);
  return out;
}

std::string type_display(const TypeArena& arena, TypeId id, std::set<uint32_t>& path) {
  const auto& node = arena[id];
  if (node.kind == TypeKind::End) return "End";
  if (path.count(id.index)) return node.name ? *node.name : "#" + std::to_string(id.index);
  if (node.name && path.size() > 0) return *node.name;
  path.insert(id.index);
  std::string out;
  if (node.kind == TypeKind::Input) {
    out = node.player.name + "<-" + node.partner.name + "?" + node.branches[0].label.name +
          "." + type_display(arena, node.branches[0].target, path);
  } else {
    out = node.player.name + "->" + node.partner.name + "!";
    if (node.branches.size() == 1) {
      out += node.branches[0].label.name + "." +
             type_display(arena, node.branches[0].target, path);
    } else {
      out += "{";
      for (size_t i = 0; i < node.branches.size(); ++i) {
        if (i) out += ", ";
        out += node.branches[i].label.name + "." +
               type_display(arena, node.branches[i].target, path);
      }
      out += "}";
    }
  }
  path.erase(id.index);
  return out;
}

}  // namespace

std::string process_text(const ProcessArena& arena, ProcessId p) {
  std::set<uint32_t> path;
  if (arena[p].name) return *arena[p].name;
  return proc_display(arena, p, path);
}

std::string global_text(const TypeArena& arena, TypeId g) {
  std::set<uint32_t> path;
  if (arena[g].name) return *arena[g].name;
  return type_display(arena, g, path);
}

std::string queue_text(const Queue& q) {
  std::string out = "[";
  for (size_t i = 0; i < q.messages.size(); ++i) {
    if (i) out += ", ";
    out += q.messages[i].sender.name + "->" + q.messages[i].receiver.name + ":" +
           q.messages[i].label.name;
  }
  return out + "]";
}

std::string network_text(const ProcessArena& arena, const Network& n) {
  if (n.bindings().empty()) return "(empty network)";
  std::string out;
  bool first = true;
  for (const auto& [p, id] : n.bindings()) {
    if (!first) out += " | ";
    first = false;
    std::set<uint32_t> path;
    out += p.name + "[" + proc_display(arena, id, path) + "]";
  }
  return out;
}

std::string session_text(const ProcessArena& arena, const Session& s) {
  return network_text(arena, s.network) + " with " + queue_text(s.queue);
}

std::string set_text(const ParticipantSet& ps) {
  std::string out = "{";
  bool first = true;
  for (const auto& p : ps) {
    if (!first) out += ", ";
    first = false;
    out += p.name;
  }
  return out + "}";
}

}  // namespace mpst
