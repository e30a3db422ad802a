#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpst/term.hpp"

namespace mpst {

// Parsed .mps module: named definitions resolved into the two term arenas.
// Recursion is allowed within processes and within global types; names are
// per-kind namespaces.
struct SourceModule {
  ProcessArena procs;
  TypeArena types;
  std::map<std::string, ProcessId> process_defs;
  std::map<std::string, TypeId> global_defs;
  std::map<std::string, Network> network_defs;
  std::map<std::string, Queue> queue_defs;
  std::map<std::string, Session> session_defs;
  std::map<std::string, ParticipantSet> set_defs;
  std::vector<std::string> process_order;  // source order of definitions
  std::vector<std::string> global_order;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(size_t line, size_t column, const std::string& message);

  size_t line() const { return line_; }
  size_t column() const { return column_; }

 private:
  size_t line_;
  size_t column_;
};

SourceModule parse_module(const std::string& text);
SourceModule parse_file(const std::string& path);

// Parseable module text for a single term, rooted at a definition named
// "main"; cyclic nodes are printed through synthesized definitions. The
// round-trip guarantee is bisimilarity, not byte equality.
std::string render_process(const ProcessArena& arena, ProcessId root);
std::string render_global(const TypeArena& arena, TypeId root);
std::string render_session(const ProcessArena& arena, const Session& s);

// Single-line display forms (not necessarily parseable on their own): named
// nodes print as their name, cycles as back-references.
std::string process_text(const ProcessArena& arena, ProcessId p);
std::string global_text(const TypeArena& arena, TypeId g);
std::string queue_text(const Queue& q);
std::string network_text(const ProcessArena& arena, const Network& n);
std::string session_text(const ProcessArena& arena, const Session& s);
std::string set_text(const ParticipantSet& ps);

}  // namespace mpst
