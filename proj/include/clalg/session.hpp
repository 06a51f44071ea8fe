#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "clalg/closures.hpp"

namespace clalg {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t offset = 0;
};

/// Syntax, name or arity error at a position of the script.
class SessionError : public std::runtime_error {
 public:
  SessionError(SourcePos pos, const std::string& msg)
      : std::runtime_error("line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) + ": " + msg),
        pos_(pos),
        message_(msg) {}
  SourcePos pos() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  SourcePos pos_;
  std::string message_;
};

/// A raw value: an atom (name, integer or polynomial text) or a bracketed list.
struct Value {
  bool is_list = false;
  std::string atom;
  std::vector<Value> items;
  SourcePos pos;

  bool operator==(const Value& o) const { return is_list == o.is_list && atom == o.atom && items == o.items; }
};

struct Field {
  std::string key;  // empty for positional command arguments
  Value value;
  SourcePos pos;

  bool operator==(const Field& o) const { return key == o.key && value == o.value; }
};

enum class DeclKind { RING, MODULE, MAP, CLOSURE, SUBMODULE };

struct Decl {
  DeclKind kind = DeclKind::RING;
  std::string name;
  /// module: {ring}; map: {source, target}; submodule: {module}.
  std::vector<std::string> header;
  std::vector<Field> fields;
  std::optional<Value> body;  // map and submodule bodies
  SourcePos pos;

  const Field* field(std::string_view key) const;
  bool operator==(const Decl& o) const {
    return kind == o.kind && name == o.name && header == o.header && fields == o.fields && body == o.body;
  }
};

struct Command {
  std::string name;
  std::vector<Field> args;
  std::size_t decls_before = 0;
  SourcePos pos;

  const Field* arg(std::string_view key) const;
  std::vector<const Value*> positional() const;
  std::string echo() const;
  bool operator==(const Command& o) const {
    return name == o.name && args == o.args && decls_before == o.decls_before;
  }
};

struct SessionScript {
  std::vector<Decl> decls;
  std::vector<Command> commands;

  bool operator==(const SessionScript& o) const { return decls == o.decls && commands == o.commands; }
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"gb",     "member",        "close",  "phantom", "sym2",  "axiom-check",
                                              "algebra-axiom", "modify", "build",   "test-ideal", "chain"};
  return names;
}

/// Parses and resolves a script. Every name must be declared before use.
SessionScript parse_session(std::string_view text);
/// Canonical text of a script; parse_session(print_session(s)) == s.
std::string print_session(const SessionScript& s);
std::string print_value(const Value& v);

struct RunOptions {
  std::uint32_t emax = 4;
  std::uint64_t budget = 0;  // S-pairs; 0 = library default
  std::uint64_t seed = 0;
  bool parallel = false;
  bool timing = false;
};

/// Objects declared by a script, built for the given options.
struct Environment {
  std::map<std::string, RingPtr> rings;
  std::map<std::string, PresentedModule> modules;
  std::map<std::string, std::string> module_ring;
  std::map<std::string, ModuleMap> module_maps;
  std::map<std::string, RingMap> ring_maps;
  std::map<std::string, Closure> closures;
  std::map<std::string, Submodule> submodules;
  std::map<std::string, std::string> submodule_module;
  std::map<std::string, DeclKind> kinds;
  std::string last_ring;
};

/// Builds the first `count` declarations (all when count is npos).
Environment resolve(const SessionScript& s, const RunOptions& opts, std::size_t count = std::string::npos);

/// Parses a polynomial / vector value against a ring.
Poly parse_poly_value(const Value& v, const RingPtr& ring);
Vec parse_vector_value(const Value& v, const RingPtr& ring, std::uint32_t rank);

}  // namespace clalg
