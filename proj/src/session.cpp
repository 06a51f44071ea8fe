#include "clalg/session.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "clalg/errors.hpp"

namespace clalg {

const Field* Decl::field(std::string_view key) const {
  for (const auto& f : fields)
    if (f.key == key) return &f;
  return nullptr;
}

const Field* Command::arg(std::string_view key) const {
  for (const auto& f : args)
    if (f.key == key) return &f;
  return nullptr;
}

std::vector<const Value*> Command::positional() const {
  std::vector<const Value*> out;
  for (const auto& f : args)
    if (f.key.empty()) out.push_back(&f.value);
  return out;
}

std::string print_value(const Value& v) {
  if (!v.is_list) return v.atom;
  std::string s = "[";
  for (std::size_t i = 0; i < v.items.size(); ++i) {
    if (i) s += ", ";
    s += print_value(v.items[i]);
  }
  return s + "]";
}

std::string Command::echo() const {
  std::string s = "check " + name;
  for (const auto& a : args) {
    s += ' ';
    if (!a.key.empty()) s += a.key + "=";
    s += print_value(a.value);
  }
  return s + ";";
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  SessionScript run() {
    SessionScript out;
    for (skip(); !eof(); skip()) {
      const auto at = pos();
      const auto kw = ident("a declaration or 'check'");
      if (kw == "check") {
        auto c = command(at);
        c.decls_before = out.decls.size();
        out.commands.push_back(std::move(c));
        continue;
      }
      Decl d;
      d.pos = at;
      if (kw == "ring") {
        d.kind = DeclKind::RING;
        d.name = ident("a ring name");
        fields(d);
      } else if (kw == "module") {
        d.kind = DeclKind::MODULE;
        d.name = ident("a module name");
        keyword("over");
        d.header.push_back(ident("a ring name"));
        fields(d);
      } else if (kw == "map") {
        d.kind = DeclKind::MAP;
        d.name = ident("a map name");
        expect(':');
        d.header.push_back(ident("a source name"));
        skip();
        if (s_.substr(i_, 2) != "->") fail("expected '->'");
        advance(2);
        d.header.push_back(ident("a target name"));
        body(d);
      } else if (kw == "closure") {
        d.kind = DeclKind::CLOSURE;
        d.name = ident("a closure name");
        fields(d);
      } else if (kw == "submodule") {
        d.kind = DeclKind::SUBMODULE;
        d.name = ident("a submodule name");
        keyword("of");
        d.header.push_back(ident("a module name"));
        body(d);
      } else {
        fail_at(at, "unknown keyword '" + kw + "'");
      }
      skip();
      if (peek() == ';') advance(1);
      out.decls.push_back(std::move(d));
    }
    return out;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
  std::size_t line_ = 1, col_ = 1;

  bool eof() const { return i_ >= s_.size(); }
  char peek() const { return eof() ? '\0' : s_[i_]; }
  SourcePos pos() const { return {line_, col_, i_}; }

  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n && !eof(); ++k, ++i_) {
      if (s_[i_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  void skip() {
    while (!eof()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        advance(1);
      } else if (peek() == '#') {
        while (!eof() && peek() != '\n') advance(1);
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg) const { throw SessionError(pos(), msg); }
  [[noreturn]] static void fail_at(SourcePos p, const std::string& msg) { throw SessionError(p, msg); }

  static bool ident_char(char c, bool first, bool hyphen) {
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return true;
    if (first) return false;
    return std::isdigit(static_cast<unsigned char>(c)) || c == '\'' || (hyphen && c == '-');
  }

  std::string ident(const char* what, bool hyphen = false) {
    skip();
    if (!ident_char(peek(), true, hyphen)) fail(std::string("expected ") + what);
    const auto start = i_;
    while (!eof() && ident_char(peek(), false, hyphen)) advance(1);
    return std::string(s_.substr(start, i_ - start));
  }

  void keyword(const char* kw) {
    const auto at = pos();
    if (ident(kw) != kw) fail_at(at, std::string("expected '") + kw + "'");
  }

  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance(1);
  }

  // Atom text up to a terminator at bracket depth 0.
  Value atom(const std::string& stops) {
    skip();
    Value v;
    v.pos = pos();
    const auto start = i_;
    int depth = 0;
    while (!eof()) {
      const char c = peek();
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) fail("unbalanced ')'");
        --depth;
      }
      if (depth == 0 && stops.find(c) != std::string::npos) break;
      if (c == '\n' || c == '{' || c == '}' || c == '[') {
        if (depth == 0 || c != '\n') break;
      }
      advance(1);
    }
    std::string text(s_.substr(start, i_ - start));
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
    if (text.empty()) fail("expected a value");
    if (depth) fail("unbalanced '('");
    v.atom = std::move(text);
    return v;
  }

  Value value(const std::string& stops) {
    skip();
    if (peek() != '[') return atom(stops);
    Value v;
    v.is_list = true;
    v.pos = pos();
    advance(1);
    skip();
    if (peek() == ']') {
      advance(1);
      return v;
    }
    while (true) {
      v.items.push_back(value(",]"));
      skip();
      if (peek() == ',') {
        advance(1);
        continue;
      }
      if (peek() == ']') {
        advance(1);
        return v;
      }
      fail("expected ',' or ']'");
    }
  }

  void fields(Decl& d) {
    expect('{');
    std::set<std::string> seen;
    while (true) {
      skip();
      if (peek() == '}') {
        advance(1);
        return;
      }
      Field f;
      f.pos = pos();
      f.key = ident("a field name or '}'");
      if (!seen.insert(f.key).second) fail_at(f.pos, "duplicate field '" + f.key + "'");
      expect('=');
      f.value = value(";");
      expect(';');
      d.fields.push_back(std::move(f));
    }
  }

  void body(Decl& d) {
    expect('{');
    d.body = value("}");
    expect('}');
  }

  Command command(SourcePos at) {
    Command c;
    c.pos = at;
    skip();
    const auto npos = pos();
    c.name = ident("a command name", true);
    const auto& names = command_names();
    if (std::find(names.begin(), names.end(), c.name) == names.end())
      fail_at(npos, "unknown command '" + c.name + "'");
    while (true) {
      skip();
      if (eof()) fail("expected ';'");
      if (peek() == ';') {
        advance(1);
        return c;
      }
      Field f;
      f.pos = pos();
      if (ident_char(peek(), true, false)) {
        const auto save_i = i_;
        const auto save_line = line_, save_col = col_;
        auto key = ident("an argument");
        if (peek() == '=') {
          advance(1);
          f.key = std::move(key);
        } else {
          i_ = save_i;
          line_ = save_line;
          col_ = save_col;
        }
      }
      f.value = value(" \t\r\n;");
      c.args.push_back(std::move(f));
    }
  }
};

// ---- resolution -------------------------------------------------------------

[[noreturn]] void fail_at(SourcePos p, const std::string& msg) { throw SessionError(p, msg); }

SourcePos advance_pos(SourcePos p, std::string_view text, std::size_t offset) {
  for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
    ++p.offset;
  }
  return p;
}

std::int64_t int_value(const Value& v, const char* what) {
  if (v.is_list) fail_at(v.pos, std::string("expected an integer for ") + what);
  try {
    std::size_t used = 0;
    const auto x = std::stoll(v.atom, &used);
    if (used != v.atom.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    fail_at(v.pos, std::string("expected an integer for ") + what);
  }
}

bool bool_value(const Value& v, const char* what) {
  if (!v.is_list && (v.atom == "true" || v.atom == "1")) return true;
  if (!v.is_list && (v.atom == "false" || v.atom == "0")) return false;
  fail_at(v.pos, std::string("expected true or false for ") + what);
}

std::string name_value(const Value& v, const char* what) {
  if (v.is_list || v.atom.empty() || !(std::isalpha(static_cast<unsigned char>(v.atom[0])) || v.atom[0] == '_'))
    fail_at(v.pos, std::string("expected a name for ") + what);
  return v.atom;
}

const std::vector<Value>& list_value(const Value& v, const char* what) {
  if (!v.is_list) fail_at(v.pos, std::string("expected a list for ") + what);
  return v.items;
}

const Field& required(const Decl& d, const char* key) {
  const auto* f = d.field(key);
  if (!f) fail_at(d.pos, std::string("missing field '") + key + "'");
  return *f;
}

void check_fields(const Decl& d, std::initializer_list<const char*> allowed) {
  for (const auto& f : d.fields)
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return f.key == k; }))
      fail_at(f.pos, "unknown field '" + f.key + "'");
}

template <class Map>
const typename Map::mapped_type& lookup(const Map& m, const std::string& name, SourcePos p, const char* what) {
  auto it = m.find(name);
  if (it == m.end()) fail_at(p, std::string("undeclared ") + what + " '" + name + "'");
  return it->second;
}

std::vector<Vec> vector_list(const Value& v, const RingPtr& R, std::uint32_t rank, const char* what) {
  std::vector<Vec> out;
  for (const auto& item : list_value(v, what)) out.push_back(parse_vector_value(item, R, rank));
  return out;
}

Closure build_closure(const Decl& d, const Environment& env, const RunOptions& opts) {
  const auto kind = name_value(required(d, "kind").value, "kind");
  auto closure_ref = [&](const Value& v) { return lookup(env.closures, name_value(v, "closure"), v.pos, "closure"); };
  auto members = [&] {
    std::vector<Closure> out;
    for (const auto& m : list_value(required(d, "members").value, "members")) out.push_back(closure_ref(m));
    if (out.empty()) fail_at(d.pos, "a family needs at least one member");
    return out;
  };
  auto ring_map = [&]() -> const RingMap& {
    const auto& v = required(d, "map").value;
    return lookup(env.ring_maps, name_value(v, "map"), v.pos, "ring map");
  };
  if (kind == "identity") {
    check_fields(d, {"kind"});
    return identity_closure();
  }
  if (kind == "module") {
    check_fields(d, {"kind", "module", "unit"});
    const auto& v = required(d, "module").value;
    const auto& S = lookup(env.modules, name_value(v, "module"), v.pos, "module");
    std::optional<std::uint32_t> unit;
    if (const auto* u = d.field("unit")) unit = static_cast<std::uint32_t>(int_value(u->value, "unit"));
    return module_closure(S, unit);
  }
  if (kind == "algebra") {
    check_fields(d, {"kind", "map"});
    return algebra_closure(ring_map(), d.name);
  }
  if (kind == "frobenius") {
    check_fields(d, {"kind", "e"});
    return frobenius_closure(static_cast<std::uint32_t>(int_value(required(d, "e").value, "e")));
  }
  if (kind == "tight") {
    check_fields(d, {"kind", "emax", "candidates", "ring", "slack"});
    std::uint32_t emax = opts.emax;
    if (const auto* f = d.field("emax")) emax = static_cast<std::uint32_t>(int_value(f->value, "emax"));
    std::vector<Poly> cands;
    if (const auto* f = d.field("candidates")) {
      const auto& rv = required(d, "ring").value;
      const auto& R = lookup(env.rings, name_value(rv, "ring"), rv.pos, "ring");
      for (const auto& c : list_value(f->value, "candidates")) cands.push_back(parse_poly_value(c, R));
    }
    std::int64_t slack = -1;
    if (const auto* f = d.field("slack")) slack = int_value(f->value, "slack");
    return tight_bounded(std::move(cands), emax, slack);
  }
  if (kind == "pullback") {
    check_fields(d, {"kind", "map", "inner"});
    return pullback(ring_map(), closure_ref(required(d, "inner").value), d.name);
  }
  if (kind == "intersection") {
    check_fields(d, {"kind", "members"});
    return intersection(members());
  }
  if (kind == "sum") {
    check_fields(d, {"kind", "members"});
    return sum(members());
  }
  if (kind == "directed") {
    check_fields(d, {"kind", "members"});
    return directed_family(members());
  }
  if (kind == "generated") {
    check_fields(d, {"kind", "members", "rounds", "single_pass"});
    std::uint32_t rounds = 0;
    bool single = false;
    if (const auto* f = d.field("rounds")) rounds = static_cast<std::uint32_t>(int_value(f->value, "rounds"));
    if (const auto* f = d.field("single_pass")) single = bool_value(f->value, "single_pass");
    return generated_family(members(), rounds, single);
  }
  fail_at(required(d, "kind").value.pos, "unknown closure kind '" + kind + "'");
}

void add_decl(Environment& env, const Decl& d, const RunOptions& opts) {
  if (env.kinds.count(d.name)) fail_at(d.pos, "name '" + d.name + "' is already declared");
  switch (d.kind) {
    case DeclKind::RING: {
      check_fields(d, {"p", "vars", "rels", "weights", "domain"});
      const auto p = int_value(required(d, "p").value, "p");
      if (p < 2 || p > 2147483647) fail_at(required(d, "p").value.pos, "modulus not prime");
      std::vector<std::string> vars;
      for (const auto& v : list_value(required(d, "vars").value, "vars")) vars.push_back(name_value(v, "variable"));
      std::vector<int> weights;
      if (const auto* f = d.field("weights"))
        for (const auto& w : list_value(f->value, "weights")) weights.push_back(static_cast<int>(int_value(w, "weight")));
      if (!weights.empty() && weights.size() != vars.size())
        fail_at(d.field("weights")->value.pos, "arity mismatch: one weight per variable");
      bool domain = true;
      if (const auto* f = d.field("domain")) domain = bool_value(f->value, "domain");
      std::vector<std::string> rels;
      if (const auto* f = d.field("rels")) {
        // parse each relation here so errors point into the script
        auto w = weights.empty() ? std::vector<int>(vars.size(), 1) : weights;
        try {
          auto base = make_ring(d.name, static_cast<std::uint32_t>(p), vars, {}, w, domain);
          for (const auto& r : list_value(f->value, "rels")) {
            parse_poly_value(r, base);
            rels.push_back(r.atom);
          }
        } catch (const ConstructionError& e) {
          fail_at(required(d, "p").value.pos, e.what());
        }
      }
      try {
        env.rings.emplace(d.name, make_ring(d.name, static_cast<std::uint32_t>(p), vars, rels, weights, domain));
      } catch (const Error& e) {
        const std::string msg = e.what();
        fail_at(msg.rfind("modulus", 0) == 0 ? required(d, "p").value.pos : d.pos, msg);
      }
      env.last_ring = d.name;
      break;
    }
    case DeclKind::MODULE: {
      check_fields(d, {"ngens", "rels", "degrees"});
      const auto& R = lookup(env.rings, d.header[0], d.pos, "ring");
      const auto n = int_value(required(d, "ngens").value, "ngens");
      if (n < 1) fail_at(required(d, "ngens").value.pos, "a module needs at least one generator");
      const auto rank = static_cast<std::uint32_t>(n);
      std::vector<Vec> rels;
      if (const auto* f = d.field("rels")) rels = vector_list(f->value, R, rank, "rels");
      std::vector<std::int64_t> degs;
      if (const auto* f = d.field("degrees")) {
        for (const auto& v : list_value(f->value, "degrees")) degs.push_back(int_value(v, "degree"));
        if (degs.size() != rank) fail_at(f->value.pos, "arity mismatch: one degree per generator");
      }
      try {
        env.modules.emplace(d.name, PresentedModule(R, rank, std::move(rels), std::move(degs)));
      } catch (const Error& e) {
        fail_at(d.pos, e.what());
      }
      env.module_ring[d.name] = d.header[0];
      break;
    }
    case DeclKind::MAP: {
      const auto& src = d.header[0];
      const auto& dst = d.header[1];
      const auto& body = *d.body;
      try {
        if (env.rings.count(src) && env.rings.count(dst)) {
          const auto& S = env.rings.at(src);
          const auto& T = env.rings.at(dst);
          std::vector<Poly> imgs;
          for (const auto& v : list_value(body, "images")) imgs.push_back(parse_poly_value(v, T));
          if (imgs.size() != S->nvars()) fail_at(body.pos, "arity mismatch: one image per source variable");
          env.ring_maps.emplace(d.name, make_ring_map(S, T, std::move(imgs)));
        } else {
          const auto& T = lookup(env.modules, dst, d.pos, "module");
          const auto& R = T.ring();
          std::optional<PresentedModule> S;
          auto imgs = vector_list(body, R, T.ngens(), "images");
          if (env.rings.count(src)) {
            if (env.rings.at(src) != R) fail_at(d.pos, "source ring differs from the target's ring");
            if (imgs.size() != 1) fail_at(body.pos, "arity mismatch: a map from the ring has one image");
            const auto deg = imgs[0].is_zero() ? 0 : max_degree(imgs[0], R->weights(), T.degrees());
            S = PresentedModule::free(R, 1, {deg});
          } else {
            S = lookup(env.modules, src, d.pos, "module");
            if (S->ring() != R) fail_at(d.pos, "source and target live over different rings");
            if (imgs.size() != S->ngens()) fail_at(body.pos, "arity mismatch: one image per source generator");
          }
          env.module_maps.emplace(d.name, ModuleMap(*S, T, std::move(imgs)));
        }
      } catch (const Error& e) {
        fail_at(d.pos, e.what());
      }
      break;
    }
    case DeclKind::CLOSURE: {
      try {
        env.closures.emplace(d.name, build_closure(d, env, opts));
      } catch (const Error& e) {
        fail_at(d.pos, e.what());
      }
      break;
    }
    case DeclKind::SUBMODULE: {
      const auto& M = lookup(env.modules, d.header[0], d.pos, "module");
      try {
        env.submodules.emplace(d.name, Submodule(M, vector_list(*d.body, M.ring(), M.ngens(), "generators")));
      } catch (const Error& e) {
        fail_at(d.pos, e.what());
      }
      env.submodule_module[d.name] = d.header[0];
      break;
    }
  }
  env.kinds[d.name] = d.kind;
}

// Names referenced by a command must exist among the declarations before it.
void validate_command(const Command& c, const Environment& env) {
  auto need = [&](const Value& v, std::initializer_list<DeclKind> kinds, const char* what) {
    const auto name = name_value(v, what);
    auto it = env.kinds.find(name);
    if (it == env.kinds.end()) fail_at(v.pos, std::string("undeclared ") + what + " '" + name + "'");
    if (std::find(kinds.begin(), kinds.end(), it->second) == kinds.end())
      fail_at(v.pos, "'" + name + "' is not a " + what);
  };
  auto key = [&](const char* k, std::initializer_list<DeclKind> kinds, const char* what, bool req) {
    const auto* a = c.arg(k);
    if (!a) {
      if (req) fail_at(c.pos, std::string("missing argument '") + k + "'");
      return;
    }
    need(a->value, kinds, what);
  };
  auto name_list = [&](const char* k, DeclKind kind, const char* what) {
    const auto* a = c.arg(k);
    if (!a) fail_at(c.pos, std::string("missing argument '") + k + "'");
    for (const auto& v : list_value(a->value, k)) need(v, {kind}, what);
  };
  auto allowed = [&](std::initializer_list<const char*> keys, std::size_t npos_min, std::size_t npos_max) {
    for (const auto& a : c.args)
      if (!a.key.empty() && std::none_of(keys.begin(), keys.end(), [&](const char* k) { return a.key == k; }))
        fail_at(a.pos, "unknown argument '" + a.key + "' for " + c.name);
    const auto n = c.positional().size();
    if (n < npos_min || n > npos_max)
      fail_at(c.pos, "arity mismatch: " + c.name + " takes " + std::to_string(npos_min) +
                         (npos_max != npos_min ? "-" + std::to_string(npos_max) : "") + " positional arguments");
  };
  const auto pos = c.positional();
  const auto& n = c.name;
  if (n == "gb") {
    allowed({"ring"}, 1, 1);
    if (pos[0]->is_list) {
      if (const auto* a = c.arg("ring")) need(a->value, {DeclKind::RING}, "ring");
      else if (env.last_ring.empty()) fail_at(c.pos, "no ring declared");
    } else {
      need(*pos[0], {DeclKind::SUBMODULE}, "submodule");
    }
  } else if (n == "member") {
    allowed({"closure"}, 2, 2);
    need(*pos[0], {DeclKind::SUBMODULE}, "submodule");
    key("closure", {DeclKind::CLOSURE}, "closure", false);
  } else if (n == "close") {
    allowed({"closure"}, 1, 1);
    need(*pos[0], {DeclKind::SUBMODULE}, "submodule");
    key("closure", {DeclKind::CLOSURE}, "closure", true);
  } else if (n == "phantom" || n == "algebra-axiom") {
    allowed({"closure", "method"}, 1, 1);
    need(*pos[0], {DeclKind::MODULE, DeclKind::MAP}, "module or map");
    key("closure", {DeclKind::CLOSURE}, "closure", n == "algebra-axiom" || !c.arg("method"));
  } else if (n == "sym2") {
    allowed({}, 1, 1);
    need(*pos[0], {DeclKind::MODULE, DeclKind::MAP}, "module or map");
  } else if (n == "axiom-check") {
    allowed({"closure", "axiom", "map", "sub", "ring", "sop", "module", "f", "v", "count", "rings"}, 0, 0);
    key("closure", {DeclKind::CLOSURE}, "closure", true);
    key("map", {DeclKind::MAP}, "map", false);
    key("sub", {DeclKind::SUBMODULE}, "submodule", false);
    key("ring", {DeclKind::RING}, "ring", false);
    key("module", {DeclKind::MODULE}, "module", false);
    if (!c.arg("axiom")) fail_at(c.pos, "missing argument 'axiom'");
    if (c.arg("rings")) name_list("rings", DeclKind::RING, "ring");
  } else if (n == "modify") {
    allowed({"sop", "strict"}, 1, 1);
    need(*pos[0], {DeclKind::MODULE, DeclKind::MAP}, "module or map");
    if (!c.arg("sop")) fail_at(c.pos, "missing argument 'sop'");
  } else if (n == "build") {
    allowed({"closure", "sop", "rounds", "max_generators"}, 1, 1);
    need(*pos[0], {DeclKind::RING}, "ring");
    key("closure", {DeclKind::CLOSURE}, "closure", true);
    if (!c.arg("sop")) fail_at(c.pos, "missing argument 'sop'");
  } else if (n == "test-ideal") {
    allowed({"closure", "pairs"}, 0, 0);
    key("closure", {DeclKind::CLOSURE}, "closure", true);
    name_list("pairs", DeclKind::SUBMODULE, "submodule");
  } else if (n == "chain") {
    allowed({"closure", "maps"}, 0, 0);
    key("closure", {DeclKind::CLOSURE}, "closure", true);
    name_list("maps", DeclKind::MAP, "map");
  }
}

std::string print_fields(const std::vector<Field>& fs) {
  std::string s;
  for (const auto& f : fs) s += " " + f.key + "=" + print_value(f.value) + ";";
  return s;
}

}  // namespace

Poly parse_poly_value(const Value& v, const RingPtr& ring) {
  if (v.is_list) fail_at(v.pos, "expected a polynomial");
  try {
    return ring->reduce(parse_polynomial(v.atom, ring->vars(), ring->field()));
  } catch (const PolyParseError& e) {
    fail_at(advance_pos(v.pos, v.atom, e.offset()), e.what());
  }
}

Vec parse_vector_value(const Value& v, const RingPtr& ring, std::uint32_t rank) {
  if (!v.is_list) {
    if (rank != 1) fail_at(v.pos, "arity mismatch: expected a vector of length " + std::to_string(rank));
    return parse_poly_value(v, ring);
  }
  if (v.items.size() != rank)
    fail_at(v.pos, "arity mismatch: expected " + std::to_string(rank) + " entries, got " + std::to_string(v.items.size()));
  std::vector<Poly> parts;
  for (const auto& item : v.items) parts.push_back(parse_poly_value(item, ring));
  return from_components(parts);
}

Environment resolve(const SessionScript& s, const RunOptions& opts, std::size_t count) {
  Environment env;
  const auto n = std::min(count, s.decls.size());
  for (std::size_t i = 0; i < n; ++i) add_decl(env, s.decls[i], opts);
  return env;
}

SessionScript parse_session(std::string_view text) {
  auto script = Parser(text).run();
  Environment env;
  std::size_t next = 0;
  RunOptions defaults;
  for (const auto& c : script.commands) {
    for (; next < c.decls_before; ++next) add_decl(env, script.decls[next], defaults);
    validate_command(c, env);
  }
  for (; next < script.decls.size(); ++next) add_decl(env, script.decls[next], defaults);
  return script;
}

std::string print_session(const SessionScript& s) {
  std::ostringstream out;
  std::size_t c = 0;
  auto flush_commands = [&](std::size_t upto) {
    for (; c < s.commands.size() && s.commands[c].decls_before <= upto; ++c) out << s.commands[c].echo() << "\n";
  };
  for (std::size_t i = 0; i < s.decls.size(); ++i) {
    flush_commands(i);
    const auto& d = s.decls[i];
    switch (d.kind) {
      case DeclKind::RING: out << "ring " << d.name << " {" << print_fields(d.fields) << " }\n"; break;
      case DeclKind::MODULE:
        out << "module " << d.name << " over " << d.header[0] << " {" << print_fields(d.fields) << " }\n";
        break;
      case DeclKind::MAP:
        out << "map " << d.name << " : " << d.header[0] << " -> " << d.header[1] << " { " << print_value(*d.body)
            << " }\n";
        break;
      case DeclKind::CLOSURE: out << "closure " << d.name << " {" << print_fields(d.fields) << " }\n"; break;
      case DeclKind::SUBMODULE:
        out << "submodule " << d.name << " of " << d.header[0] << " { " << print_value(*d.body) << " }\n";
        break;
    }
  }
  flush_commands(s.decls.size());
  return out.str();
}

}  // namespace clalg
