#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "clalg/report.hpp"

using namespace clalg;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SourcePos error_pos(const std::string& text, std::string* msg = nullptr) {
  try {
    parse_session(text);
  } catch (const SessionError& e) {
    if (msg) *msg = e.message();
    return e.pos();
  }
  FAIL("expected a SessionError");
  return {};
}

const char* kFermatPhantom = R"(ring R { p=7; vars=[x, y, z]; rels=[x^3+y^3+z^3]; }
module Mp over R { ngens=3; rels=[[z^2, -x, -y]]; degrees=[0, 1, 1]; }
closure t { kind=tight; }
check phantom Mp closure=t;
)";

}  // namespace

TEST_CASE("minimal script") {
  auto s = parse_session("ring P { p=7; vars=[x]; }\ncheck gb [x^2+x];\n");
  CHECK(s.decls.size() == 1);
  REQUIRE(s.commands.size() == 1);
  CHECK(s.commands[0].name == "gb");
  auto reps = run_session(s, {});
  CHECK(reps[0].data["verdict"] == "COMPUTED");
  CHECK(reps[0].data["basis"][0] == "x^2 + x");
}

TEST_CASE("positioned errors") {
  std::string msg;
  auto p = error_pos("ring P { p=6; vars=[x]; }\n", &msg);
  CHECK(msg.find("modulus not prime") != std::string::npos);
  CHECK(p.line == 1);
  CHECK(p.column == 12);

  p = error_pos("ring P { p=7; vars=[x]; }\nmodule M over Q { ngens=1; }\n", &msg);
  CHECK(msg.find("undeclared ring 'Q'") != std::string::npos);
  CHECK(p.line == 2);

  p = error_pos("ring P { p=7; vars=[x, y]; }\nmodule M over P { ngens=2; rels=[[x]]; }\n", &msg);
  CHECK(msg.find("arity mismatch") != std::string::npos);
  CHECK(p.line == 2);
  CHECK(p.column == 34);

  p = error_pos("ring P { p=7; vars=[x]; }\ncheck close N closure=c;\n", &msg);
  CHECK(msg.find("undeclared submodule 'N'") != std::string::npos);
  CHECK(p.column == 13);

  p = error_pos("ring P { p=7; vars=[x]; rels=[x^2 +* 1]; }\n", &msg);
  CHECK(p.line == 1);
  CHECK(p.column > 30);

  p = error_pos("ring P { p=7 vars=[x]; }\n", &msg);
  CHECK(p.line == 1);

  p = error_pos("ring P { p=7; vars=[x]; }\ncheck frobnicate;\n", &msg);
  CHECK(msg.find("unknown command") != std::string::npos);
  CHECK(p.line == 2);
  CHECK(p.column == 7);

  // use before declaration
  error_pos("ring P { p=7; vars=[x]; }\ncheck close N closure=c;\nmodule M over P { ngens=1; }\n"
            "submodule N of M { [x] }\nclosure c { kind=identity; }\n");
}

TEST_CASE("round trip") {
  const auto text = slurp(CLALG_SOURCE_DIR "/scripts/fermat.clalg");
  auto a = parse_session(text);
  auto printed = print_session(a);
  auto b = parse_session(printed);
  CHECK(a == b);
  CHECK(print_session(b) == printed);
}

TEST_CASE("empty command list") {
  auto s = parse_session("ring P { p=7; vars=[x]; }\n");
  auto reps = run_session(s, {});
  CHECK(reps.empty());
  CHECK(exit_code(reps) == 0);
  CHECK(emit_json(reps).find("\"reports\": []") != std::string::npos);
}

TEST_CASE("Fermat phantom end to end") {
  auto s = parse_session(kFermatPhantom);
  auto reps = run_session(s, {});
  REQUIRE(reps.size() == 1);
  const auto& d = reps[0].data;
  CHECK(d["verdict"] == "PHANTOM");
  CHECK(d["status"] == "BOUNDED");
  CHECK(d["witness"] == "x");
  CHECK(d["e_max"] == 4);
  CHECK(d["certificate_verified"] == true);
  CHECK(exit_code(reps) == 0);

  RunOptions o;
  o.emax = 2;
  CHECK(run_session(s, o)[0].data["e_max"] == 2);
}

TEST_CASE("budgets and exit codes") {
  auto s = parse_session(
      "ring R { p=7; vars=[x, y, z]; rels=[x^3+y^3+z^3]; }\n"
      "closure t { kind=tight; emax=2; }\n"
      "check build R closure=t sop=[x, y, z] rounds=2;\n");
  RunOptions o;
  o.budget = 30;
  auto reps = run_session(s, o);
  CHECK(exit_code(reps) == 3);
  CHECK(reps[0].data["verdict"] == "BUDGET_EXHAUSTED");
  CHECK(reps[0].data["stages"].size() >= 1);

  auto u = parse_session(
      "ring R { p=7; vars=[x, y, z]; rels=[x^3+y^3+z^3]; }\nmodule F over R { ngens=1; }\n"
      "submodule I of F { [x, y] }\nclosure t { kind=tight; emax=3; }\ncheck member I [z^2] closure=t;\n");
  o.budget = 3;
  auto ur = run_session(u, o);
  CHECK(ur[0].data["verdict"] == "UNKNOWN");
  CHECK(ur[0].data["status"] == "UNKNOWN");
  CHECK_FALSE(ur[0].data.contains("certificates"));
  CHECK(exit_code(ur) == 2);

  auto e = parse_session("ring P { p=7; vars=[x, y]; }\nmodule F over P { ngens=1; }\n"
                         "check modify F sop=[x];\n");
  auto er = run_session(e, {});
  CHECK(er[0].data["verdict"] == "ERROR");
  CHECK(er[0].data.contains("error"));
}

TEST_CASE("deterministic output") {
  const auto text = slurp(CLALG_SOURCE_DIR "/scripts/fermat.clalg");
  auto s = parse_session(text);
  RunOptions o;
  o.emax = 2;
  auto a = emit_json(run_session(s, o));
  auto b = emit_json(run_session(s, o));
  CHECK(a == b);
  o.parallel = true;
  CHECK(emit_json(run_session(s, o)) == a);
  CHECK(a.find("\"schema\": \"clalg-report/1\"") != std::string::npos);
}

TEST_CASE("other commands") {
  auto s = parse_session(R"(
ring P { p=7; vars=[x]; }
ring Q { p=7; vars=[x]; rels=[x]; }
map q : P -> Q { [x] }
module F over P { ngens=1; }
module S over P { ngens=1; rels=[[x]]; }
module T over P { ngens=1; rels=[[x^3]]; }
map f : F -> T { [[1]] }
submodule N of F { [x^2] }
submodule Nx of F { [x] }
closure id { kind=identity; }
closure c { kind=module; module=S; }
closure pb { kind=pullback; map=q; inner=id; }
closure g { kind=generated; members=[c, id]; }
check close N closure=c;
check close N closure=g;
check axiom-check closure=c axiom=functoriality map=f sub=N;
check axiom-check closure=pb axiom=semiresiduality sub=Nx;
check axiom-check closure=pb axiom=zero ring=P;
check axiom-check closure=id axiom=laws count=5;
check test-ideal closure=c pairs=[N, Nx];
check chain closure=c maps=[f];
check algebra-axiom S closure=id;
)");
  auto r = run_session(s, {});
  CHECK(r[0].data["verdict"] == "ENLARGED");
  CHECK(r[0].data["closure"][0] == "x");
  CHECK(r[1].data["verdict"] == "ENLARGED");
  CHECK(r[2].data["verdict"] == "PASS");
  CHECK(r[3].data["verdict"] == "PASS");
  CHECK(r[4].data["verdict"] == "FAIL");
  CHECK(r[4].data["certificate_verified"] == true);
  CHECK(r[5].data["verdict"] == "PASS");
  CHECK(r[5].data["instances_tested"] == 5);
  CHECK(r[6].data["verdict"] == "COMPUTED");
  CHECK(r[7].data["verdict"] == "ERROR");  // F -> T is not injective
  CHECK(r[8].data["verdict"] == "ERROR");  // R -> R/(x) is not injective
  CHECK(exit_code(r) == 2);
}
