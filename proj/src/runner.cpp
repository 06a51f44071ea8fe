#include <algorithm>
#include <chrono>
#include <future>

#include "clalg/axioms.hpp"
#include "clalg/errors.hpp"
#include "clalg/modifications.hpp"
#include "clalg/report.hpp"

namespace clalg {

using json = nlohmann::ordered_json;

namespace {

const char* status_name(Status s) {
  switch (s) {
    case Status::EXACT: return "EXACT";
    case Status::BOUNDED_CERTIFIED: return "BOUNDED";
    case Status::UNKNOWN: return "UNKNOWN";
  }
  return "?";
}

json vec_json(const Vec& v, const RingPtr& R, std::uint32_t rank) {
  if (rank == 1) return R->format(component(v, 0));
  json a = json::array();
  for (const auto& p : components(v, rank)) a.push_back(R->format(p));
  return a;
}

json vecs_json(const std::vector<Vec>& vs, const RingPtr& R, std::uint32_t rank) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(vec_json(v, R, rank));
  return a;
}

json polys_json(const std::vector<Poly>& ps, const RingPtr& R) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(R->format(p));
  return a;
}

json cert_json(const MembershipCertificate& c, const RingPtr& R) {
  json j;
  j["generator_coeffs"] = polys_json(c.generator_coeffs, R);
  j["relation_coeffs"] = polys_json(c.relation_coeffs, R);
  j["verified"] = c.verified;
  return j;
}

struct Ctx {
  const Command& cmd;
  Environment& env;
  const RunOptions& opts;
  json& out;
  Status status = Status::EXACT;
  json certificates = json::array();
  std::optional<bool> verified;

  const Value& pos(std::size_t i) const { return *cmd.positional()[i]; }
  std::string name(std::size_t i) const { return pos(i).atom; }
  const Value* arg(const char* k) const {
    const auto* a = cmd.arg(k);
    return a ? &a->value : nullptr;
  }
  Closure closure() const { return env.closures.at(arg("closure")->atom); }
  void certify(json c, bool ok) {
    certificates.push_back(std::move(c));
    verified = verified.value_or(true) && ok;
  }
  void verdict(const std::string& v) { out["verdict"] = v; }
  void merge(Status s) { status = combine(status, s); }

  std::uint64_t int_arg(const char* k, std::uint64_t def) const {
    const auto* v = arg(k);
    return v ? std::stoull(v->atom) : def;
  }
  std::vector<Poly> polys_arg(const char* k, const RingPtr& R) const {
    const auto* v = arg(k);
    if (!v) throw PreconditionError(std::string("missing argument '") + k + "'");
    std::vector<Poly> out;
    if (!v->is_list) throw PreconditionError(std::string("'") + k + "' must be a list");
    for (const auto& item : v->items) out.push_back(parse_poly_value(item, R));
    return out;
  }

  PhantomInstance instance(std::size_t i) const {
    const auto n = name(i);
    if (env.modules.count(n)) return instance_on(env.modules.at(n));
    return build_instance(env.module_maps.at(n));
  }
};

void put_instance(Ctx& c, const PhantomInstance& inst) {
  const auto& R = inst.ring;
  c.out["generators"] = inst.n();
  c.out["relation_columns"] = inst.m();
  c.out["normalization"] = inst.normalization;
  c.out["phi_row"] = vec_json(inst.phi_row, R, static_cast<std::uint32_t>(std::max<std::size_t>(inst.m(), 1)));
}

void put_element_verdict(Ctx& c, const ElementVerdict& ev, const RingPtr& R) {
  c.merge(ev.status);
  if (ev.witness) c.out["witness"] = R->format(*ev.witness);
  if (ev.e_max) c.out["e_max"] = ev.e_max;
  if (ev.verdict == Membership::IN)
    for (const auto& cert : ev.certificates) c.certify(cert_json(cert, R), ev.certificates_verified && cert.verified);
}

void cmd_gb(Ctx& c) {
  const auto& v = c.pos(0);
  if (v.is_list) {
    const auto& R = c.env.rings.at(c.arg("ring") ? c.arg("ring")->atom : c.env.last_ring);
    std::vector<Poly> ps;
    for (const auto& item : v.items) ps.push_back(parse_poly_value(item, R));
    auto I = ideal(R, ps);
    c.out["basis"] = vecs_json(I.basis().elements(), R, 1);
  } else {
    const auto& N = c.env.submodules.at(v.atom);
    c.out["basis"] = vecs_json(N.basis().elements(), N.ring(), N.ambient().ngens());
  }
  c.verdict("COMPUTED");
}

void cmd_member(Ctx& c) {
  const auto& N = c.env.submodules.at(c.name(0));
  const auto& R = N.ring();
  const auto u = parse_vector_value(c.pos(1), R, N.ambient().ngens());
  if (c.arg("closure")) {
    auto ev = c.closure()->test(N, u);
    c.verdict(to_string(ev.verdict));
    put_element_verdict(c, ev, R);
    return;
  }
  auto cert = N.membership(u);
  if (cert) {
    c.verdict("IN");
    c.certify(cert_json(*cert, R), N.verify(u, *cert));
  } else {
    c.verdict("OUT");
    c.out["normal_form"] = vec_json(N.normal_form(u), R, N.ambient().ngens());
  }
}

void cmd_close(Ctx& c) {
  const auto& N = c.env.submodules.at(c.name(0));
  auto v = c.closure()->close(N);
  c.merge(v.status);
  const auto grew = !(v.closure == N);
  c.verdict(grew ? "ENLARGED" : "CLOSED");
  c.out["closure"] = vecs_json(v.closure.trimmed().generators(), N.ring(), N.ambient().ngens());
  if (v.e_max) c.out["e_max"] = v.e_max;
  if (!v.diagnostics.empty()) c.out["diagnostics"] = v.diagnostics;
}

void cmd_phantom(Ctx& c) {
  auto inst = c.instance(0);
  const auto& R = inst.ring;
  put_instance(c, inst);
  const auto* method = c.arg("method");
  if (method && method->atom == "star") {
    auto s = star_phantom_check(inst, c.opts.emax);
    c.merge(s.status);
    c.verdict(s.phantom ? "PHANTOM" : "NOT_PHANTOM");
    c.out["e_max"] = s.e_max;
    json levels = json::array();
    for (const auto& J : s.levels) levels.push_back(vecs_json(J.basis().elements(), R, 1));
    c.out["levels"] = levels;
    if (s.witness) {
      c.out["witness"] = R->format(*s.witness);
      for (const auto& J : s.levels) {
        auto cert = J.membership(*s.witness);
        c.certify(cert ? cert_json(*cert, R) : json{{"verified", false}}, cert && J.verify(*s.witness, *cert));
      }
    }
    return;
  }
  if (method && method->atom != "lemma") throw PreconditionError("method must be lemma or star");
  auto v = phantom_check(c.closure(), inst);
  c.verdict(v.membership.verdict == Membership::UNKNOWN ? "UNKNOWN" : (v.phantom ? "PHANTOM" : "NOT_PHANTOM"));
  c.out["membership"] = to_string(v.membership.verdict);
  put_element_verdict(c, v.membership, R);
}

void cmd_sym2(Ctx& c) {
  auto inst = c.instance(0);
  auto s = sym2_extension(inst);
  auto q = symle2_quotient(inst);
  const auto& R = inst.ring;
  c.verdict(q.iso() ? "ISO" : "NOT_ISO");
  c.out["generators"] = s.sym2.ngens();
  c.out["relation_columns"] = s.sym2.relations().size();
  c.out["symmetry_columns"] = s.symmetry_columns;
  c.out["alpha2_injective"] = s.alpha2_injective;
  c.out["comparison_kernel_zero"] = q.kernel_zero;
  c.out["comparison_cokernel_zero"] = q.cokernel_zero;
  c.out["relations"] = vecs_json(s.sym2.relations(), R, s.sym2.ngens());
}

void put_axiom(Ctx& c, const AxiomReport& r, const RingPtr& R) {
  c.verdict(to_string(r.verdict));
  c.merge(r.status);
  c.out["axiom"] = r.axiom;
  c.out["instance"] = r.instance;
  c.out["scope"] = AxiomReport::scope;
  c.out["instances_tested"] = r.instances_tested;
  if (r.e_max) c.out["e_max"] = r.e_max;
  if (!r.notes.empty()) c.out["notes"] = r.notes;
  if (r.counterexample) {
    const auto& ce = *r.counterexample;
    const auto rank = ce.member_of.ambient().ngens();
    json j;
    j["element"] = vec_json(ce.element, ce.member_of.ring(), rank);
    j["member_of"] = vecs_json(ce.member_of.generators(), ce.member_of.ring(), rank);
    j["not_member_of"] = vecs_json(ce.not_member_of.generators(), ce.not_member_of.ring(), rank);
    j["note"] = ce.note;
    if (ce.seed) j["seed"] = *ce.seed;
    const bool ok = ce.recheck();
    j["verified"] = ok;
    c.certify(j, ok);
  }
  (void)R;
}

void cmd_axiom(Ctx& c) {
  const auto axiom = c.arg("axiom")->atom;
  auto cl = c.closure();
  auto ring_of = [&]() -> RingPtr {
    if (const auto* r = c.arg("ring")) return c.env.rings.at(r->atom);
    return c.env.rings.at(c.env.last_ring);
  };
  if (axiom == "functoriality") {
    if (!c.arg("map") || !c.arg("sub")) throw PreconditionError("functoriality needs map= and sub=");
    const auto& f = c.env.module_maps.at(c.arg("map")->atom);
    const auto& N = c.env.submodules.at(c.arg("sub")->atom);
    put_axiom(c, check_functoriality(cl, f, N), N.ring());
  } else if (axiom == "semiresiduality") {
    if (!c.arg("sub")) throw PreconditionError("semiresiduality needs sub=");
    const auto& N = c.env.submodules.at(c.arg("sub")->atom);
    put_axiom(c, check_semiresiduality(cl, N), N.ring());
  } else if (axiom == "faithfulness") {
    put_axiom(c, check_faithfulness(cl, ring_of()), ring_of());
  } else if (axiom == "zero") {
    put_axiom(c, zero_closed(cl, ring_of()), ring_of());
  } else if (axiom == "gcc") {
    if (!c.arg("module") || !c.arg("v")) throw PreconditionError("gcc needs module=, sop=, f= and v=");
    const auto& M = c.env.modules.at(c.arg("module")->atom);
    const auto& R = M.ring();
    auto v = parse_vector_value(*c.arg("v"), R, M.ngens());
    put_axiom(c, check_gcc(cl, c.polys_arg("sop", R), M, c.polys_arg("f", R), v), R);
  } else if (axiom == "laws") {
    std::vector<RingPtr> rings;
    if (const auto* rs = c.arg("rings"))
      for (const auto& r : rs->items) rings.push_back(c.env.rings.at(r.atom));
    else
      rings.push_back(ring_of());
    put_axiom(c, closure_law_suite(cl, rings, c.int_arg("count", 100), c.opts.seed), rings.front());
  } else {
    throw PreconditionError("unknown axiom '" + axiom + "'");
  }
}

void cmd_algebra_axiom(Ctx& c) {
  auto inst = c.instance(0);
  auto v = algebra_axiom_check(c.closure(), inst);
  c.merge(v.status);
  c.verdict(to_string(v.outcome));
  c.out["base"] = v.base.phantom ? "PHANTOM" : "NOT_PHANTOM";
  if (v.sym2) c.out["sym2"] = v.sym2->phantom ? "PHANTOM" : "NOT_PHANTOM";
  if (!v.notes.empty()) c.out["notes"] = v.notes;
  auto add = [&](const PhantomVerdict& p) {
    if (p.membership.verdict == Membership::IN)
      for (const auto& cert : p.membership.certificates)
        c.certify(cert_json(cert, inst.ring), p.membership.certificates_verified && cert.verified);
  };
  add(v.base);
  if (v.sym2) add(*v.sym2);
}

void cmd_modify(Ctx& c) {
  auto inst = c.instance(0);
  const auto& R = inst.ring;
  const bool strict = c.arg("strict") && c.arg("strict")->atom == "true";
  auto rel = find_bad_relation(inst.M, c.polys_arg("sop", R), strict);
  if (!rel) {
    c.verdict("NONE");
    return;
  }
  const auto n = inst.n();
  c.verdict("MODIFIED");
  c.out["sop"] = polys_json(rel->sop, R);
  c.out["u"] = vec_json(rel->u, R, n);
  c.out["m"] = vecs_json(rel->m, R, n);
  auto mod = partial_algebra_modification(inst, *rel);
  const auto& Mp = mod.instance.M;
  c.out["module"] = {{"generators", Mp.ngens()},
                     {"degrees", Mp.degrees()},
                     {"relations", vecs_json(Mp.relations(), R, Mp.ngens())}};
  json cert;
  cert["equation_and_nonmembership"] = rel->verify();
  cert["map_injective"] = is_injective(mod.from_previous);
  c.certify(cert, cert["equation_and_nonmembership"].get<bool>() && cert["map_injective"].get<bool>());
}

void cmd_build(Ctx& c) {
  const auto& R = c.env.rings.at(c.name(0));
  BuildBudget budget{c.opts.budget, static_cast<std::uint32_t>(c.int_arg("max_generators", 0))};
  auto t = bcm_build(R, c.closure(), c.polys_arg("sop", R), static_cast<std::uint32_t>(c.int_arg("rounds", 1)), budget);
  c.verdict(to_string(t.status));
  json stages = json::array();
  for (const auto& st : t.stages) {
    json j;
    j["kind"] = to_string(st.kind);
    j["generators"] = st.instance.n();
    j["relation_columns"] = st.instance.m();
    if (st.kind == StageKind::MODIFY) j["bad_relation"] = st.relation ? vec_json(st.relation->u, R, st.relation->M.ngens()) : json("NONE");
    j["unit_outside_mM"] = st.unit_outside_mM;
    if (st.phantom) {
      j["phantom"] = st.phantom->phantom ? "PHANTOM" : "NOT_PHANTOM";
      j["status"] = status_name(st.phantom->status);
      c.merge(st.phantom->status);
    }
    stages.push_back(j);
  }
  c.out["stages"] = stages;
  if (!t.notes.empty()) c.out["notes"] = t.notes;
  c.out["evidence_only"] = true;
  if (t.status == BuildStatus::BUDGET_EXHAUSTED) throw ResourceError("build budget exhausted");
}

void cmd_test_ideal(Ctx& c) {
  std::vector<Submodule> pairs;
  for (const auto& v : c.arg("pairs")->items) pairs.push_back(c.env.submodules.at(v.atom));
  auto t = test_ideal_approx(c.closure(), pairs);
  c.merge(t.status);
  c.verdict("COMPUTED");
  c.out["ideal"] = vecs_json(t.ideal.trimmed().generators(), pairs.front().ring(), 1);
  if (!t.warnings.empty()) c.out["warnings"] = t.warnings;
}

void cmd_chain(Ctx& c) {
  std::vector<ModuleMap> maps;
  for (const auto& v : c.arg("maps")->items) maps.push_back(c.env.module_maps.at(v.atom));
  auto v = chain_phantom_check(maps, c.closure());
  c.merge(v.status);
  c.verdict(v.phantom ? "PHANTOM" : "NOT_PHANTOM");
  json st = json::array();
  for (const auto& s : v.stages) st.push_back(s.phantom ? "PHANTOM" : "NOT_PHANTOM");
  c.out["stages"] = st;
  if (v.first_failure) c.out["first_failure"] = *v.first_failure;
}

}  // namespace

Report run_command(const SessionScript& s, std::size_t index, const RunOptions& opts) {
  const auto& cmd = s.commands[index];
  Report rep;
  auto& out = rep.data;
  out["index"] = index + 1;
  out["command"] = cmd.echo();
  out["verdict"] = nullptr;
  out["status"] = nullptr;
  const auto t0 = std::chrono::steady_clock::now();
  struct BudgetScope {
    std::uint64_t saved = spair_budget();
    ~BudgetScope() { set_spair_budget(saved); }
  } scope;
  if (opts.budget) set_spair_budget(opts.budget);
  auto env = resolve(s, opts, cmd.decls_before);
  const auto before = gb_counters();
  Ctx c{cmd, env, opts, out};
  try {
    const auto& n = cmd.name;
    if (n == "gb") cmd_gb(c);
    else if (n == "member") cmd_member(c);
    else if (n == "close") cmd_close(c);
    else if (n == "phantom") cmd_phantom(c);
    else if (n == "sym2") cmd_sym2(c);
    else if (n == "axiom-check") cmd_axiom(c);
    else if (n == "algebra-axiom") cmd_algebra_axiom(c);
    else if (n == "modify") cmd_modify(c);
    else if (n == "build") cmd_build(c);
    else if (n == "test-ideal") cmd_test_ideal(c);
    else if (n == "chain") cmd_chain(c);
  } catch (const ResourceError& e) {
    rep.resource_abort = true;
    c.status = Status::UNKNOWN;
    if (out["verdict"].is_null()) out["verdict"] = "ABORTED";
    out["error"] = e.what();
  } catch (const std::exception& e) {
    c.status = Status::UNKNOWN;
    out["verdict"] = "ERROR";
    out["error"] = e.what();
  }
  if (out["verdict"] == "UNKNOWN") c.status = Status::UNKNOWN;
  out["status"] = status_name(c.status);
  rep.unknown = c.status == Status::UNKNOWN;
  if (!rep.unknown && !c.certificates.empty()) {
    out["certificates"] = c.certificates;
    out["certificate_verified"] = *c.verified;
  }
  const auto& after = gb_counters();
  out["counters"] = {{"gb_runs", after.runs - before.runs}, {"spairs", after.spairs - before.spairs}};
  if (opts.timing)
    out["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::vector<Report> run_session(const SessionScript& s, const RunOptions& opts) {
  std::vector<Report> out(s.commands.size());
  if (!opts.parallel) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = run_command(s, i, opts);
    return out;
  }
  std::vector<std::future<Report>> fs;
  for (std::size_t i = 0; i < out.size(); ++i)
    fs.push_back(std::async(std::launch::async, [&s, &opts, i] { return run_command(s, i, opts); }));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fs[i].get();
  return out;
}

int exit_code(const std::vector<Report>& reports) {
  bool unknown = false;
  for (const auto& r : reports) {
    if (r.resource_abort) return 3;
    unknown = unknown || r.unknown;
  }
  return unknown ? 2 : 0;
}

std::string emit_json(const std::vector<Report>& reports) {
  json doc;
  doc["schema"] = kReportSchema;
  doc["reports"] = json::array();
  for (const auto& r : reports) doc["reports"].push_back(r.data);
  doc["exit_code"] = exit_code(reports);
  return doc.dump(2) + "\n";
}

namespace {

void text_value(std::string& out, const json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(std::max(indent, 0)), ' ');
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) {
      if (x.is_object() || (x.is_array() && !x.empty() && (x.front().is_object() || x.front().is_array()))) {
        out += pad + k + ":\n";
        text_value(out, x, indent + 2);
      } else {
        out += pad + k + ": ";
        text_value(out, x, -1);
        out += "\n";
      }
    }
  } else if (v.is_array()) {
    if (indent < 0) {
      out += "[";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        text_value(out, v[i], -1);
      }
      out += "]";
      return;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_object()) {
        out += pad + "- [" + std::to_string(i + 1) + "]\n";
        text_value(out, v[i], indent + 2);
      } else {
        out += pad + "- ";
        text_value(out, v[i], -1);
        out += "\n";
      }
    }
  } else if (v.is_string()) {
    out += v.get<std::string>();
  } else {
    out += v.dump();
  }
}

}  // namespace

std::string emit_text(const std::vector<Report>& reports) {
  std::string out = std::string("# ") + kReportSchema + "\n";
  for (const auto& r : reports) {
    out += "\n";
    text_value(out, r.data, 0);
  }
  out += "\nexit_code: " + std::to_string(exit_code(reports)) + "\n";
  return out;
}

}  // namespace clalg
