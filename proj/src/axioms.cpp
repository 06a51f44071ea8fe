#include "clalg/axioms.hpp"

#include <functional>
#include <future>
#include <random>

#include "clalg/errors.hpp"

namespace clalg {

namespace {

AxiomReport report(std::string axiom, const Closure& cl, std::string instance) {
  AxiomReport r;
  r.axiom = std::move(axiom);
  r.instance = cl->describe() + " on " + instance;
  r.verdict = AxiomVerdict::PASS;
  return r;
}

void absorb(AxiomReport& r, const ClosureVerdict& v) {
  r.status = combine(r.status, v.status);
  r.e_max = std::max(r.e_max, v.e_max);
}

// UNKNOWN verdicts make a pass unknowable but do not hide a found failure.
void settle(AxiomReport& r) {
  if (r.verdict != AxiomVerdict::FAIL && r.status == Status::UNKNOWN) r.verdict = AxiomVerdict::UNKNOWN;
}

Submodule image_of(const ModuleMap& f, const Submodule& N) {
  std::vector<Vec> gens;
  for (const auto& g : N.generators()) gens.push_back(f.apply(g));
  return Submodule(f.target(), std::move(gens));
}

Poly random_poly(const RingPtr& R, std::int64_t deg, std::mt19937_64& rng) {
  if (deg < 0) return {};
  std::vector<Monomial> ms;
  std::function<void(std::size_t, std::int64_t, Monomial&)> rec = [&](std::size_t v, std::int64_t left, Monomial& cur) {
    if (v == R->nvars()) {
      if (left == 0) ms.push_back(cur);
      return;
    }
    for (std::int64_t k = 0; k * R->weights()[v] <= left; ++k) {
      cur.e[v] = static_cast<Exponent>(k);
      rec(v + 1, left - k * R->weights()[v], cur);
    }
    cur.e[v] = 0;
  };
  Monomial cur;
  rec(0, deg, cur);
  const auto p = R->characteristic();
  std::vector<Term> ts;
  for (const auto& m : ms)
    if (rng() % 2 == 0) ts.push_back(Term{m, 0, static_cast<std::uint32_t>(rng() % p)});
  normalize(ts, R->field());
  return R->reduce(Vec{ts});
}

Vec random_vec(const RingPtr& R, const std::vector<std::int64_t>& degs, std::int64_t target, std::mt19937_64& rng) {
  Vec v;
  for (std::uint32_t j = 0; j < degs.size(); ++j) {
    if (rng() % 3 == 0) continue;
    v = add(v, in_component(random_poly(R, target - degs[j], rng), j), R->field());
  }
  return v;
}

struct LawOutcome {
  AxiomVerdict verdict = AxiomVerdict::PASS;
  Status status = Status::EXACT;
  std::uint32_t e_max = 0;
  std::optional<Counterexample> counterexample;
  std::string error;
};

LawOutcome check_laws(const Closure& cl, const RandomInstance& inst) {
  LawOutcome out;
  auto fail = [&](const Vec& u, const Submodule& in, const Submodule& notin, std::string note) {
    out.verdict = AxiomVerdict::FAIL;
    out.counterexample = Counterexample{u, in, notin, std::move(note), inst.seed};
  };
  try {
    auto c = cl->close(inst.N);
    auto cc = cl->close(c.closure);
    auto cb = cl->close(inst.N_bigger);
    for (const auto* v : {&c, &cc, &cb}) {
      out.status = combine(out.status, v->status);
      out.e_max = std::max(out.e_max, v->e_max);
    }
    for (const auto& g : inst.N.generators())
      if (!c.closure.contains(g)) return fail(g, inst.N, c.closure, "extension"), out;
    for (const auto& g : cc.closure.generators())
      if (!c.closure.contains(g)) return fail(g, cc.closure, c.closure, "idempotence"), out;
    for (const auto& g : c.closure.generators())
      if (!cb.closure.contains(g)) return fail(g, c.closure, cb.closure, "order preservation"), out;
  } catch (const ResourceError& e) {
    out.verdict = AxiomVerdict::UNKNOWN;
    out.status = Status::UNKNOWN;
    out.error = e.what();
  }
  if (out.status == Status::UNKNOWN && out.verdict == AxiomVerdict::PASS) out.verdict = AxiomVerdict::UNKNOWN;
  return out;
}

}  // namespace

const char* to_string(AxiomVerdict v) {
  switch (v) {
    case AxiomVerdict::PASS: return "PASS";
    case AxiomVerdict::VACUOUS_PASS: return "VACUOUS_PASS";
    case AxiomVerdict::FAIL: return "FAIL";
    case AxiomVerdict::UNKNOWN: return "UNKNOWN";
  }
  return "?";
}

AxiomReport check_functoriality(const Closure& cl, const ModuleMap& f, const Submodule& N) {
  if (!N.ambient().same_presentation(f.source())) throw DimensionError("N is not a submodule of the source of f");
  auto r = report("functoriality", cl, "f: " + std::to_string(f.source().ngens()) + " -> " +
                                          std::to_string(f.target().ngens()) + " generators");
  r.instances_tested = 1;
  auto lhs = cl->close(N);
  auto rhs = cl->close(image_of(f, N));
  absorb(r, lhs);
  absorb(r, rhs);
  auto pushed = image_of(f, lhs.closure);
  for (const auto& g : pushed.generators())
    if (!rhs.closure.contains(g)) {
      r.verdict = AxiomVerdict::FAIL;
      r.counterexample = Counterexample{g, pushed, rhs.closure, "f(N^cl) not in f(N)^cl"};
      break;
    }
  settle(r);
  return r;
}

AxiomReport check_semiresiduality(const Closure& cl, const Submodule& N) {
  auto r = report("semi-residuality", cl, std::to_string(N.ambient().ngens()) + "-generator module");
  r.instances_tested = 1;
  auto c = cl->close(N);
  absorb(r, c);
  if (!(c.closure == N)) {
    r.verdict = AxiomVerdict::VACUOUS_PASS;
    r.notes.push_back("N is not closed");
  } else {
    auto Q = quotient(N);
    auto z = cl->close(Submodule::zero(Q));
    absorb(r, z);
    for (const auto& g : z.closure.generators())
      if (!Submodule::zero(Q).contains(g)) {
        r.verdict = AxiomVerdict::FAIL;
        r.counterexample = Counterexample{g, z.closure, Submodule::zero(Q), "0^cl in M/N is nonzero"};
        break;
      }
  }
  settle(r);
  return r;
}

AxiomReport check_faithfulness(const Closure& cl, const RingPtr& ring) {
  auto r = report("faithfulness", cl, ring->name());
  r.instances_tested = 1;
  std::vector<Poly> vars;
  for (std::size_t i = 0; i < ring->nvars(); ++i) vars.push_back(ring->var(i));
  auto m = ideal(ring, vars);
  auto c = cl->close(m);
  absorb(r, c);
  for (const auto& g : c.closure.generators())
    if (!m.contains(g)) {
      r.verdict = AxiomVerdict::FAIL;
      r.counterexample = Counterexample{g, c.closure, m, "m^cl is not m"};
      break;
    }
  settle(r);
  return r;
}

AxiomReport zero_closed(const Closure& cl, const RingPtr& ring) {
  auto r = report("zero closed", cl, ring->name());
  r.instances_tested = 1;
  auto zero = Submodule::zero(PresentedModule::free(ring, 1));
  auto c = cl->close(zero);
  absorb(r, c);
  if (!c.closure.is_zero()) {
    r.verdict = AxiomVerdict::FAIL;
    r.counterexample = Counterexample{c.closure.basis().elements().front(), c.closure, zero, "0^cl_R is nonzero"};
  }
  settle(r);
  return r;
}

AxiomReport check_gcc(const Closure& cl, const std::vector<Poly>& xs, const PresentedModule& M,
                      const std::vector<Poly>& f_values, const Vec& v) {
  const auto& R = M.ring();
  const auto& F = R->field();
  if (xs.empty()) throw PreconditionError("GCC needs x_1..x_{k+1}");
  if (!is_partial_sop(R, xs)) throw PreconditionError("not a partial system of parameters");
  if (f_values.size() != M.ngens()) throw PreconditionError("f needs one value per generator of M");
  const std::size_t k = xs.size() - 1;
  std::vector<Poly> J(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(k));

  auto RJ = quotient(ideal(R, J));
  std::vector<Vec> imgs;
  for (const auto& fv : f_values) imgs.push_back(fv);
  ModuleMap f(M, RJ, imgs);
  if (!is_surjective(f)) throw PreconditionError("f is not surjective");
  if (!Submodule::zero(RJ).contains(sub(f.apply(v), xs[k], F))) throw PreconditionError("f(v) is not x_{k+1} + J");

  auto r = report("generalized colon-capturing", cl, "k = " + std::to_string(k));
  r.instances_tested = 1;
  auto Rv = cl->close(Submodule(M, {v}));
  std::vector<Vec> jv;
  for (const auto& x : J) jv.push_back(mul(x, v, F));
  auto Jv = cl->close(Submodule(M, jv));
  absorb(r, Rv);
  absorb(r, Jv);
  auto lhs = intersect(Rv.closure, kernel(f));
  for (const auto& g : lhs.basis().elements())
    if (!Jv.closure.contains(g)) {
      r.verdict = AxiomVerdict::FAIL;
      r.counterexample = Counterexample{g, lhs, Jv.closure, "(Rv)^cl cap ker f not in (Jv)^cl"};
      break;
    }
  settle(r);
  return r;
}

RandomInstance random_instance(const RingPtr& ring, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto n = static_cast<std::uint32_t>(1 + rng() % 4);
  std::vector<std::int64_t> degs;
  for (std::uint32_t j = 0; j < n; ++j) degs.push_back(static_cast<std::int64_t>(rng() % 2));
  const auto nrels = rng() % 5;
  std::vector<Vec> rels;
  for (std::uint64_t c = 0; c < nrels; ++c) rels.push_back(random_vec(ring, degs, 1 + static_cast<std::int64_t>(rng() % 3), rng));
  PresentedModule M(ring, n, std::move(rels), degs);
  std::vector<Vec> gens;
  const auto ng = 1 + rng() % 3;
  for (std::uint64_t i = 0; i < ng; ++i) gens.push_back(random_vec(ring, degs, 1 + static_cast<std::int64_t>(rng() % 3), rng));
  const auto keep = rng() % (ng + 1);
  Submodule N(M, std::vector<Vec>(gens.begin(), gens.begin() + static_cast<std::ptrdiff_t>(keep)));
  return {seed, N, Submodule(M, gens)};
}

AxiomReport closure_law_suite(const Closure& cl, const std::vector<RingPtr>& rings, std::size_t count,
                              std::uint64_t seed, unsigned threads) {
  auto r = report("closure laws", cl, std::to_string(count) + " random instances per ring");
  std::vector<std::pair<RingPtr, std::uint64_t>> jobs;
  for (const auto& ring : rings)
    for (std::size_t i = 0; i < count; ++i) jobs.emplace_back(ring, seed + i);
  std::vector<LawOutcome> outcomes(jobs.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) outcomes[i] = check_laws(cl, random_instance(jobs[i].first, jobs[i].second));
  } else {
    const auto budget = spair_budget();
    std::vector<std::future<void>> fs;
    for (unsigned t = 0; t < threads; ++t)
      fs.push_back(std::async(std::launch::async, [&, t] {
        set_spair_budget(budget);
        for (std::size_t i = t; i < jobs.size(); i += threads)
          outcomes[i] = check_laws(cl, random_instance(jobs[i].first, jobs[i].second));
      }));
    for (auto& f : fs) f.get();
  }
  std::size_t unknown = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    auto& o = outcomes[i];
    ++r.instances_tested;
    r.status = combine(r.status, o.status);
    r.e_max = std::max(r.e_max, o.e_max);
    if (o.verdict == AxiomVerdict::UNKNOWN) ++unknown;
    if (o.verdict == AxiomVerdict::FAIL && !r.counterexample) {
      r.verdict = AxiomVerdict::FAIL;
      r.counterexample = o.counterexample;
      r.notes.push_back(jobs[i].first->name() + " seed " + std::to_string(jobs[i].second) + ": " +
                        o.counterexample->note);
    }
  }
  if (unknown) r.notes.push_back(std::to_string(unknown) + " instances undecided");
  if (unknown && r.verdict == AxiomVerdict::PASS) r.verdict = AxiomVerdict::UNKNOWN;
  return r;
}

std::vector<Vec> tight_containment_review(const Closure& cl, const Submodule& N, std::uint32_t e_max) {
  auto c = cl->close(N);
  auto t = tight_bounded({}, e_max);
  std::vector<Vec> flagged;
  for (const auto& g : c.closure.generators())
    if (t->test(N, g).verdict != Membership::IN) flagged.push_back(g);
  return flagged;
}

}  // namespace clalg
