#include "clalg/modifications.hpp"

#include "clalg/errors.hpp"

namespace clalg {

namespace {

Submodule annihilator(const PresentedModule& M) {
  return module_colon(Submodule::zero(M), Submodule::whole(M));
}

Submodule parameter_multiple(const PresentedModule& M, const std::vector<Poly>& xs) {
  std::vector<Vec> gens;
  for (const auto& x : xs)
    for (std::uint32_t j = 0; j < M.ngens(); ++j) gens.push_back(mul(x, unit_vector(j), M.ring()->field()));
  return Submodule(M, std::move(gens));
}

std::int64_t vdeg(const Vec& v, const PresentedModule& M) {
  return max_degree(v, M.ring()->weights(), M.degrees());
}

}  // namespace

bool BadRelation::verify() const {
  const auto& F = M.ring()->field();
  const auto k = this->k();
  Vec lhs = mul(sop[k], u, F);
  for (std::size_t i = 0; i < k; ++i) lhs = sub(lhs, mul(sop[i], m[i], F), F);
  if (!Submodule::zero(M).contains(lhs)) return false;
  std::vector<Poly> prefix(sop.begin(), sop.begin() + static_cast<std::ptrdiff_t>(k));
  return !parameter_multiple(M, prefix).contains(u);
}

bool is_partial_sop_on(const PresentedModule& M, const std::vector<Poly>& xs) {
  const auto& R = M.ring();
  for (const auto& e : xs)
    if (R->is_zero(e) || !is_homogeneous(e, R->weights(), {}) || constant_coefficient(e) != 0) return false;
  std::vector<Poly> ann;
  const auto annM = annihilator(M);
  for (const auto& g : annM.generators()) ann.push_back(component(g, 0));
  const auto d = krull_dim(R, ann);
  auto with = ann;
  with.insert(with.end(), xs.begin(), xs.end());
  const auto dq = krull_dim(R, with);
  return d >= dq && d - dq == xs.size();
}

std::optional<BadRelation> find_bad_relation(const PresentedModule& M, const std::vector<Poly>& xs, bool strict) {
  if (xs.size() < 2) throw PreconditionError("a bad relation needs at least two parameters");
  std::vector<Poly> checked(xs.begin(), strict ? xs.end() : xs.end() - 1);
  if (!is_partial_sop_on(M, checked)) throw PreconditionError("not a partial system of parameters on the module");
  const auto& F = M.ring()->field();
  for (std::size_t k = 1; k < xs.size(); ++k) {
    std::vector<Poly> prefix(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(k));
    auto I = parameter_multiple(M, prefix);
    auto C = colon(I, xs[k]);
    const auto& gb = C.basis();
    for (const auto& g : gb.elements()) {
      auto nf = I.normal_form(g);
      if (nf.is_zero()) continue;
      auto cert = I.membership(mul(xs[k], g, F));
      if (!cert) throw std::logic_error("colon element fails its defining membership");
      BadRelation rel{M, std::vector<Poly>(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(k) + 1), g, {}, nf};
      for (std::size_t i = 0; i < k; ++i) {
        Vec mi;
        for (std::uint32_t j = 0; j < M.ngens(); ++j)
          mi = add(mi, mul(component(cert->generator_coeffs[i * M.ngens() + j], 0), unit_vector(j), F), F);
        rel.m.push_back(mi);
      }
      return rel;
    }
  }
  return std::nullopt;
}

Modification partial_algebra_modification(const PhantomInstance& inst, const BadRelation& rel) {
  const auto& M = inst.M;
  if (!rel.M.same_presentation(M)) throw PreconditionError("bad relation lives on a different module");
  const auto k = static_cast<std::uint32_t>(rel.k());
  if (k < 1) throw PreconditionError("a modification needs k >= 1");
  const auto& R = inst.ring;
  const auto& F = R->field();
  const std::uint32_t n = M.ngens();

  const auto du = vdeg(rel.u, M);
  std::vector<std::int64_t> degs = M.degrees();
  for (std::uint32_t i = 0; i < k; ++i) {
    const auto shift = du - R->degree(rel.sop[i]) - M.degrees()[0];
    for (std::uint32_t j = 0; j < n; ++j) degs.push_back(M.degrees()[j] + shift);
  }

  std::vector<Vec> rels;
  for (std::uint32_t a = 0; a <= k; ++a)
    for (const auto& c : inst.nu1) rels.push_back(shift_components(c, static_cast<std::int64_t>(a) * n));
  Vec f = rel.u;
  for (std::uint32_t i = 0; i < k; ++i) f = sub(f, in_component(rel.sop[i], (i + 1) * n), F);
  rels.push_back(f);

  PresentedModule Mp(R, n * (k + 1), std::move(rels), std::move(degs));
  std::vector<Vec> imgs;
  for (std::uint32_t j = 0; j < n; ++j) imgs.push_back(unit_vector(j));
  ModuleMap beta(M, Mp, std::move(imgs));
  return {instance_on(Mp, false), beta};
}

SymStep sym_step(const PhantomInstance& inst, std::uint32_t max_generators) {
  const auto n = inst.n();
  if (max_generators && static_cast<std::uint64_t>(n) * n > max_generators)
    throw ResourceError("Sym^2 would have " + std::to_string(static_cast<std::uint64_t>(n) * n) + " generators");
  auto s2 = sym2_extension(inst);
  std::vector<Vec> imgs;
  for (std::uint32_t j = 0; j < n; ++j) imgs.push_back(unit_vector(j * n));
  ModuleMap to_sym(inst.M, s2.sym2, std::move(imgs));
  return {instance_on(s2.sym2, false), to_sym};
}

const char* to_string(StageKind k) {
  switch (k) {
    case StageKind::INITIAL: return "INITIAL";
    case StageKind::MODIFY: return "MODIFY";
    case StageKind::SYM2: return "SYM2";
  }
  return "?";
}

const char* to_string(BuildStatus s) {
  switch (s) {
    case BuildStatus::COMPLETE: return "COMPLETE";
    case BuildStatus::FAILURE: return "FAILURE";
    case BuildStatus::BUDGET_EXHAUSTED: return "BUDGET_EXHAUSTED";
  }
  return "?";
}

BuildTrace bcm_build(const RingPtr& ring, const Closure& cl, const std::vector<Poly>& sop, std::uint32_t rounds,
                     BuildBudget budget) {
  if (rounds < 1) throw PreconditionError("rounds must be at least 1");
  BuildTrace trace;
  const auto start = gb_counters().spairs;
  auto used = [&] { return gb_counters().spairs - start; };

  auto finish_stage = [&](BuildStage& st) {
    st.unit_outside_mM = !in_irrelevant_multiple(st.instance.M, unit_vector(0));
    st.phantom = phantom_check(cl, st.instance);
    trace.stages.push_back(std::move(st));
    if (!trace.stages.back().unit_outside_mM) {
      trace.status = BuildStatus::FAILURE;
      trace.notes.push_back("alpha(1) lies in mM at stage " + std::to_string(trace.stages.size() - 1));
      return false;
    }
    if (budget.spairs && used() > budget.spairs) {
      trace.status = BuildStatus::BUDGET_EXHAUSTED;
      trace.notes.push_back("S-pair budget exhausted after stage " + std::to_string(trace.stages.size() - 1));
      return false;
    }
    return true;
  };

  try {
    BuildStage init{StageKind::INITIAL, instance_on(PresentedModule::free(ring, 1))};
    bool go = finish_stage(init);
    for (std::uint32_t r = 0; go && r < rounds; ++r) {
      const auto& cur = trace.stages.back().instance;
      BuildStage mod{StageKind::MODIFY, cur};
      mod.relation = find_bad_relation(cur.M, sop);
      if (mod.relation) {
        if (budget.max_generators && cur.n() * (mod.relation->k() + 1) > budget.max_generators)
          throw ResourceError("modification would exceed the generator cap");
        auto m = partial_algebra_modification(cur, *mod.relation);
        mod.instance = m.instance;
        mod.from_previous = m.from_previous;
      } else {
        mod.from_previous = ModuleMap::identity(cur.M);
        trace.notes.push_back("round " + std::to_string(r + 1) + ": no bad relation");
      }
      if (!finish_stage(mod)) break;
      if (r + 1 == rounds) break;

      auto s = sym_step(trace.stages.back().instance, budget.max_generators);
      BuildStage sym{StageKind::SYM2, s.instance};
      sym.from_previous = s.from_previous;
      if (!finish_stage(sym)) break;
    }
  } catch (const ResourceError& e) {
    trace.status = BuildStatus::BUDGET_EXHAUSTED;
    trace.notes.push_back(e.what());
  }
  trace.spairs_used = used();
  return trace;
}

ChainVerdict chain_phantom_check(const std::vector<ModuleMap>& maps, const Closure& cl) {
  if (maps.empty()) throw PreconditionError("empty chain");
  ChainVerdict out;
  std::optional<ModuleMap> alpha;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (i && !maps[i].source().same_presentation(maps[i - 1].target()))
      throw PreconditionError("chain maps do not compose at index " + std::to_string(i));
    alpha = i ? compose(maps[i], *alpha) : maps[0];
    auto v = phantom_check(cl, build_instance(*alpha));
    out.status = combine(out.status, v.status);
    if (!v.phantom && out.phantom) {
      out.phantom = false;
      out.first_failure = i + 1;
    }
    out.stages.push_back(std::move(v));
  }
  return out;
}

}  // namespace clalg
