#include "clalg/phantom.hpp"

#include <algorithm>

#include "clalg/errors.hpp"

namespace clalg {

namespace {

std::int64_t vec_degree(const Vec& v, const PresentedModule& M) {
  if (v.is_zero()) return 0;
  return max_degree(v, M.ring()->weights(), M.degrees());
}

Vec drop_top_row(const Vec& col) {
  Vec out;
  for (const auto& t : col.terms)
    if (t.comp > 0) out.terms.push_back(Term{t.mono, t.comp - 1, t.coef});
  return out;
}

PhantomInstance finish_instance(PresentedModule M, std::string normalization) {
  const auto& R = M.ring();
  auto source = PresentedModule::free(R, 1, {M.ngens() ? M.degrees()[0] : 0});
  ModuleMap alpha(source, M, {unit_vector(0)}, false);
  PhantomInstance inst{R, M, alpha};
  inst.normalization = std::move(normalization);
  inst.nu1 = M.relations();
  for (std::size_t c = 0; c < inst.nu1.size(); ++c) {
    inst.nu.push_back(drop_top_row(inst.nu1[c]));
    auto b = component(inst.nu1[c], 0);
    inst.phi_row = add(inst.phi_row, in_component(b, static_cast<std::uint32_t>(c)), R->field());
  }
  return inst;
}

}  // namespace

Submodule PhantomInstance::row_span() const {
  // Column c of nu1 has degree D_c; giving component c of R^m the degree -D_c
  // makes every row homogeneous.
  std::vector<std::int64_t> degs;
  for (const auto& col : nu1) degs.push_back(-vec_degree(col, M));
  auto Rm = PresentedModule::free(ring, static_cast<std::uint32_t>(nu1.size()), degs);
  std::vector<Vec> rows(M.ngens());
  for (std::size_t c = 0; c < nu1.size(); ++c)
    for (const auto& t : nu1[c].terms) rows[t.comp].terms.push_back(Term{t.mono, static_cast<std::uint32_t>(c), t.coef});
  std::vector<Vec> gens;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    normalize(rows[i].terms, ring->field());
    gens.push_back(rows[i]);
  }
  return Submodule(Rm, std::move(gens));
}

PhantomInstance build_instance(const ModuleMap& alpha, bool check_injective) {
  const auto& src = alpha.source();
  if (src.ngens() != 1 || !src.relations().empty()) throw PreconditionError("alpha must start at the free module R");
  if (check_injective && !is_injective(alpha)) throw PreconditionError("alpha is not injective");
  const auto& M = alpha.target();
  const auto& R = M.ring();
  const Vec a = alpha.images()[0];
  if (a == unit_vector(0)) return finish_instance(M, "direct");

  if (a.terms.size() == 1 && a.terms[0].mono.is_one() && a.terms[0].coef == 1) {
    const auto k = a.terms[0].comp;
    std::vector<std::uint32_t> where(M.ngens());
    for (std::uint32_t j = 0; j < M.ngens(); ++j) where[j] = j == k ? 0 : (j < k ? j + 1 : j);
    std::vector<Vec> rels;
    for (const auto& r : M.relations()) {
      Vec v = r;
      for (auto& t : v.terms) t.comp = where[t.comp];
      normalize(v.terms, R->field());
      rels.push_back(v);
    }
    std::vector<std::int64_t> degs(M.ngens());
    for (std::uint32_t j = 0; j < M.ngens(); ++j) degs[where[j]] = M.degrees()[j];
    return finish_instance(PresentedModule(R, M.ngens(), std::move(rels), std::move(degs)), "reordered");
  }

  std::vector<Vec> rels{sub(unit_vector(0), shift_components(a, 1), R->field())};
  for (const auto& r : M.relations()) rels.push_back(shift_components(r, 1));
  std::vector<std::int64_t> degs{vec_degree(a, M)};
  degs.insert(degs.end(), M.degrees().begin(), M.degrees().end());
  return finish_instance(PresentedModule(R, M.ngens() + 1, std::move(rels), std::move(degs)), "padded");
}

PhantomInstance instance_on(const PresentedModule& M, bool check_injective) {
  if (M.ngens() == 0) throw PreconditionError("module has no generators");
  auto source = PresentedModule::free(M.ring(), 1, {M.degrees()[0]});
  return build_instance(ModuleMap(source, M, {unit_vector(0)}), check_injective);
}

PhantomInstance base_change_instance(const PhantomInstance& inst, const RingMap& psi) {
  return finish_instance(base_change(inst.M, psi), "base_change");
}

PhantomInstance frobenius_instance(const PhantomInstance& inst, std::uint32_t e) {
  return finish_instance(frobenius_module(inst.M, e), "frobenius");
}

PhantomInstance padded_presentation(const PhantomInstance& inst) {
  const auto& M = inst.M;
  const auto& R = inst.ring;
  const std::uint32_t n = M.ngens();
  const std::uint32_t copy_of = n >= 2 ? 1 : 0;
  std::vector<Vec> rels = M.relations();
  rels.push_back(sub(unit_vector(n), unit_vector(copy_of), R->field()));
  if (!M.relations().empty()) rels.push_back(M.relations().front());
  auto degs = M.degrees();
  degs.push_back(M.degrees()[copy_of]);
  return finish_instance(PresentedModule(R, n + 1, std::move(rels), std::move(degs)), "padded_presentation");
}

PhantomVerdict phantom_check(const Closure& cl, const PhantomInstance& inst, bool record_zero_closure) {
  PhantomVerdict out;
  out.membership = cl->test(inst.row_span(), inst.phi_row);
  out.status = out.membership.status;
  out.phantom = out.membership.verdict == Membership::IN;
  if (record_zero_closure) out.zero_closure = cl->close(Submodule::zero(PresentedModule::free(inst.ring, 1))).closure;
  return out;
}

Submodule split_multiplier_ideal(const PhantomInstance& inst) { return evaluation_ideal(inst.M, unit_vector(0)); }

StarPhantomVerdict star_phantom_check(const PhantomInstance& inst, std::uint32_t e_max) {
  if (!inst.ring->is_domain()) throw PreconditionError("the Frobenius criterion requires a domain");
  StarPhantomVerdict out;
  out.e_max = e_max;
  for (std::uint32_t e = 0; e <= e_max; ++e) {
    out.levels.push_back(split_multiplier_ideal(frobenius_instance(inst, e)));
    out.intersection = out.intersection ? intersect(*out.intersection, out.levels.back()) : out.levels.back();
  }
  const auto& basis = out.intersection->basis();
  if (basis.size() > 0) {
    out.phantom = true;
    out.witness = basis.elements().front();
  }
  return out;
}

std::size_t Sym2Instance::symmetry_index(std::size_t n, std::size_t i, std::size_t j) {
  std::size_t idx = 0;
  for (std::size_t l = 0; l < i; ++l) idx += n - 1 - l;
  return idx + (j - i - 1);
}

std::vector<Vec> Sym2Instance::q_prime_columns() const {
  std::vector<Vec> out;
  for (const auto& c : sym2.relations()) out.push_back(drop_top_row(c));
  return out;
}

Sym2Instance sym2_extension(const PhantomInstance& inst) {
  const auto& R = inst.ring;
  const auto& F = R->field();
  const std::uint32_t n = inst.n();
  const auto& cols = inst.nu1;
  std::vector<Vec> rels;
  for (const auto& b : cols)
    for (std::uint32_t i = 0; i < n; ++i) {
      Vec v;
      for (const auto& t : b.terms) v.terms.push_back(Term{t.mono, t.comp * n + i, t.coef});
      normalize(v.terms, F);
      rels.push_back(v);
    }
  std::vector<Vec> symmetry;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) symmetry.push_back(sub(unit_vector(i * n + j), unit_vector(j * n + i), F));
  rels.insert(rels.end(), symmetry.begin(), symmetry.end());

  std::vector<std::int64_t> degs;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) degs.push_back(inst.M.degrees()[i] + inst.M.degrees()[j]);
  PresentedModule S2(R, n * n, std::move(rels), degs);

  std::vector<Vec> variant;
  for (const auto& b : cols)
    for (const auto& c : cols) variant.push_back(tensor_elements(b, c, n, F));
  variant.insert(variant.end(), symmetry.begin(), symmetry.end());

  auto source = PresentedModule::free(R, 1, {degs[0]});
  ModuleMap alpha2(source, S2, {unit_vector(0)}, false);
  Sym2Instance out{inst, S2, alpha2, symmetry.size(), std::move(variant)};
  out.alpha2_injective = is_injective(alpha2);
  return out;
}

SymLe2Quotient symle2_quotient(const PhantomInstance& inst) {
  const auto& R = inst.ring;
  const auto& F = R->field();
  const std::uint32_t n = inst.n();
  auto s2 = sym2_extension(inst);
  const std::uint32_t base = 1 + n;
  auto e = [&](std::uint32_t i) { return unit_vector(1 + i); };
  auto ee = [&](std::uint32_t i, std::uint32_t j) { return unit_vector(base + i * n + j); };

  std::vector<Vec> rels;
  rels.push_back(sub(unit_vector(0), e(0), F));
  for (std::uint32_t i = 0; i < n; ++i) rels.push_back(sub(e(i), ee(i, 0), F));
  for (const auto& b : inst.nu1) rels.push_back(shift_components(b, 1));
  for (const auto& r : s2.sym2.relations()) rels.push_back(shift_components(r, base));

  std::vector<std::int64_t> degs{0};
  for (std::uint32_t i = 0; i < n; ++i) degs.push_back(inst.M.degrees()[i]);
  degs.insert(degs.end(), s2.sym2.degrees().begin(), s2.sym2.degrees().end());
  PresentedModule Q(R, base + n * n, std::move(rels), std::move(degs));

  std::vector<Vec> imgs{unit_vector(0)};
  for (std::uint32_t i = 0; i < n; ++i) imgs.push_back(unit_vector(i * n));
  for (std::uint32_t k = 0; k < n * n; ++k) imgs.push_back(unit_vector(k));
  ModuleMap cmp(Q, s2.sym2, std::move(imgs), true);
  SymLe2Quotient out{Q, cmp};
  out.kernel_zero = is_injective(cmp);
  out.cokernel_zero = is_surjective(cmp);
  return out;
}

const char* to_string(AxiomOutcome a) {
  switch (a) {
    case AxiomOutcome::VACUOUS: return "VACUOUS";
    case AxiomOutcome::HOLDS: return "HOLDS";
    case AxiomOutcome::FAILS: return "FAILS";
    case AxiomOutcome::UNKNOWN: return "UNKNOWN";
  }
  return "?";
}

AlgebraAxiomVerdict algebra_axiom_check(const Closure& cl, const PhantomInstance& inst) {
  AlgebraAxiomVerdict out;
  out.base = phantom_check(cl, inst);
  out.status = out.base.status;
  if (out.base.membership.verdict == Membership::UNKNOWN) {
    out.outcome = AxiomOutcome::UNKNOWN;
    return out;
  }
  if (!out.base.phantom) {
    out.outcome = AxiomOutcome::VACUOUS;
    return out;
  }
  auto s2 = sym2_extension(inst);
  if (!s2.alpha2_injective) {
    out.outcome = AxiomOutcome::FAILS;
    out.notes.push_back("R -> Sym^2(M) is not injective");
    return out;
  }
  out.sym2 = phantom_check(cl, instance_on(s2.sym2, false));
  out.status = combine(out.status, out.sym2->status);
  switch (out.sym2->membership.verdict) {
    case Membership::IN: out.outcome = AxiomOutcome::HOLDS; break;
    case Membership::UNKNOWN: out.outcome = AxiomOutcome::UNKNOWN; break;
    default: out.outcome = AxiomOutcome::FAILS; break;
  }
  return out;
}

}  // namespace clalg
