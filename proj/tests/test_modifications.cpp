#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "clalg/errors.hpp"
#include "clalg/modifications.hpp"
#include "fixtures.hpp"

using namespace clalg;
using namespace fixtures;

namespace {

std::vector<Poly> xyz(const RingPtr& R) { return {R->parse("x"), R->parse("y"), R->parse("z")}; }

bool same_images(const ModuleMap& a, const ModuleMap& b) {
  if (a.images().size() != b.images().size()) return false;
  const auto& T = a.target();
  for (std::size_t i = 0; i < a.images().size(); ++i)
    if (!Submodule::zero(T).contains(sub(a.images()[i], b.images()[i], T.ring()->field()))) return false;
  return true;
}

}  // namespace

TEST_CASE("bad relations") {
  auto P = poly_xy();
  CHECK_FALSE(find_bad_relation(PresentedModule::free(P, 1), {P->parse("x"), P->parse("y")}));
  CHECK_FALSE(find_bad_relation(PresentedModule::free(P, 2), {P->parse("y"), P->parse("x")}));

  auto R = fermat();
  auto rel = find_bad_relation(PresentedModule::free(R, 1), xyz(R));
  REQUIRE(rel);
  CHECK(rel->k() == 2);
  CHECK(R->format(component(rel->u, 0)) == "z^2");
  CHECK(R->format(component(rel->m[0], 0)) == "-x^2");
  CHECK(R->format(component(rel->m[1], 0)) == "-y^2");
  CHECK(rel->verify());

  CHECK_THROWS_AS(find_bad_relation(cyclic(P, "x"), {P->parse("x"), P->parse("y")}), PreconditionError);
  CHECK_THROWS_AS(find_bad_relation(PresentedModule::free(R, 1), xyz(R), true), PreconditionError);
  CHECK_THROWS_AS(find_bad_relation(PresentedModule::free(R, 1), {R->parse("x")}), PreconditionError);
}

TEST_CASE("partial algebra modification of the Fermat cubic") {
  auto R = fermat();
  auto inst = instance_on(PresentedModule::free(R, 1));
  auto rel = *find_bad_relation(inst.M, xyz(R));
  auto mod = partial_algebra_modification(inst, rel);
  CHECK(mod.instance.M.same_presentation(fermat_modification()));
  CHECK(is_injective(mod.from_previous));

  auto t = tight_bounded({}, 3);
  CHECK(phantom_check(t, inst).phantom);
  CHECK(phantom_check(t, mod.instance).phantom);
  CHECK_FALSE(phantom_check(identity_closure(), mod.instance).phantom);

  // k = 0 is not a modification
  BadRelation degenerate = rel;
  degenerate.sop.resize(1);
  degenerate.m.clear();
  CHECK_THROWS_AS(partial_algebra_modification(inst, degenerate), PreconditionError);
  CHECK_THROWS_AS(partial_algebra_modification(instance_on(PresentedModule::free(R, 2)), rel), PreconditionError);
}

TEST_CASE("second modification round") {
  auto R = fermat();
  auto first = partial_algebra_modification(instance_on(PresentedModule::free(R, 1)),
                                            *find_bad_relation(PresentedModule::free(R, 1), xyz(R)));
  auto rel = find_bad_relation(first.instance.M, xyz(R));
  REQUIRE(rel);
  CHECK(rel->verify());
  auto second = partial_algebra_modification(first.instance, *rel);
  CHECK(second.instance.n() == first.instance.n() * (rel->k() + 1));
  CHECK(second.instance.m() == first.instance.m() * (rel->k() + 1) + 1);
  CHECK(is_injective(second.from_previous));
  CHECK(phantom_check(tight_bounded({}, 3), second.instance).phantom);
}

TEST_CASE("sym steps") {
  auto P = poly_x();
  auto id = sym_step(instance_on(PresentedModule::free(P, 1)));
  CHECK(id.instance.n() == 1);
  auto s = sym_step(instance_on(fermat_modification()));
  CHECK(s.instance.n() == 9);
  CHECK_THROWS_AS(sym_step(s.instance, 80), ResourceError);
  CHECK(same_images(compose(s.from_previous, instance_on(fermat_modification()).alpha), s.instance.alpha));
}

TEST_CASE("build traces") {
  auto P = poly_xy();
  auto reg = bcm_build(P, identity_closure(), {P->parse("x"), P->parse("y")}, 2);
  CHECK(reg.status == BuildStatus::COMPLETE);
  for (const auto& st : reg.stages) {
    CHECK(st.unit_outside_mM);
    CHECK_FALSE(st.relation);
  }

  auto R = fermat();
  auto id = bcm_build(R, identity_closure(), xyz(R), 1);
  REQUIRE(id.stages.size() == 2);
  CHECK(id.stages[1].kind == StageKind::MODIFY);
  CHECK_FALSE(id.stages[1].phantom->phantom);
  CHECK(id.stages[1].unit_outside_mM);

  auto tr = bcm_build(R, tight_bounded({}, 3), xyz(R), 2);
  CHECK(tr.status == BuildStatus::COMPLETE);
  REQUIRE(tr.stages.size() == 4);
  CHECK(tr.stages[2].kind == StageKind::SYM2);
  for (std::size_t i = 0; i < tr.stages.size(); ++i) {
    CAPTURE(i);
    CHECK(tr.stages[i].unit_outside_mM);
    CHECK(tr.stages[i].phantom->phantom);
    if (i) CHECK(same_images(compose(*tr.stages[i].from_previous, tr.stages[i - 1].instance.alpha),
                             tr.stages[i].instance.alpha));
  }

  auto capped = bcm_build(R, tight_bounded({}, 2), xyz(R), 2, {0, 5});
  CHECK(capped.status == BuildStatus::BUDGET_EXHAUSTED);
  CHECK(capped.stages.size() == 2);
  CHECK_THROWS_AS(bcm_build(R, identity_closure(), xyz(R), 0), PreconditionError);
}

TEST_CASE("chains") {
  auto P = poly_x();
  auto F1 = PresentedModule::free(P, 1);
  auto idm = ModuleMap::identity(F1);
  CHECK(chain_phantom_check({idm, idm, idm}, module_closure(cyclic(P, "x"))).phantom);

  auto R = fermat();
  auto base = instance_on(fermat_modification());
  auto s = sym_step(base);
  std::vector<ModuleMap> chain{base.alpha, s.from_previous};
  auto t = chain_phantom_check(chain, tight_bounded({}, 3));
  CHECK(t.phantom);
  CHECK(t.status == Status::BOUNDED_CERTIFIED);
  auto i = chain_phantom_check(chain, identity_closure());
  CHECK_FALSE(i.phantom);
  CHECK(i.first_failure == 1u);
  CHECK_THROWS_AS(chain_phantom_check({s.from_previous, base.alpha}, identity_closure()), PreconditionError);
}
