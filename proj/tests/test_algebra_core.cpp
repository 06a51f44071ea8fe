#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "clalg/errors.hpp"
#include "clalg/module.hpp"

using namespace clalg;

namespace {

RingPtr fermat() { return make_ring("R", 7, {"x", "y", "z"}, {"x^3+y^3+z^3"}); }

}  // namespace

TEST_CASE("groebner reduces x^2+xy, xy") {
  auto R = make_ring("P", 7, {"x", "y"});
  auto gb = groebner(std::vector<Vec>{R->parse("x^2+x*y"), R->parse("x*y")}, R->order(), R->field());
  REQUIRE(gb.size() == 2);
  auto els = gb.elements();
  CHECK(R->format(els[0]) == "x*y");
  CHECK(R->format(els[1]) == "x^2");
  auto again = groebner(els, R->order(), R->field());
  CHECK(again == gb);
}

TEST_CASE("groebner of x, y and of nothing") {
  auto R = make_ring("P", 7, {"x", "y"});
  auto gb = groebner(std::vector<Vec>{R->parse("x"), R->parse("y")}, R->order(), R->field());
  CHECK(gb.size() == 2);
  auto empty = groebner(std::vector<Vec>{}, R->order(), R->field());
  CHECK(empty.size() == 0);
}

TEST_CASE("membership in the Fermat cubic") {
  auto R = fermat();
  auto N = ideal(R, {R->parse("x"), R->parse("y")});
  CHECK_FALSE(N.membership(R->parse("z^2")));
  auto cert = N.membership(R->parse("z^3"));
  REQUIRE(cert);
  CHECK(cert->verified);
  CHECK(R->format(cert->generator_coeffs[0]) == "-x^2");
  CHECK(R->format(cert->generator_coeffs[1]) == "-y^2");
  auto zero = N.membership(Vec{});
  REQUIRE(zero);
  for (const auto& c : zero->generator_coeffs) CHECK(c.is_zero());
}

TEST_CASE("kernels") {
  auto P = make_ring("P", 7, {"x"});
  auto R1 = PresentedModule::free(P, 1);
  CHECK(kernel(ModuleMap::identity(R1)).is_zero());
  auto Q = quotient(ideal(P, {P->parse("x")}));
  auto k = kernel(ModuleMap(R1, Q, {unit_vector(0)}));
  CHECK(k == ideal(P, {P->parse("x")}));

  auto R = fermat();
  PresentedModule Mp(R, 3, {from_components(std::vector<Poly>{R->parse("z^2"), R->parse("-x"), R->parse("-y")})});
  auto alpha = ModuleMap(PresentedModule::free(R, 1), Mp, {unit_vector(0)});
  CHECK(kernel(alpha).is_zero());
}

TEST_CASE("colon") {
  auto P = make_ring("P", 7, {"x"});
  CHECK(colon(ideal(P, {P->parse("x^2")}), P->parse("x")) == ideal(P, {P->parse("x")}));
  auto R = fermat();
  auto c = colon(ideal(R, {R->parse("x"), R->parse("y")}), R->parse("z"));
  CHECK(c.contains(R->parse("z^2")));
  auto whole = Submodule::whole(PresentedModule::free(R, 1));
  CHECK(colon(whole, R->parse("x")).is_whole());
  CHECK_THROWS_AS(colon(whole, Vec{}), PreconditionError);
}

TEST_CASE("tensor presentations") {
  auto P = make_ring("P", 7, {"x", "y"});
  auto Qx = quotient(ideal(P, {P->parse("x")}));
  auto Qy = quotient(ideal(P, {P->parse("y")}));
  auto T = tensor_presentation(Qx, Qy);
  CHECK(T.ngens() == 1);
  CHECK(Submodule(PresentedModule::free(P, 1), T.relations()) == ideal(P, {P->parse("x"), P->parse("y")}));

  auto P1 = make_ring("P1", 7, {"x"});
  auto Q = quotient(ideal(P1, {P1->parse("x")}));
  auto TT = tensor_presentation(Q, Q);
  CHECK(TT.relations().size() == 2);
  auto mp = minimal_presentation(TT);
  CHECK(Submodule(PresentedModule::free(P1, 1), mp.module.relations()).trimmed().generators().size() == 1);
}

TEST_CASE("hom into ring") {
  auto P = make_ring("P", 7, {"x"});
  auto F2 = PresentedModule::free(P, 2);
  auto H = hom_into_ring(F2);
  CHECK(H.maps.size() == 2);
  auto Q = quotient(ideal(P, {P->parse("x")}));
  auto HQ = hom_into_ring(Q);
  CHECK(Submodule(PresentedModule::free(P, 1), HQ.maps).is_zero());

  auto R = fermat();
  PresentedModule Mp(R, 3, {from_components(std::vector<Poly>{R->parse("z^2"), R->parse("-x"), R->parse("-y")})});
  auto I = evaluation_ideal(Mp, unit_vector(0));
  CHECK(I == ideal(R, {R->parse("x"), R->parse("y"), R->parse("z")}));
}

TEST_CASE("frobenius") {
  auto P = make_ring("P", 7, {"x"});
  auto M = quotient(ideal(P, {P->parse("x^2")}));
  CHECK(frobenius_module(M, 0).same_presentation(M));
  CHECK(P->format(frobenius_module(M, 1).relations()[0]) == "x^14");
  auto R = fermat();
  auto u = frobenius_element(R->parse("z^2"), 1, 7);
  CHECK(R->format(u) == "z^14");
}

TEST_CASE("minimal presentations and M/mM") {
  auto P = make_ring("P", 7, {"x", "y"});
  PresentedModule M(P, 2, {from_components(std::vector<Poly>{P->parse("1"), P->parse("x")})}, {1, 0});
  auto mp = minimal_presentation(M);
  CHECK(mp.module.ngens() == 1);
  CHECK(mp.module.relations().empty());

  auto R = fermat();
  PresentedModule Mp(R, 3, {from_components(std::vector<Poly>{R->parse("z^2"), R->parse("-x"), R->parse("-y")})},
                     {0, 1, 1});
  auto fiber = quotient_by_irrelevant(Mp);
  CHECK(fiber.dimension() == 3);
  CHECK(fiber.is_nonzero(unit_vector(0)));
  CHECK_FALSE(in_irrelevant_multiple(Mp, unit_vector(0)));
  CHECK_THROWS_AS(minimal_presentation(PresentedModule(P, 1, {P->parse("x+1")})), ConstructionError);
}

TEST_CASE("syzygies of the residue field") {
  auto P = make_ring("P", 7, {"x", "y"});
  auto k = quotient(ideal(P, {P->parse("x"), P->parse("y")}));
  auto res = free_resolution(k, 3);
  CHECK(res.ranks == std::vector<std::uint32_t>{1, 2, 1, 0});
  auto s2 = syzygy(k, 2);
  CHECK(s2.ngens() == 1);
  CHECK(s2.relations().empty());
  CHECK(syzygy(k, 3).ngens() == 0);

  auto free = PresentedModule::free(P, 1);
  CHECK(free_resolution(free, 2).ranks == std::vector<std::uint32_t>{1, 0, 0});

  auto A = make_ring("A1", 5, {"x", "y", "z"}, {"x*y-z^2"});
  auto kA = quotient(ideal(A, {A->parse("x"), A->parse("y"), A->parse("z")}));
  auto resA = free_resolution(kA, 3);
  CHECK(resA.ranks[1] == 3);
  CHECK(resA.ranks[2] == 4);
  auto s = syzygy(kA, 2);
  CHECK(s.ngens() == 4);
  CHECK_FALSE(s.relations().empty());
}

TEST_CASE("krull dimension and sops") {
  auto P = make_ring("P", 7, {"x", "y", "z"});
  CHECK(krull_dim(P) == 3);
  auto R = fermat();
  CHECK(krull_dim(R) == 2);
  CHECK(is_partial_sop(R, {R->parse("x"), R->parse("y")}));
  auto P2 = make_ring("P2", 7, {"x", "y"});
  CHECK_FALSE(is_partial_sop(P2, {P2->parse("x"), P2->parse("x^2")}));
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(make_ring("bad", 6, {"x"}), ConstructionError);
  CHECK_THROWS_AS(make_ring("bad", 7, {"x", "y"}, {"x^2+y"}), ConstructionError);
}
