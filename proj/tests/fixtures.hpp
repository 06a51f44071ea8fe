#pragma once

#include "clalg/closures.hpp"

namespace fixtures {

using namespace clalg;

inline RingPtr fermat() {
  static RingPtr r = make_ring("R", 7, {"x", "y", "z"}, {"x^3+y^3+z^3"});
  return r;
}

inline RingPtr poly_x() {
  static RingPtr r = make_ring("P1", 7, {"x"});
  return r;
}

inline RingPtr poly_xy() {
  static RingPtr r = make_ring("P2", 7, {"x", "y"});
  return r;
}

inline RingPtr a1() {
  static RingPtr r = make_ring("A1", 5, {"x", "y", "z"}, {"x*y-z^2"});
  return r;
}

inline RingPtr a1_cover() {
  static RingPtr r = make_ring("B", 5, {"u", "v"});
  return r;
}

/// A1 -> F5[u,v], x = u^2, y = v^2, z = uv.
inline RingMap veronese() {
  auto B = a1_cover();
  return make_ring_map(a1(), B, {B->parse("u^2"), B->parse("v^2"), B->parse("u*v")});
}

/// F5[u,v] as an A1-module: generators 1, u, v.
inline PresentedModule veronese_module() {
  auto A = a1();
  return PresentedModule(A, 3,
                         {from_components(std::vector<Poly>{Poly{}, A->parse("z"), A->parse("-x")}),
                          from_components(std::vector<Poly>{Poly{}, A->parse("y"), A->parse("-z")})});
}

/// F7[x,y,t]/(t^2 - x) with deg t = 1, deg x = deg y = 2.
inline RingPtr double_cover() {
  static RingPtr r = make_ring("S", 7, {"x", "y", "t"}, {"t^2-x"}, {2, 2, 1});
  return r;
}

/// F7[x,y] with both variables in degree 2, the base of double_cover().
inline RingPtr double_cover_base() {
  static RingPtr r = make_ring("Q", 7, {"x", "y"}, {}, {2, 2});
  return r;
}

inline RingMap double_cover_map() {
  auto S = double_cover();
  return make_ring_map(double_cover_base(), S, {S->parse("x"), S->parse("y")});
}

/// M' = R^3 / (z^2, -x, -y) over the Fermat cubic, generator degrees 0, 1, 1.
inline PresentedModule fermat_modification() {
  auto R = fermat();
  return PresentedModule(R, 3, {from_components(std::vector<Poly>{R->parse("z^2"), R->parse("-x"), R->parse("-y")})},
                         {0, 1, 1});
}

inline Submodule ideal_of(const RingPtr& R, std::initializer_list<const char*> gens) {
  std::vector<Poly> v;
  for (auto g : gens) v.push_back(R->parse(g));
  return ideal(R, v);
}

inline PresentedModule cyclic(const RingPtr& R, const char* rel) { return quotient(ideal_of(R, {rel})); }

}  // namespace fixtures

#include "clalg/linalg.hpp"

namespace fixtures {

inline void monomials_of_degree(const std::vector<int>& w, std::size_t v, std::int64_t left, Monomial& cur,
                                std::vector<Monomial>& out) {
  if (left < 0) return;
  if (v == w.size()) {
    if (left == 0) out.push_back(cur);
    return;
  }
  for (std::int64_t k = 0; k * w[v] <= left; ++k) {
    cur.e[v] = static_cast<Exponent>(k);
    monomials_of_degree(w, v + 1, left - k * w[v], cur, out);
  }
  cur.e[v] = 0;
}

/// dim_k of the degree-d part of a graded presented module, by plain linear
/// algebra on monomial multiples of the relations (no Groebner bases).
inline std::size_t hilbert_value(const PresentedModule& M, std::int64_t d) {
  const auto& R = M.ring();
  const auto& w = R->weights();
  std::vector<std::pair<Monomial, std::uint32_t>> basis;
  for (std::uint32_t j = 0; j < M.ngens(); ++j) {
    std::vector<Monomial> ms;
    Monomial cur;
    monomials_of_degree(w, 0, d - M.degrees()[j], cur, ms);
    for (const auto& m : ms) basis.emplace_back(m, j);
  }
  std::vector<Vec> rels = M.relations();
  for (const auto& f : R->ideal())
    for (std::uint32_t j = 0; j < M.ngens(); ++j) rels.push_back(in_component(f, j));
  DenseMatrix A;
  for (const auto& r : rels) {
    if (r.is_zero()) continue;
    auto deg = max_degree(r, w, M.degrees());
    std::vector<Monomial> ms;
    Monomial cur;
    monomials_of_degree(w, 0, d - deg, cur, ms);
    for (const auto& m : ms) {
      std::vector<std::uint32_t> row(basis.size(), 0);
      for (const auto& t : r.terms) {
        auto key = std::make_pair(t.mono * m, t.comp);
        auto it = std::find(basis.begin(), basis.end(), key);
        if (it != basis.end()) row[static_cast<std::size_t>(it - basis.begin())] = t.coef;
      }
      A.push_back(std::move(row));
    }
  }
  return basis.size() - rank(A, basis.size(), R->field());
}

/// Sym^2 presented on the symmetric products e_i e_j (i <= j) with relations b e_i.
inline PresentedModule symmetric_square_direct(const PresentedModule& M) {
  const auto& R = M.ring();
  const auto n = M.ngens();
  auto index = [&](std::uint32_t i, std::uint32_t j) {
    if (i > j) std::swap(i, j);
    std::uint32_t idx = 0;
    for (std::uint32_t l = 0; l < i; ++l) idx += n - l;
    return idx + (j - i);
  };
  std::vector<std::int64_t> degs;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i; j < n; ++j) degs.push_back(M.degrees()[i] + M.degrees()[j]);
  std::vector<Vec> rels;
  for (const auto& b : M.relations())
    for (std::uint32_t i = 0; i < n; ++i) {
      std::vector<Term> ts;
      for (const auto& t : b.terms) ts.push_back(Term{t.mono, index(t.comp, i), t.coef});
      normalize(ts, R->field());
      rels.push_back(Vec{ts});
    }
  return PresentedModule(R, static_cast<std::uint32_t>(degs.size()), rels, degs);
}

}  // namespace fixtures
