#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "clalg/zp.hpp"

namespace clalg {

inline constexpr std::size_t kMaxVars = 16;
using Exponent = std::uint16_t;

/// Exponent vector. Unused trailing slots stay zero.
struct Monomial {
  std::array<Exponent, kMaxVars> e{};

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

  bool is_one() const;
  bool divides(const Monomial& other) const;
  std::uint32_t total_degree() const;
  std::int64_t weighted_degree(std::span<const int> weights) const;

  static Monomial var(std::size_t i, Exponent power = 1);
};

Monomial operator*(const Monomial& a, const Monomial& b);
/// a / b; requires b | a.
Monomial operator/(const Monomial& a, const Monomial& b);
Monomial lcm(const Monomial& a, const Monomial& b);

/// A coefficient times a monomial placed in a free-module component.
struct Term {
  Monomial mono;
  std::uint32_t comp = 0;
  std::uint32_t coef = 0;
};

/// Element of a free module P^r over P = F_p[x_1..x_n], stored as a sparse
/// term list in canonical storage order (component ascending, then monomials
/// lexicographically descending). Ring elements are vectors supported in
/// component 0.
struct Vec {
  std::vector<Term> terms;

  bool is_zero() const { return terms.empty(); }
  bool operator==(const Vec&) const;
  /// Largest component index used plus one (0 for the zero vector).
  std::uint32_t rank_hint() const;
};

using Poly = Vec;

bool storage_before(const Term& a, const Term& b);

/// Sorts into storage order, merges equal monomials and drops zeros.
void normalize(std::vector<Term>& terms, const Zp& F);

Vec constant(std::uint32_t c, std::uint32_t comp = 0);
Vec unit_vector(std::uint32_t comp);
Vec monomial_vec(const Monomial& m, std::uint32_t coef, std::uint32_t comp = 0);

Vec add(const Vec& a, const Vec& b, const Zp& F);
Vec sub(const Vec& a, const Vec& b, const Zp& F);
Vec neg(const Vec& a, const Zp& F);
Vec scale(const Vec& a, std::uint32_t c, const Zp& F);
Vec mul_term(const Vec& a, const Monomial& m, std::uint32_t c, const Zp& F);
/// Ring element (component 0) times a vector.
Vec mul(const Poly& f, const Vec& v, const Zp& F);
Poly pow(const Poly& f, std::uint64_t e, const Zp& F);

/// Component j of v as a ring element.
Poly component(const Vec& v, std::uint32_t j);
/// Places a ring element into component j.
Vec in_component(const Poly& f, std::uint32_t j);
/// Splits v into its components 0..rank-1.
std::vector<Poly> components(const Vec& v, std::uint32_t rank);
Vec from_components(std::span<const Poly> parts);
/// Re-indexes components c -> c + offset.
Vec shift_components(const Vec& v, std::int64_t offset);

/// Entrywise Frobenius: every monomial exponent multiplied by q. Valid over F_p
/// because c^q = c for c in F_p.
Vec frobenius(const Vec& v, std::uint64_t q);

/// Substitutes images[i] for variable i (images are ring elements).
Vec substitute(const Vec& v, std::span<const Poly> images, const Zp& F);

/// Constant term of a ring element (coefficient of 1 in component 0).
std::uint32_t constant_coefficient(const Poly& f);
/// Maximum total weighted degree over terms (degree of comp c counted with shift[c]).
std::int64_t max_degree(const Vec& v, std::span<const int> weights, std::span<const std::int64_t> shifts);
/// True iff every term has the same weighted degree (plus component shift).
bool is_homogeneous(const Vec& v, std::span<const int> weights, std::span<const std::int64_t> shifts);

}  // namespace clalg
