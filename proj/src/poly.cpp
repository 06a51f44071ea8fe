#include "clalg/poly.hpp"

#include <algorithm>

#include "clalg/errors.hpp"

namespace clalg {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool Monomial::is_one() const {
  return std::all_of(e.begin(), e.end(), [](Exponent x) { return x == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (e[i] > other.e[i]) return false;
  return true;
}

std::uint32_t Monomial::total_degree() const {
  std::uint32_t d = 0;
  for (auto x : e) d += x;
  return d;
}

std::int64_t Monomial::weighted_degree(std::span<const int> weights) const {
  std::int64_t d = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) d += static_cast<std::int64_t>(weights[i]) * e[i];
  return d;
}

Monomial Monomial::var(std::size_t i, Exponent power) {
  Monomial m;
  m.e[i] = power;
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    std::uint32_t s = std::uint32_t{a.e[i]} + b.e[i];
    if (s > 0xFFFFu) throw ResourceError("exponent overflow (degree above 65535)");
    r.e[i] = static_cast<Exponent>(s);
  }
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<Exponent>(a.e[i] - b.e[i]);
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = std::max(a.e[i], b.e[i]);
  return r;
}

bool storage_before(const Term& a, const Term& b) {
  if (a.comp != b.comp) return a.comp < b.comp;
  return a.mono > b.mono;
}

bool Vec::operator==(const Vec& o) const {
  if (terms.size() != o.terms.size()) return false;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& a = terms[i];
    const auto& b = o.terms[i];
    if (a.comp != b.comp || a.coef != b.coef || a.mono != b.mono) return false;
  }
  return true;
}

std::uint32_t Vec::rank_hint() const { return terms.empty() ? 0 : terms.back().comp + 1; }

void normalize(std::vector<Term>& terms, const Zp& F) {
  std::sort(terms.begin(), terms.end(), storage_before);
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    Term t = terms[i];
    std::size_t j = i + 1;
    while (j < terms.size() && terms[j].comp == t.comp && terms[j].mono == t.mono) {
      t.coef = F.add(t.coef, terms[j].coef);
      ++j;
    }
    if (t.coef != 0) terms[out++] = t;
    i = j;
  }
  terms.resize(out);
}

Vec constant(std::uint32_t c, std::uint32_t comp) {
  Vec v;
  if (c != 0) v.terms.push_back(Term{Monomial{}, comp, c});
  return v;
}

Vec unit_vector(std::uint32_t comp) { return constant(1, comp); }

Vec monomial_vec(const Monomial& m, std::uint32_t coef, std::uint32_t comp) {
  Vec v;
  if (coef != 0) v.terms.push_back(Term{m, comp, coef});
  return v;
}

namespace {

template <class Combine>
Vec merge(const Vec& a, const Vec& b, Combine combine, const Zp& F, bool negate_b) {
  Vec r;
  r.terms.reserve(a.terms.size() + b.terms.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    if (j == b.terms.size() || (i < a.terms.size() && storage_before(a.terms[i], b.terms[j]))) {
      r.terms.push_back(a.terms[i++]);
    } else if (i == a.terms.size() || storage_before(b.terms[j], a.terms[i])) {
      Term t = b.terms[j++];
      if (negate_b) t.coef = F.neg(t.coef);
      r.terms.push_back(t);
    } else {
      Term t = a.terms[i];
      t.coef = combine(a.terms[i].coef, b.terms[j].coef);
      if (t.coef != 0) r.terms.push_back(t);
      ++i;
      ++j;
    }
  }
  return r;
}

}  // namespace

Vec add(const Vec& a, const Vec& b, const Zp& F) {
  return merge(a, b, [&](auto x, auto y) { return F.add(x, y); }, F, false);
}

Vec sub(const Vec& a, const Vec& b, const Zp& F) {
  return merge(a, b, [&](auto x, auto y) { return F.sub(x, y); }, F, true);
}

Vec neg(const Vec& a, const Zp& F) { return scale(a, F.neg(1), F); }

Vec scale(const Vec& a, std::uint32_t c, const Zp& F) {
  Vec r;
  if (c == 0) return r;
  r.terms = a.terms;
  for (auto& t : r.terms) t.coef = F.mul(t.coef, c);
  return r;
}

Vec mul_term(const Vec& a, const Monomial& m, std::uint32_t c, const Zp& F) {
  Vec r;
  if (c == 0) return r;
  r.terms.reserve(a.terms.size());
  for (const auto& t : a.terms) r.terms.push_back(Term{t.mono * m, t.comp, F.mul(t.coef, c)});
  // Multiplying by a monomial preserves lexicographic order within a component.
  return r;
}

Vec mul(const Poly& f, const Vec& v, const Zp& F) {
  if (f.is_zero() || v.is_zero()) return {};
  if (f.terms.size() == 1) return mul_term(v, f.terms[0].mono, f.terms[0].coef, F);
  std::vector<Term> out;
  out.reserve(f.terms.size() * v.terms.size());
  for (const auto& a : f.terms)
    for (const auto& b : v.terms) out.push_back(Term{a.mono * b.mono, b.comp, F.mul(a.coef, b.coef)});
  normalize(out, F);
  return Vec{std::move(out)};
}

Poly pow(const Poly& f, std::uint64_t e, const Zp& F) {
  Poly result = constant(1);
  Poly base = f;
  while (e) {
    if (e & 1) result = mul(result, base, F);
    e >>= 1;
    if (e) base = mul(base, base, F);
  }
  return result;
}

Poly component(const Vec& v, std::uint32_t j) {
  Poly r;
  for (const auto& t : v.terms)
    if (t.comp == j) r.terms.push_back(Term{t.mono, 0, t.coef});
  return r;
}

Vec in_component(const Poly& f, std::uint32_t j) {
  Vec r = f;
  for (auto& t : r.terms) t.comp = j;
  return r;
}

std::vector<Poly> components(const Vec& v, std::uint32_t rank) {
  std::vector<Poly> parts(rank);
  for (const auto& t : v.terms) {
    if (t.comp >= rank) throw DimensionError("vector has a component beyond the module rank");
    parts[t.comp].terms.push_back(Term{t.mono, 0, t.coef});
  }
  return parts;
}

Vec from_components(std::span<const Poly> parts) {
  Vec r;
  for (std::uint32_t j = 0; j < parts.size(); ++j)
    for (const auto& t : parts[j].terms) r.terms.push_back(Term{t.mono, j, t.coef});
  return r;
}

Vec shift_components(const Vec& v, std::int64_t offset) {
  Vec r = v;
  for (auto& t : r.terms) t.comp = static_cast<std::uint32_t>(static_cast<std::int64_t>(t.comp) + offset);
  return r;
}

Vec frobenius(const Vec& v, std::uint64_t q) {
  Vec r = v;
  for (auto& t : r.terms)
    for (auto& x : t.mono.e) {
      std::uint64_t y = std::uint64_t{x} * q;
      if (y > 0xFFFFu) throw ResourceError("exponent overflow in Frobenius power");
      x = static_cast<Exponent>(y);
    }
  return r;
}

Vec substitute(const Vec& v, std::span<const Poly> images, const Zp& F) {
  std::vector<Term> out;
  for (const auto& t : v.terms) {
    Poly acc = constant(t.coef);
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      if (t.mono.e[i] == 0) continue;
      if (i >= images.size()) throw DimensionError("substitution is missing a variable image");
      acc = mul(acc, pow(images[i], t.mono.e[i], F), F);
    }
    for (const auto& a : acc.terms) out.push_back(Term{a.mono, t.comp, a.coef});
  }
  normalize(out, F);
  return Vec{std::move(out)};
}

std::uint32_t constant_coefficient(const Poly& f) {
  for (const auto& t : f.terms)
    if (t.comp == 0 && t.mono.is_one()) return t.coef;
  return 0;
}

std::int64_t max_degree(const Vec& v, std::span<const int> weights, std::span<const std::int64_t> shifts) {
  std::int64_t best = INT64_MIN;
  for (const auto& t : v.terms) {
    std::int64_t d = t.mono.weighted_degree(weights) + (t.comp < shifts.size() ? shifts[t.comp] : 0);
    best = std::max(best, d);
  }
  return best;
}

bool is_homogeneous(const Vec& v, std::span<const int> weights, std::span<const std::int64_t> shifts) {
  if (v.terms.empty()) return true;
  auto deg = [&](const Term& t) {
    return t.mono.weighted_degree(weights) + (t.comp < shifts.size() ? shifts[t.comp] : 0);
  };
  std::int64_t d0 = deg(v.terms.front());
  return std::all_of(v.terms.begin(), v.terms.end(), [&](const Term& t) { return deg(t) == d0; });
}

}  // namespace clalg
