#include "clalg/module.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

#include "clalg/errors.hpp"

namespace clalg {

namespace {

void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (a != b) throw DimensionError("operands live over different rings (" + a->name() + " vs " + b->name() + ")");
}

void require_rank(const Vec& v, std::uint32_t rank) {
  if (v.rank_hint() > rank) throw DimensionError("vector has a component beyond the module rank");
}

std::int64_t lead_degree(const Vec& v, const MonomialOrder& order) {
  if (v.is_zero()) return 0;
  std::int64_t best = INT64_MIN;
  for (const auto& t : v.terms) best = std::max(best, order.degree(t));
  return best;
}

}  // namespace

// ---------------------------------------------------------------------------
// PresentedModule

PresentedModule::PresentedModule(RingPtr ring, std::uint32_t ngens, std::vector<Vec> relations,
                                 std::vector<std::int64_t> degrees)
    : ring_(std::move(ring)), ngens_(ngens), degrees_(std::move(degrees)) {
  if (degrees_.empty()) degrees_.assign(ngens_, 0);
  if (degrees_.size() != ngens_) throw ConstructionError("one degree per generator required");
  relations_.reserve(relations.size());
  for (auto& r : relations) {
    require_rank(r, ngens_);
    relations_.push_back(ring_->reduce(r));
  }
}

PresentedModule PresentedModule::free(RingPtr ring, std::uint32_t rank, std::vector<std::int64_t> degrees) {
  return PresentedModule(std::move(ring), rank, {}, std::move(degrees));
}

bool PresentedModule::is_homogeneous(const Vec& v) const {
  return clalg::is_homogeneous(v, ring_->weights(), degrees_);
}

bool PresentedModule::is_homogeneous() const {
  return std::all_of(relations_.begin(), relations_.end(), [&](const Vec& r) { return is_homogeneous(r); });
}

std::vector<Vec> PresentedModule::lifted_relations() const {
  std::vector<Vec> out = relations_;
  for (const auto& f : ring_->ideal_basis())
    for (std::uint32_t j = 0; j < ngens_; ++j) out.push_back(in_component(f, j));
  return out;
}

bool PresentedModule::same_presentation(const PresentedModule& o) const {
  return ring_ == o.ring_ && ngens_ == o.ngens_ && relations_ == o.relations_ && degrees_ == o.degrees_;
}

// ---------------------------------------------------------------------------
// Submodule

struct Submodule::Cache {
  std::mutex basis_lock, tracked_lock;
  std::optional<GroebnerBasis> basis;
  std::optional<GroebnerBasis> tracked;
};

Submodule::Submodule(PresentedModule ambient, std::vector<Vec> generators)
    : ambient_(std::move(ambient)), cache_(std::make_shared<Cache>()) {
  for (auto& g : generators) {
    require_rank(g, ambient_.ngens());
    auto r = ring()->reduce(g);
    if (!r.is_zero()) gens_.push_back(std::move(r));
  }
}

Submodule Submodule::whole(const PresentedModule& ambient) {
  std::vector<Vec> gens;
  for (std::uint32_t j = 0; j < ambient.ngens(); ++j) gens.push_back(unit_vector(j));
  return Submodule(ambient, std::move(gens));
}

const GroebnerBasis& Submodule::basis() const {
  std::lock_guard lock(cache_->basis_lock);
  if (!cache_->basis) {
    std::vector<Vec> input = gens_;
    auto rels = ambient_.lifted_relations();
    input.insert(input.end(), rels.begin(), rels.end());
    cache_->basis.emplace(groebner(input, ambient_.order(), ring()->field()));
  }
  return *cache_->basis;
}

const GroebnerBasis& Submodule::tracked_basis() const {
  std::lock_guard lock(cache_->tracked_lock);
  if (!cache_->tracked) {
    const std::uint32_t n = ambient_.ngens();
    MonomialOrder order = ambient_.order();
    order.track_start = n;
    std::vector<Vec> input;
    std::uint32_t k = 0;
    auto add_tracked = [&](const Vec& v) {
      order.shifts.push_back(lead_degree(v, order));
      input.push_back(add(v, unit_vector(n + k), ring()->field()));
      ++k;
    };
    for (const auto& g : gens_) add_tracked(g);
    for (const auto& r : ambient_.relations()) add_tracked(r);
    for (const auto& f : ring()->ideal_basis())
      for (std::uint32_t j = 0; j < n; ++j) input.push_back(in_component(f, j));
    cache_->tracked.emplace(groebner(input, order, ring()->field()));
  }
  return *cache_->tracked;
}

bool Submodule::contains(const Vec& u) const {
  require_rank(u, ambient_.ngens());
  return basis().contains(u);
}

bool Submodule::contains(const Submodule& other) const {
  require_same_ring(ring(), other.ring());
  return std::all_of(other.gens_.begin(), other.gens_.end(), [&](const Vec& g) { return contains(g); });
}

bool Submodule::operator==(const Submodule& other) const {
  if (!ambient_.same_presentation(other.ambient_)) return false;
  return basis() == other.basis();
}

bool Submodule::is_zero() const { return Submodule::zero(ambient_).contains(*this); }

bool Submodule::is_whole() const { return contains(Submodule::whole(ambient_)); }

std::optional<MembershipCertificate> Submodule::membership(const Vec& u) const {
  require_rank(u, ambient_.ngens());
  const std::uint32_t n = ambient_.ngens();
  const auto& F = ring()->field();
  Vec rem = tracked_basis().top_reduce_below(u, n);
  for (const auto& t : rem.terms)
    if (t.comp < n) return std::nullopt;
  MembershipCertificate cert;
  auto parts = components(shift_components(neg(rem, F), -static_cast<std::int64_t>(n)),
                          static_cast<std::uint32_t>(gens_.size() + ambient_.relations().size()));
  for (auto& p : parts) p = ring()->reduce(p);
  cert.generator_coeffs.assign(parts.begin(), parts.begin() + static_cast<std::ptrdiff_t>(gens_.size()));
  cert.relation_coeffs.assign(parts.begin() + static_cast<std::ptrdiff_t>(gens_.size()), parts.end());
  cert.verified = verify(u, cert);
  if (!cert.verified) throw std::logic_error("membership certificate failed re-verification");
  return cert;
}

bool Submodule::verify(const Vec& u, const MembershipCertificate& cert) const {
  if (cert.generator_coeffs.size() != gens_.size() || cert.relation_coeffs.size() != ambient_.relations().size())
    return false;
  const auto& F = ring()->field();
  Vec total = neg(u, F);
  for (std::size_t i = 0; i < gens_.size(); ++i) total = add(total, mul(cert.generator_coeffs[i], gens_[i], F), F);
  for (std::size_t j = 0; j < ambient_.relations().size(); ++j)
    total = add(total, mul(cert.relation_coeffs[j], ambient_.relations()[j], F), F);
  return ring()->is_zero(total);
}

Submodule Submodule::trimmed() const {
  const auto rel_basis = Submodule::zero(ambient_);
  std::vector<Vec> gens;
  for (const auto& g : gens_) {
    auto r = rel_basis.normal_form(g);
    if (!r.is_zero()) gens.push_back(std::move(r));
  }
  // Drop duplicates up to scalars, then generators lying in the span of the rest.
  std::vector<Vec> kept;
  for (const auto& g : gens) {
    bool dup = false;
    for (const auto& k : kept) {
      if (k.terms.size() != g.terms.size()) continue;
      const auto& F = ring()->field();
      auto c = F.mul(g.terms.front().coef, F.inv(k.terms.front().coef));
      if (scale(k, c, F) == g) dup = true;
    }
    if (!dup) kept.push_back(g);
  }
  for (std::size_t i = kept.size(); i-- > 0;) {
    std::vector<Vec> others;
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != i) others.push_back(kept[j]);
    if (Submodule(ambient_, others).contains(kept[i])) kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return Submodule(ambient_, std::move(kept));
}

// ---------------------------------------------------------------------------
// ModuleMap

ModuleMap::ModuleMap(PresentedModule source, PresentedModule target, std::vector<Vec> images, bool check)
    : source_(std::move(source)), target_(std::move(target)) {
  require_same_ring(source_.ring(), target_.ring());
  if (images.size() != source_.ngens()) throw DimensionError("module map needs one image per source generator");
  for (auto& img : images) {
    require_rank(img, target_.ngens());
    images_.push_back(target_.ring()->reduce(img));
  }
  if (check && !is_well_defined()) throw PreconditionError("module map does not respect the source relations");
}

ModuleMap ModuleMap::identity(const PresentedModule& m) {
  std::vector<Vec> imgs;
  for (std::uint32_t j = 0; j < m.ngens(); ++j) imgs.push_back(unit_vector(j));
  return ModuleMap(m, m, std::move(imgs), false);
}

Vec ModuleMap::apply(const Vec& v) const {
  require_rank(v, source_.ngens());
  const auto& F = source_.ring()->field();
  Vec out;
  auto parts = components(v, source_.ngens());
  for (std::uint32_t j = 0; j < parts.size(); ++j)
    if (!parts[j].is_zero()) out = add(out, mul(parts[j], images_[j], F), F);
  return target_.ring()->reduce(out);
}

bool ModuleMap::is_well_defined() const {
  const auto zero = Submodule::zero(target_);
  return std::all_of(source_.relations().begin(), source_.relations().end(),
                     [&](const Vec& r) { return zero.contains(apply(r)); });
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  if (!f.target().same_presentation(g.source())) throw DimensionError("maps do not compose");
  std::vector<Vec> imgs;
  for (const auto& v : f.images()) imgs.push_back(g.apply(v));
  return ModuleMap(f.source(), g.target(), std::move(imgs), false);
}

Submodule image(const ModuleMap& f) { return Submodule(f.target(), f.images()); }

std::vector<Vec> syzygies(const PresentedModule& ambient, const std::vector<Vec>& vectors) {
  const std::uint32_t n = ambient.ngens();
  const auto& ring = ambient.ring();
  const auto& F = ring->field();
  MonomialOrder order = ambient.order();
  order.shifts.resize(n);
  order.track_start = n;
  std::vector<Vec> input;
  for (std::uint32_t k = 0; k < vectors.size(); ++k) {
    require_rank(vectors[k], n);
    order.shifts.push_back(lead_degree(vectors[k], order));
    input.push_back(add(vectors[k], unit_vector(n + k), F));
  }
  for (const auto& r : ambient.lifted_relations()) input.push_back(r);
  GroebnerBasis gb = groebner(input, order, F);
  std::vector<Vec> out;
  for (const auto& s : gb.elements_from_component(n)) {
    auto v = ring->reduce(shift_components(s, -static_cast<std::int64_t>(n)));
    if (!v.is_zero()) out.push_back(std::move(v));
  }
  return out;
}

Submodule kernel(const ModuleMap& f) { return Submodule(f.source(), syzygies(f.target(), f.images())); }

Submodule preimage(const ModuleMap& f, const Submodule& target_sub) {
  if (!target_sub.ambient().same_presentation(f.target())) throw DimensionError("submodule is not in the map target");
  return Submodule(f.source(), syzygies(quotient(target_sub), f.images()));
}

bool is_injective(const ModuleMap& f) { return kernel(f).is_zero(); }

bool is_surjective(const ModuleMap& f) { return image(f).is_whole(); }

Submodule colon(const Submodule& N, const Poly& x) {
  const auto& M = N.ambient();
  if (M.ring()->is_zero(x)) throw PreconditionError("colon by zero");
  std::vector<Vec> imgs;
  for (std::uint32_t j = 0; j < M.ngens(); ++j) imgs.push_back(in_component(x, j));
  return preimage(ModuleMap(M, M, std::move(imgs), false), N);
}

Submodule intersect(const Submodule& a, const Submodule& b) {
  if (!a.ambient().same_presentation(b.ambient())) throw DimensionError("intersection of submodules of different modules");
  const auto& F = a.ring()->field();
  std::vector<Vec> gens;
  for (const auto& c : syzygies(quotient(b), a.generators())) {
    Vec v;
    auto coeffs = components(c, static_cast<std::uint32_t>(a.generators().size()));
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (!coeffs[i].is_zero()) v = add(v, mul(coeffs[i], a.generators()[i], F), F);
    gens.push_back(std::move(v));
  }
  return Submodule(a.ambient(), std::move(gens));
}

Submodule sum(const Submodule& a, const Submodule& b) {
  if (!a.ambient().same_presentation(b.ambient())) throw DimensionError("sum of submodules of different modules");
  auto gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Submodule(a.ambient(), std::move(gens));
}

Submodule module_colon(const Submodule& A, const Submodule& B) {
  if (!A.ambient().same_presentation(B.ambient())) throw DimensionError("colon of submodules of different modules");
  const auto& ring = A.ring();
  auto R1 = PresentedModule::free(ring, 1);
  if (B.generators().empty()) return Submodule::whole(R1);
  const auto& M = A.ambient();
  const std::uint32_t n = M.ngens();
  const auto k = static_cast<std::uint32_t>(B.generators().size());
  // (M/A)^k and the single vector (b_1, ..., b_k).
  std::vector<Vec> rels;
  std::vector<std::int64_t> degs;
  const auto quotient_rels = quotient(A).relations();
  for (std::uint32_t c = 0; c < k; ++c) {
    for (const auto& r : quotient_rels) rels.push_back(shift_components(r, static_cast<std::int64_t>(c) * n));
    degs.insert(degs.end(), M.degrees().begin(), M.degrees().end());
  }
  Vec stacked;
  for (std::uint32_t c = 0; c < k; ++c)
    stacked = add(stacked, shift_components(B.generators()[c], static_cast<std::int64_t>(c) * n), ring->field());
  PresentedModule ambient(ring, n * k, std::move(rels), std::move(degs));
  return Submodule(R1, syzygies(ambient, {stacked}));
}

Submodule ideal(const RingPtr& ring, std::vector<Poly> gens) {
  return Submodule(PresentedModule::free(ring, 1), std::move(gens));
}

Submodule ideal_times(const Submodule& I, const PresentedModule& M) {
  require_same_ring(I.ring(), M.ring());
  const auto& F = M.ring()->field();
  std::vector<Vec> gens;
  for (const auto& f : I.generators())
    for (std::uint32_t j = 0; j < M.ngens(); ++j) gens.push_back(mul(component(f, 0), unit_vector(j), F));
  return Submodule(M, std::move(gens));
}

PresentedModule quotient(const Submodule& N) {
  const auto& M = N.ambient();
  auto rels = M.relations();
  rels.insert(rels.end(), N.generators().begin(), N.generators().end());
  return PresentedModule(M.ring(), M.ngens(), std::move(rels), M.degrees());
}

PresentedModule direct_sum(const PresentedModule& a, const PresentedModule& b) {
  require_same_ring(a.ring(), b.ring());
  auto rels = a.relations();
  for (const auto& r : b.relations()) rels.push_back(shift_components(r, a.ngens()));
  auto degs = a.degrees();
  degs.insert(degs.end(), b.degrees().begin(), b.degrees().end());
  return PresentedModule(a.ring(), a.ngens() + b.ngens(), std::move(rels), std::move(degs));
}

Vec tensor_elements(const Vec& a, const Vec& b, std::uint32_t b_rank, const Zp& F) {
  std::vector<Term> out;
  for (const auto& s : a.terms)
    for (const auto& t : b.terms)
      out.push_back(Term{s.mono * t.mono, s.comp * b_rank + t.comp, F.mul(s.coef, t.coef)});
  normalize(out, F);
  return Vec{std::move(out)};
}

PresentedModule tensor_presentation(const PresentedModule& a, const PresentedModule& b) {
  require_same_ring(a.ring(), b.ring());
  const auto& F = a.ring()->field();
  const std::uint32_t na = a.ngens(), nb = b.ngens();
  std::vector<Vec> rels;
  for (const auto& r : a.relations())
    for (std::uint32_t j = 0; j < nb; ++j) rels.push_back(tensor_elements(r, unit_vector(j), nb, F));
  for (std::uint32_t i = 0; i < na; ++i)
    for (const auto& s : b.relations()) rels.push_back(tensor_elements(unit_vector(i), s, nb, F));
  std::vector<std::int64_t> degs;
  for (std::uint32_t i = 0; i < na; ++i)
    for (std::uint32_t j = 0; j < nb; ++j) degs.push_back(a.degrees()[i] + b.degrees()[j]);
  return PresentedModule(a.ring(), na * nb, std::move(rels), std::move(degs));
}

// ---------------------------------------------------------------------------
// Hom into the ring

Poly HomIntoRing::evaluate(const Vec& gamma_coords, const Vec& u, const Zp& F) const {
  Vec gamma;
  auto coeffs = components(gamma_coords, static_cast<std::uint32_t>(maps.size()));
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (!coeffs[k].is_zero()) gamma = add(gamma, mul(coeffs[k], maps[k], F), F);
  Poly out;
  const std::uint32_t n = std::max(gamma.rank_hint(), u.rank_hint());
  auto g = components(gamma, n);
  auto x = components(u, n);
  for (std::uint32_t i = 0; i < n; ++i) out = add(out, mul(g[i], x[i], F), F);
  return module.ring()->reduce(out);
}

HomIntoRing hom_into_ring(const PresentedModule& M) {
  const auto& ring = M.ring();
  const std::uint32_t n = M.ngens();
  const auto m = static_cast<std::uint32_t>(M.relations().size());
  std::vector<std::int64_t> dual_degs;
  for (auto d : M.degrees()) dual_degs.push_back(-d);
  std::vector<Vec> maps;
  if (m == 0) {
    for (std::uint32_t i = 0; i < n; ++i) maps.push_back(unit_vector(i));
  } else {
    // Row i of the relation matrix as a vector in R^m; the column degrees make it homogeneous.
    const auto order = M.order();
    std::vector<std::int64_t> col_degs;
    for (const auto& r : M.relations()) col_degs.push_back(-lead_degree(r, order));
    auto Rm = PresentedModule::free(ring, m, col_degs);
    std::vector<Vec> rows(n);
    for (std::uint32_t c = 0; c < m; ++c) {
      auto parts = components(M.relations()[c], n);
      for (std::uint32_t i = 0; i < n; ++i) rows[i] = add(rows[i], in_component(parts[i], c), ring->field());
    }
    auto free_dual = PresentedModule::free(ring, n, dual_degs);
    maps = Submodule(free_dual, syzygies(Rm, rows)).trimmed().generators();
  }
  auto free_dual = PresentedModule::free(ring, n, dual_degs);
  std::vector<std::int64_t> hom_degs;
  for (const auto& g : maps) hom_degs.push_back(lead_degree(g, free_dual.order()));
  auto rels = syzygies(free_dual, maps);
  PresentedModule hom(ring, static_cast<std::uint32_t>(maps.size()), std::move(rels), std::move(hom_degs));
  return HomIntoRing{std::move(hom), std::move(maps)};
}

Submodule evaluation_ideal(const PresentedModule& M, const Vec& u) {
  auto hom = hom_into_ring(M);
  const auto& F = M.ring()->field();
  std::vector<Poly> gens;
  for (std::size_t k = 0; k < hom.maps.size(); ++k)
    gens.push_back(hom.evaluate(unit_vector(static_cast<std::uint32_t>(k)), u, F));
  return ideal(M.ring(), std::move(gens));
}

// ---------------------------------------------------------------------------
// Frobenius and base change

namespace {

std::uint64_t power_of(std::uint32_t p, std::uint32_t e) {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) q *= p;
  return q;
}

}  // namespace

PresentedModule frobenius_module(const PresentedModule& M, std::uint32_t e) {
  if (e == 0) return M;
  const std::uint64_t q = power_of(M.ring()->characteristic(), e);
  std::vector<Vec> rels;
  for (const auto& r : M.relations()) rels.push_back(frobenius(r, q));
  std::vector<std::int64_t> degs;
  for (auto d : M.degrees()) degs.push_back(d * static_cast<std::int64_t>(q));
  return PresentedModule(M.ring(), M.ngens(), std::move(rels), std::move(degs));
}

Vec frobenius_element(const Vec& u, std::uint32_t e, std::uint32_t p) { return frobenius(u, power_of(p, e)); }

namespace {

// Common factor s with deg psi(x_i) = s * deg x_i, when the map is graded up to scaling.
std::optional<std::int64_t> degree_scale(const RingMap& psi) {
  std::optional<std::int64_t> s;
  for (std::size_t i = 0; i < psi.images.size(); ++i) {
    const auto& img = psi.images[i];
    if (img.is_zero()) continue;
    if (!is_homogeneous(img, psi.target->weights(), {})) return std::nullopt;
    const auto d = img.terms.front().mono.weighted_degree(psi.target->weights());
    const auto w = psi.source->weights()[i];
    if (d % w != 0) return std::nullopt;
    if (s && *s != d / w) return std::nullopt;
    s = d / w;
  }
  return s.value_or(1);
}

}  // namespace

PresentedModule base_change(const PresentedModule& M, const RingMap& psi) {
  require_same_ring(M.ring(), psi.source);
  std::vector<Vec> rels;
  for (const auto& r : M.relations()) rels.push_back(psi.apply(r));
  auto degs = M.degrees();
  if (auto s = degree_scale(psi))
    for (auto& d : degs) d *= *s;
  return PresentedModule(psi.target, M.ngens(), std::move(rels), std::move(degs));
}

Submodule ring_preimage(const RingMap& psi, const PresentedModule& M, const Submodule& K) {
  require_same_ring(M.ring(), psi.source);
  require_same_ring(K.ring(), psi.target);
  if (K.ambient().ngens() != M.ngens()) throw DimensionError("preimage target has the wrong rank");
  const std::uint32_t n = M.ngens();
  auto target_input = K.generators();
  for (const auto& r : K.ambient().lifted_relations()) target_input.push_back(r);

  if (psi.is_variable_identity()) return Submodule(M, std::move(target_input));

  const std::size_t ns = psi.target->nvars();
  const std::size_t nt = psi.source->nvars();
  if (ns + nt > kMaxVars) throw ResourceError("too many variables for elimination");
  const auto& F = psi.target->field();

  MonomialOrder order;
  order.weights = psi.target->weights();
  for (std::size_t i = 0; i < nt; ++i) {
    std::int64_t d = psi.images[i].is_zero() ? 1 : max_degree(psi.images[i], psi.target->weights(), {});
    order.weights.push_back(static_cast<int>(std::max<std::int64_t>(1, d)));
  }
  order.block_ends = {ns, ns + nt};
  order.perm = psi.target->variable_ranking();
  for (auto v : psi.source->variable_ranking()) order.perm.push_back(ns + v);
  order.shifts = K.ambient().degrees();

  std::vector<Vec> input = std::move(target_input);
  for (std::size_t i = 0; i < nt; ++i) {
    Poly link = sub(monomial_vec(Monomial::var(ns + i), 1), psi.images[i], F);
    for (std::uint32_t j = 0; j < n; ++j) input.push_back(in_component(link, j));
  }
  GroebnerBasis gb = groebner(input, order, F);

  std::vector<Vec> gens;
  for (const auto& g : gb.elements()) {
    bool eliminated = true;
    for (const auto& t : g.terms)
      for (std::size_t v = 0; v < ns; ++v)
        if (t.mono.e[v] != 0) eliminated = false;
    if (!eliminated) continue;
    Vec h = g;
    for (auto& t : h.terms) {
      Monomial m;
      for (std::size_t i = 0; i < nt; ++i) m.e[i] = t.mono.e[ns + i];
      t.mono = m;
    }
    normalize(h.terms, F);
    gens.push_back(std::move(h));
  }
  return Submodule(M, std::move(gens));
}

// ---------------------------------------------------------------------------
// Minimal presentations

MinimalPresentation minimal_presentation(const PresentedModule& M) {
  if (!M.is_homogeneous()) throw ConstructionError("minimal presentation requires homogeneous data");
  const auto& ring = M.ring();
  const auto& F = ring->field();

  std::vector<Vec> rels = M.relations();
  std::vector<std::int64_t> degs = M.degrees();
  std::vector<std::uint32_t> alive(M.ngens());
  std::iota(alive.begin(), alive.end(), 0u);
  // Images of the original generators, expressed in the original indexing with
  // eliminated generators substituted away.
  std::vector<Vec> to_img;
  for (std::uint32_t j = 0; j < M.ngens(); ++j) to_img.push_back(unit_vector(j));

  for (;;) {
    bool found = false;
    for (std::size_t c = 0; c < rels.size() && !found; ++c) {
      for (const auto& t : rels[c].terms) {
        if (!t.mono.is_one()) continue;
        // Generator t.comp equals -(1/u) * (rest of the column).
        const std::uint32_t i = t.comp;
        const auto inv = F.inv(t.coef);
        Vec rest = sub(rels[c], constant(t.coef, i), F);
        Vec replacement = scale(rest, F.neg(inv), F);
        auto substitute_gen = [&](const Vec& v) {
          Poly coeff = component(v, i);
          if (coeff.is_zero()) return v;
          Vec without = sub(v, in_component(coeff, i), F);
          return ring->reduce(add(without, mul(coeff, replacement, F), F));
        };
        std::vector<Vec> next;
        for (std::size_t c2 = 0; c2 < rels.size(); ++c2)
          if (c2 != c) next.push_back(substitute_gen(rels[c2]));
        rels = std::move(next);
        for (auto& v : to_img) v = substitute_gen(v);
        alive.erase(std::find(alive.begin(), alive.end(), i));
        found = true;
        break;
      }
    }
    if (!found) break;
  }

  // Renumber the surviving generators.
  std::vector<std::int64_t> new_index(M.ngens(), -1);
  std::vector<std::int64_t> new_degs;
  for (std::size_t k = 0; k < alive.size(); ++k) {
    new_index[alive[k]] = static_cast<std::int64_t>(k);
    new_degs.push_back(degs[alive[k]]);
  }
  auto renumber = [&](const Vec& v) {
    Vec r = v;
    for (auto& t : r.terms) t.comp = static_cast<std::uint32_t>(new_index[t.comp]);
    std::sort(r.terms.begin(), r.terms.end(), storage_before);
    return r;
  };
  std::vector<Vec> min_rels;
  for (const auto& r : rels) {
    auto v = renumber(r);
    if (!v.is_zero()) min_rels.push_back(std::move(v));
  }
  PresentedModule minimal(ring, static_cast<std::uint32_t>(alive.size()), std::move(min_rels), new_degs);
  std::vector<Vec> to_images;
  for (const auto& v : to_img) to_images.push_back(renumber(v));
  std::vector<Vec> from_images;
  for (auto j : alive) from_images.push_back(unit_vector(j));
  ModuleMap to_min(M, minimal, std::move(to_images), false);
  ModuleMap from_min(minimal, M, std::move(from_images), false);
  return MinimalPresentation{std::move(minimal), std::move(to_min), std::move(from_min)};
}

std::vector<std::uint32_t> IrrelevantFiber::coordinates(const Vec& u) const {
  auto v = minimal.to_minimal.apply(u);
  std::vector<std::uint32_t> out(minimal.module.ngens(), 0);
  for (const auto& t : v.terms)
    if (t.mono.is_one()) out[t.comp] = t.coef;
  return out;
}

bool IrrelevantFiber::is_nonzero(const Vec& u) const {
  auto c = coordinates(u);
  return std::any_of(c.begin(), c.end(), [](std::uint32_t x) { return x != 0; });
}

IrrelevantFiber quotient_by_irrelevant(const PresentedModule& M) { return IrrelevantFiber{minimal_presentation(M)}; }

bool in_irrelevant_multiple(const PresentedModule& M, const Vec& u) {
  std::vector<Vec> gens;
  for (std::size_t v = 0; v < M.ring()->nvars(); ++v)
    for (std::uint32_t j = 0; j < M.ngens(); ++j) gens.push_back(in_component(M.ring()->var(v), j));
  return Submodule(M, std::move(gens)).contains(u);
}

// ---------------------------------------------------------------------------
// Resolutions and dimension

FreeResolution free_resolution(const PresentedModule& M, std::uint32_t steps) {
  if (steps < 1) throw PreconditionError("resolution needs at least one step");
  const auto& ring = M.ring();
  FreeResolution res;
  auto mp = minimal_presentation(M);
  const auto& M0 = mp.module;
  res.ranks.push_back(M0.ngens());
  res.degrees.push_back(M0.degrees());

  auto F0 = PresentedModule::free(ring, M0.ngens(), M0.degrees());
  std::vector<Vec> cols = Submodule(F0, M0.relations()).trimmed().generators();
  PresentedModule current = F0;
  for (std::uint32_t i = 0; i < steps; ++i) {
    std::vector<std::int64_t> degs;
    for (const auto& c : cols) degs.push_back(lead_degree(c, current.order()));
    res.differentials.push_back(cols);
    res.ranks.push_back(static_cast<std::uint32_t>(cols.size()));
    res.degrees.push_back(degs);
    auto next = PresentedModule::free(ring, static_cast<std::uint32_t>(cols.size()), degs);
    if (cols.empty()) {
      current = next;
      continue;
    }
    cols = Submodule(next, syzygies(current, cols)).trimmed().generators();
    current = next;
  }
  return res;
}

PresentedModule syzygy(const PresentedModule& M, std::uint32_t d) {
  if (d < 1) throw PreconditionError("syzygy index must be at least 1");
  auto res = free_resolution(M, d + 1);
  return PresentedModule(M.ring(), res.ranks[d], res.differentials[d], res.degrees[d]);
}

std::uint32_t krull_dim(const RingPtr& ring, const std::vector<Poly>& elements) {
  std::vector<Vec> gens = ring->ideal_basis();
  for (const auto& e : elements) gens.push_back(e);
  auto gb = groebner(gens, ring->order(), ring->field());
  std::vector<Monomial> leads;
  for (std::size_t i = 0; i < gb.size(); ++i) {
    if (gb.lead(i).mono.is_one()) return 0;
    leads.push_back(gb.lead(i).mono);
  }
  const std::size_t n = ring->nvars();
  std::uint32_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const auto size = static_cast<std::uint32_t>(std::popcount(mask));
    if (size <= best) continue;
    bool independent = true;
    for (const auto& m : leads) {
      bool inside = true;
      for (std::size_t v = 0; v < n; ++v)
        if (m.e[v] != 0 && !(mask & (1u << v))) inside = false;
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return best;
}

bool is_partial_sop(const RingPtr& ring, const std::vector<Poly>& elements) {
  for (const auto& e : elements) {
    if (ring->is_zero(e)) return false;
    if (!is_homogeneous(e, ring->weights(), {}) || constant_coefficient(e) != 0) return false;
  }
  const auto d = krull_dim(ring);
  const auto dq = krull_dim(ring, elements);
  return d >= dq && d - dq == elements.size();
}

std::string format_vec(const Vec& v, const RingPtr& ring, std::uint32_t rank) {
  std::ostringstream out;
  out << '[';
  auto parts = components(v, std::max(rank, v.rank_hint()));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out << ", ";
    out << ring->format(parts[i]);
  }
  out << ']';
  return out.str();
}

}  // namespace clalg
