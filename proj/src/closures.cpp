#include "clalg/closures.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "clalg/errors.hpp"
#include "clalg/linalg.hpp"

namespace clalg {

const char* to_string(Status s) {
  switch (s) {
    case Status::EXACT: return "EXACT";
    case Status::BOUNDED_CERTIFIED: return "BOUNDED_CERTIFIED";
    case Status::UNKNOWN: return "UNKNOWN";
  }
  return "?";
}

Status combine(Status a, Status b) {
  if (a == Status::UNKNOWN || b == Status::UNKNOWN) return Status::UNKNOWN;
  if (a == Status::BOUNDED_CERTIFIED || b == Status::BOUNDED_CERTIFIED) return Status::BOUNDED_CERTIFIED;
  return Status::EXACT;
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::IN: return "IN";
    case Membership::OUT: return "OUT";
    case Membership::LIKELY_OUT: return "LIKELY_OUT";
    case Membership::UNKNOWN: return "UNKNOWN";
  }
  return "?";
}

ElementVerdict ClosureOp::test(const Submodule& N, const Vec& u) const {
  auto v = close(N);
  ElementVerdict out;
  out.status = v.status;
  out.e_max = v.e_max;
  if (v.status == Status::UNKNOWN) return out;
  if (auto cert = v.closure.membership(u)) {
    out.verdict = Membership::IN;
    out.certificates.push_back(*cert);
    out.certificates_verified = cert->verified;
  } else {
    out.verdict = v.status == Status::EXACT ? Membership::OUT : Membership::LIKELY_OUT;
  }
  return out;
}

namespace {

std::uint64_t frobenius_q(const RingPtr& ring, std::uint32_t e) {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) q *= ring->characteristic();
  return q;
}

/// F^e(N) inside F^e(M).
Submodule frobenius_submodule(const Submodule& N, std::uint32_t e) {
  const auto q = frobenius_q(N.ring(), e);
  auto Me = frobenius_module(N.ambient(), e);
  std::vector<Vec> gens;
  for (const auto& g : N.generators()) gens.push_back(frobenius(g, q));
  return Submodule(Me, std::move(gens));
}

class IdentityClosure : public ClosureOp {
 public:
  std::string kind() const override { return "identity"; }
  ClosureVerdict close(const Submodule& N) const override { return ClosureVerdict{N}; }
};

class ModuleClosure : public ClosureOp {
 public:
  ModuleClosure(PresentedModule S, std::optional<std::uint32_t> unit) : S_(std::move(S)), unit_(unit) {}
  std::string kind() const override { return unit_ ? "algebra_module" : "module"; }
  std::string describe() const override {
    return kind() + "(S with " + std::to_string(S_.ngens()) + " generators over " + S_.ring()->name() + ")";
  }
  ClosureVerdict close(const Submodule& N) const override {
    if (N.ring() != S_.ring()) throw DimensionError("module closure over a different ring");
    return ClosureVerdict{module_closure_eval(S_, N, unit_)};
  }

 private:
  PresentedModule S_;
  std::optional<std::uint32_t> unit_;
};

class PullbackClosure : public ClosureOp {
 public:
  PullbackClosure(RingMap phi, Closure inner, std::string kind, std::string label)
      : phi_(std::move(phi)), inner_(std::move(inner)), kind_(std::move(kind)), label_(std::move(label)) {}
  std::string kind() const override { return kind_; }
  std::string describe() const override {
    std::string s = kind_ + "(" + phi_.source->name() + " -> " + phi_.target->name();
    if (!label_.empty()) s += " " + label_;
    if (kind_ == "pullback") s += ", inner " + inner_->describe();
    return s + ")";
  }
  bool exact() const override { return inner_->exact(); }

  ClosureVerdict close(const Submodule& N) const override {
    if (N.ring() != phi_.source) throw DimensionError("closure defined over " + phi_.source->name());
    const auto& M = N.ambient();
    auto SM = base_change(M, phi_);
    std::vector<Vec> gens;
    for (const auto& g : N.generators()) gens.push_back(phi_.apply(g));
    auto inner = inner_->close(Submodule(SM, std::move(gens)));
    ClosureVerdict out{ring_preimage(phi_, M, inner.closure)};
    out.status = inner.status;
    out.e_max = inner.e_max;
    out.diagnostics = inner.diagnostics;
    return out;
  }

  ElementVerdict test(const Submodule& N, const Vec& u) const override {
    if (kind_ == "algebra") {
      // 1 (x) u against the image directly: one membership instead of a preimage.
      if (N.ring() != phi_.source) throw DimensionError("closure defined over " + phi_.source->name());
      auto SM = base_change(N.ambient(), phi_);
      std::vector<Vec> gens;
      for (const auto& g : N.generators()) gens.push_back(phi_.apply(g));
      Submodule K(SM, std::move(gens));
      ElementVerdict out;
      if (auto cert = K.membership(phi_.apply(u))) {
        out.verdict = Membership::IN;
        out.certificates.push_back(*cert);
        out.certificates_verified = cert->verified;
      } else {
        out.verdict = Membership::OUT;
      }
      return out;
    }
    return ClosureOp::test(N, u);
  }

 private:
  RingMap phi_;
  Closure inner_;
  std::string kind_;
  std::string label_;
};

class FrobeniusClosure : public ClosureOp {
 public:
  explicit FrobeniusClosure(std::uint32_t e) : e_(e) {}
  std::string kind() const override { return "frobenius"; }
  std::string describe() const override { return "frobenius(e=" + std::to_string(e_) + ")"; }

  ClosureVerdict close(const Submodule& N) const override {
    ClosureVerdict out{N};
    out.e_max = e_;
    if (e_ == 0 || N.is_whole()) return out;
    const auto& M = N.ambient();
    auto K = frobenius_submodule(N, e_);
    auto psi = frobenius_map(N.ring(), e_);
    // ring_preimage expects K inside base_change(M, psi), which is F^e(M).
    out.closure = ring_preimage(psi, M, Submodule(base_change(M, psi), K.generators()));
    return out;
  }

  ElementVerdict test(const Submodule& N, const Vec& u) const override {
    auto K = frobenius_submodule(N, e_);
    ElementVerdict out;
    out.e_max = e_;
    const auto v = K.ring()->reduce(frobenius(u, frobenius_q(N.ring(), e_)));
    if (auto cert = K.membership(v)) {
      out.verdict = Membership::IN;
      out.certificates.push_back(*cert);
      out.certificates_verified = cert->verified;
    } else {
      out.verdict = Membership::OUT;
    }
    return out;
  }

 private:
  std::uint32_t e_;
};

Poly derivative(const Poly& f, std::size_t v, const Zp& F) {
  std::vector<Term> out;
  for (const auto& t : f.terms) {
    if (t.mono.e[v] == 0) continue;
    Term d = t;
    d.coef = F.mul(t.coef, F.from_int(t.mono.e[v]));
    d.mono.e[v] -= 1;
    if (d.coef) out.push_back(d);
  }
  normalize(out, F);
  return Vec{std::move(out)};
}

Poly monic(const Poly& f, const Zp& F) {
  if (f.is_zero()) return f;
  // Leading coefficient in the printing order: the first term of the grevlex-largest monomial.
  std::uint32_t lead = f.terms.front().coef;
  std::uint32_t best_deg = 0;
  for (const auto& t : f.terms)
    if (t.mono.total_degree() > best_deg) best_deg = t.mono.total_degree();
  for (const auto& t : f.terms)
    if (t.mono.total_degree() == best_deg) {
      lead = t.coef;
      break;
    }
  return scale(f, F.inv(lead), F);
}

void enumerate_monomials(const std::vector<int>& w, std::size_t v, std::int64_t remaining, Monomial& cur,
                         std::vector<Monomial>& out) {
  if (v == w.size()) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  for (std::int64_t k = 0; k * w[v] <= remaining; ++k) {
    cur.e[v] = static_cast<Exponent>(k);
    enumerate_monomials(w, v + 1, remaining - k * w[v], cur, out);
  }
  cur.e[v] = 0;
}

class TightBounded : public ClosureOp {
 public:
  TightBounded(std::vector<Poly> cands, std::uint32_t e_max, std::int64_t slack)
      : cands_(std::move(cands)), e_max_(e_max), slack_(slack) {}
  std::string kind() const override { return "tight_bounded"; }
  std::string describe() const override { return "tight_bounded(e_max=" + std::to_string(e_max_) + ")"; }
  bool exact() const override { return false; }

  std::vector<Poly> candidates(const RingPtr& ring) const {
    if (cands_.empty()) return default_candidates(ring);
    std::vector<Poly> out;
    for (const auto& c : cands_) {
      auto r = ring->reduce(c);
      if (r.is_zero()) throw PreconditionError("tight-closure candidates must be nonzero");
      out.push_back(r);
    }
    return out;
  }

  std::vector<Submodule> levels(const Submodule& N) const {
    std::vector<Submodule> out;
    for (std::uint32_t e = 0; e <= e_max_; ++e) out.push_back(frobenius_submodule(N, e));
    return out;
  }

  ElementVerdict test(const Submodule& N, const Vec& u) const override {
    const auto& ring = N.ring();
    if (!ring->is_domain()) throw PreconditionError("tight closure requires a domain");
    const auto& F = ring->field();
    auto K = levels(N);
    ElementVerdict out;
    out.status = Status::BOUNDED_CERTIFIED;
    out.e_max = e_max_;
    try {
      for (const auto& c : candidates(ring)) {
        std::vector<Vec> targets;
        bool pass = true;
        for (std::uint32_t e = 0; e <= e_max_ && pass; ++e) {
          targets.push_back(ring->reduce(mul(c, frobenius(u, frobenius_q(ring, e)), F)));
          pass = K[e].contains(targets.back());
        }
        if (!pass) continue;
        out.verdict = Membership::IN;
        out.witness = c;
        out.certificates_verified = true;
        for (std::uint32_t e = 0; e <= e_max_; ++e) {
          auto cert = K[e].membership(targets[e]);
          out.certificates.push_back(*cert);
          out.certificates_verified = out.certificates_verified && cert->verified;
        }
        return out;
      }
    } catch (const ResourceError&) {
      // a level outgrew the budget: no verdict either way
      return ElementVerdict{Membership::UNKNOWN, Status::UNKNOWN, std::nullopt, e_max_};
    }
    out.verdict = Membership::LIKELY_OUT;
    return out;
  }

  // Degree by degree, the set {u : c F^e(u) in F^e(N) for all e <= e_max} is
  // the kernel of an F_p-linear map on standard monomials of M/N.
  ClosureVerdict close(const Submodule& N) const override {
    const auto& ring = N.ring();
    if (!ring->is_domain()) throw PreconditionError("tight closure requires a domain");
    const auto& M = N.ambient();
    const auto& F = ring->field();
    if (!M.is_homogeneous()) throw PreconditionError("bounded tight closure needs a graded module");
    std::int64_t top = INT64_MIN, bottom = INT64_MAX;
    for (auto d : M.degrees()) {
      top = std::max(top, d);
      bottom = std::min(bottom, d);
    }
    for (const auto& g : N.generators()) {
      if (!M.is_homogeneous(g)) throw PreconditionError("bounded tight closure needs homogeneous generators");
      top = std::max(top, max_degree(g, ring->weights(), M.degrees()));
    }
    ClosureVerdict out{N};
    out.status = Status::BOUNDED_CERTIFIED;
    out.e_max = e_max_;
    if (M.ngens() == 0) return out;
    std::int64_t slack = slack_;
    if (slack < 0) slack = static_cast<std::int64_t>(ring->nvars()) * *std::max_element(ring->weights().begin(), ring->weights().end());
    top += slack;
    out.diagnostics.push_back("degrees searched: " + std::to_string(bottom) + ".." + std::to_string(top));

    const auto& basis = N.basis();
    auto K = levels(N);
    auto cands = candidates(ring);
    std::vector<Vec> gens = N.generators();
    for (std::int64_t d = bottom; d <= top; ++d) {
      std::vector<Vec> standard;
      for (std::uint32_t j = 0; j < M.ngens(); ++j) {
        std::vector<Monomial> monos;
        Monomial cur;
        if (d - M.degrees()[j] < 0) continue;
        enumerate_monomials(ring->weights(), 0, d - M.degrees()[j], cur, monos);
        for (const auto& m : monos) {
          Term t{m, j, 1};
          if (basis.find_divisor(t) < 0) standard.push_back(monomial_vec(m, 1, j));
        }
      }
      if (standard.empty()) continue;
      std::sort(standard.begin(), standard.end(), [](const Vec& a, const Vec& b) {
        return storage_before(a.terms.front(), b.terms.front());
      });
      for (const auto& c : cands) {
        std::map<std::tuple<std::uint32_t, std::uint32_t, Monomial>, std::size_t> rows;
        DenseMatrix A;
        for (std::uint32_t e = 0; e <= e_max_; ++e) {
          const auto q = frobenius_q(ring, e);
          for (std::size_t b = 0; b < standard.size(); ++b) {
            auto nf = K[e].normal_form(ring->reduce(mul(c, frobenius(standard[b], q), F)));
            for (const auto& t : nf.terms) {
              auto key = std::make_tuple(e, t.comp, t.mono);
              auto [it, fresh] = rows.try_emplace(key, A.size());
              if (fresh) A.emplace_back(standard.size(), 0);
              A[it->second][b] = t.coef;
            }
          }
        }
        for (const auto& v : nullspace(A, standard.size(), F)) {
          Vec el;
          for (std::size_t b = 0; b < standard.size(); ++b)
            if (v[b]) el = add(el, scale(standard[b], v[b], F), F);
          gens.push_back(el);
        }
      }
    }
    out.closure = Submodule(M, std::move(gens));
    return out;
  }

 private:
  std::vector<Poly> cands_;
  std::uint32_t e_max_;
  std::int64_t slack_;
};

class FamilyClosure : public ClosureOp {
 public:
  enum class Mode { INTERSECTION, SUM, DIRECTED, GENERATED };
  FamilyClosure(std::vector<Closure> members, Mode mode, std::uint32_t max_rounds = 0, bool single_pass = false)
      : members_(std::move(members)), mode_(mode), max_rounds_(max_rounds), single_pass_(single_pass) {
    if (members_.empty()) throw PreconditionError("closure family must be nonempty");
  }

  std::string kind() const override {
    switch (mode_) {
      case Mode::INTERSECTION: return "intersection";
      case Mode::SUM: return "sum";
      case Mode::DIRECTED: return "directed_family";
      case Mode::GENERATED: return single_pass_ ? "generated_family_single_pass" : "generated_family";
    }
    return "?";
  }
  std::string describe() const override {
    std::string s = kind() + "(";
    for (std::size_t i = 0; i < members_.size(); ++i) s += (i ? ", " : "") + members_[i]->describe();
    return s + ")";
  }
  bool exact() const override {
    return std::all_of(members_.begin(), members_.end(), [](const Closure& c) { return c->exact(); });
  }

  ClosureVerdict close(const Submodule& N) const override {
    switch (mode_) {
      case Mode::INTERSECTION: return close_intersection(N);
      case Mode::SUM:
      case Mode::DIRECTED: return close_sum(N);
      case Mode::GENERATED: return close_generated(N);
    }
    throw std::logic_error("unreachable");
  }

 private:
  // Sum of the member closures of N, with the combined status.
  ClosureVerdict one_step(const Submodule& N) const {
    ClosureVerdict out{N};
    for (const auto& m : members_) {
      auto v = m->close(N);
      out.status = combine(out.status, v.status);
      out.e_max = std::max(out.e_max, v.e_max);
      out.closure = clalg::sum(out.closure, v.closure);
      out.diagnostics.insert(out.diagnostics.end(), v.diagnostics.begin(), v.diagnostics.end());
    }
    return out;
  }

  ClosureVerdict close_intersection(const Submodule& N) const {
    std::optional<ClosureVerdict> out;
    for (const auto& m : members_) {
      auto v = m->close(N);
      if (!out) {
        out = v;
        continue;
      }
      out->status = combine(out->status, v.status);
      out->e_max = std::max(out->e_max, v.e_max);
      out->closure = intersect(out->closure, v.closure);
    }
    return *out;
  }

  ClosureVerdict close_sum(const Submodule& N) const {
    auto out = one_step(N);
    if (out.status == Status::UNKNOWN) return out;
    auto again = one_step(out.closure);
    if (!(again.closure == out.closure)) {
      out.diagnostics.push_back("idempotence pass enlarged the sum: the family is not directed on this input");
      out.before_idempotence_pass = out.closure;
      out.closure = again.closure;
    }
    return out;
  }

  ClosureVerdict close_generated(const Submodule& N) const {
    auto cur = one_step(N);
    if (single_pass_) return cur;
    for (std::uint32_t round = 1;; ++round) {
      if (max_rounds_ && round > max_rounds_)
        throw ResourceError("generated family did not stabilize within " + std::to_string(max_rounds_) + " rounds");
      auto next = one_step(cur.closure);
      next.status = combine(next.status, cur.status);
      if (next.closure == cur.closure) {
        cur.diagnostics.push_back("stabilized after " + std::to_string(round) + " round(s)");
        return cur;
      }
      cur = next;
    }
  }

  std::vector<Closure> members_;
  Mode mode_;
  std::uint32_t max_rounds_;
  bool single_pass_;
};

}  // namespace

Closure identity_closure() { return std::make_shared<IdentityClosure>(); }

Closure module_closure(PresentedModule S, std::optional<std::uint32_t> unit_generator) {
  if (unit_generator && *unit_generator >= S.ngens()) throw DimensionError("unit generator out of range");
  return std::make_shared<ModuleClosure>(std::move(S), unit_generator);
}

Closure algebra_closure(RingMap psi, std::string label) {
  return std::make_shared<PullbackClosure>(std::move(psi), identity_closure(), "algebra", std::move(label));
}

Closure directed_family(std::vector<Closure> members) {
  return std::make_shared<FamilyClosure>(std::move(members), FamilyClosure::Mode::DIRECTED);
}

Closure generated_family(std::vector<Closure> members, std::uint32_t max_rounds, bool single_pass) {
  return std::make_shared<FamilyClosure>(std::move(members), FamilyClosure::Mode::GENERATED, max_rounds, single_pass);
}

Closure frobenius_closure(std::uint32_t e) { return std::make_shared<FrobeniusClosure>(e); }

Closure tight_bounded(std::vector<Poly> candidates, std::uint32_t e_max, std::int64_t degree_slack) {
  return std::make_shared<TightBounded>(std::move(candidates), e_max, degree_slack);
}

Closure pullback(RingMap phi, Closure inner, std::string label) {
  return std::make_shared<PullbackClosure>(std::move(phi), std::move(inner), "pullback", std::move(label));
}

Closure intersection(std::vector<Closure> members) {
  return std::make_shared<FamilyClosure>(std::move(members), FamilyClosure::Mode::INTERSECTION);
}

Closure sum(std::vector<Closure> members) {
  return std::make_shared<FamilyClosure>(std::move(members), FamilyClosure::Mode::SUM);
}

Submodule module_closure_eval(const PresentedModule& S, const Submodule& N, std::optional<std::uint32_t> unit) {
  const auto& M = N.ambient();
  if (S.ring() != M.ring()) throw DimensionError("module closure over a different ring");
  const auto& F = M.ring()->field();
  const std::uint32_t nS = S.ngens(), nM = M.ngens();
  auto T = tensor_presentation(S, M);
  std::vector<Vec> image;
  for (std::uint32_t i = 0; i < nS; ++i)
    for (const auto& g : N.generators()) image.push_back(tensor_elements(unit_vector(i), g, nM, F));
  auto Q = quotient(Submodule(T, std::move(image)));

  std::vector<std::uint32_t> used;
  if (unit) used.push_back(*unit);
  else
    for (std::uint32_t i = 0; i < nS; ++i) used.push_back(i);
  if (used.empty()) return Submodule::whole(M);

  PresentedModule target = Q;
  for (std::size_t k = 1; k < used.size(); ++k) target = direct_sum(target, Q);
  const std::uint32_t block = Q.ngens();
  std::vector<Vec> imgs;
  for (std::uint32_t j = 0; j < nM; ++j) {
    Vec v;
    for (std::size_t k = 0; k < used.size(); ++k)
      v = add(v, unit_vector(static_cast<std::uint32_t>(k) * block + used[k] * nM + j), F);
    imgs.push_back(v);
  }
  auto ker = kernel(ModuleMap(M, target, std::move(imgs), false));
  auto gens = N.generators();
  gens.insert(gens.end(), ker.generators().begin(), ker.generators().end());
  return Submodule(M, std::move(gens));
}

std::vector<Poly> default_candidates(const RingPtr& ring) {
  const auto& F = ring->field();
  std::vector<Poly> out{ring->constant(1)};
  auto push = [&](const Poly& f) {
    auto r = ring->reduce(f);
    if (r.is_zero()) return;
    r = monic(r, F);
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  };
  for (std::size_t v = 0; v < ring->nvars(); ++v) push(ring->var(v));
  for (const auto& f : ring->ideal())
    for (std::size_t v = 0; v < ring->nvars(); ++v) push(derivative(f, v, F));
  return out;
}

TestIdealApprox test_ideal_approx(const Closure& cl, const std::vector<Submodule>& pairs) {
  if (pairs.empty()) throw PreconditionError("test ideal approximation needs at least one pair");
  const auto& ring = pairs.front().ring();
  TestIdealApprox out{Submodule::whole(PresentedModule::free(ring, 1))};
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i].ring() != ring) throw DimensionError("pairs over different rings");
    auto v = cl->close(pairs[i]);
    if (v.status == Status::UNKNOWN) {
      out.warnings.push_back("pair " + std::to_string(i) + " skipped: closure verdict UNKNOWN");
      continue;
    }
    out.status = combine(out.status, v.status);
    out.ideal = intersect(out.ideal, module_colon(pairs[i], v.closure));
  }
  return out;
}

PersistenceResult persistence_check(const RingMap& r_to_s, const RingMap& r_to_b, const RingMap& s_to_c,
                                    const RingMap& b_to_c, const Submodule& N, const Vec& u) {
  if (r_to_s.source != r_to_b.source || r_to_s.target != s_to_c.source || r_to_b.target != b_to_c.source ||
      s_to_c.target != b_to_c.target)
    throw DimensionError("maps do not form a square");
  if (N.ring() != r_to_s.source) throw DimensionError("submodule is not over the source ring");
  const auto& C = s_to_c.target;
  for (std::size_t i = 0; i < r_to_s.source->nvars(); ++i) {
    auto a = b_to_c.apply(r_to_b.images[i]);
    auto b = s_to_c.apply(r_to_s.images[i]);
    if (!C->is_zero(sub(a, b, C->field()))) throw PreconditionError("square does not commute");
  }
  PersistenceResult out;
  out.source_member = algebra_closure(r_to_b)->test(N, u).verdict == Membership::IN;
  auto MS = base_change(N.ambient(), r_to_s);
  std::vector<Vec> gens;
  for (const auto& g : N.generators()) gens.push_back(r_to_s.apply(g));
  out.target_member = algebra_closure(s_to_c)->test(Submodule(MS, std::move(gens)), r_to_s.apply(u)).verdict ==
                      Membership::IN;
  out.holds = !out.source_member || out.target_member;
  return out;
}

}  // namespace clalg
