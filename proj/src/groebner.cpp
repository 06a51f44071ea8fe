#include "clalg/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include "clalg/errors.hpp"

namespace clalg {

namespace {

thread_local std::uint64_t g_budget = 1'000'000;
thread_local GbCounters g_counters;

std::uint32_t sev_of(const Monomial& m) {
  std::uint32_t s = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (m.e[i] != 0) s |= 1u << i;
  return s;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.e[i] != 0 && b.e[i] != 0) return false;
  return true;
}

}  // namespace

std::uint64_t spair_budget() { return g_budget; }
void set_spair_budget(std::uint64_t budget) { g_budget = budget; }
GbCounters& gb_counters() { return g_counters; }

int MonomialOrder::compare(const Term& a, const Term& b) const {
  const bool ta = a.comp >= track_start;
  const bool tb = b.comp >= track_start;
  if (ta != tb) return ta ? -1 : 1;
  const bool identity = perm.empty();
  std::size_t start = 0;
  for (std::size_t bi = 0; bi < block_ends.size(); ++bi) {
    const std::size_t end = block_ends[bi];
    std::int64_t da = 0, db = 0;
    for (std::size_t pos = start; pos < end; ++pos) {
      const std::size_t v = identity ? pos : perm[pos];
      da += static_cast<std::int64_t>(weights[v]) * a.mono.e[v];
      db += static_cast<std::int64_t>(weights[v]) * b.mono.e[v];
    }
    if (bi + 1 == block_ends.size()) {
      da += shift(a.comp);
      db += shift(b.comp);
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t pos = end; pos-- > start;) {
      const std::size_t v = identity ? pos : perm[pos];
      if (a.mono.e[v] != b.mono.e[v]) return a.mono.e[v] < b.mono.e[v] ? 1 : -1;
    }
    start = end;
  }
  if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
  return 0;
}

MonomialOrder MonomialOrder::grevlex(std::vector<int> weights, std::vector<std::int64_t> shifts,
                                     std::vector<std::size_t> perm) {
  MonomialOrder o;
  o.block_ends = {weights.size()};
  o.weights = std::move(weights);
  o.shifts = std::move(shifts);
  o.perm = std::move(perm);
  return o;
}

GroebnerBasis::IPoly GroebnerBasis::to_internal(const Vec& v) const {
  IPoly p = v.terms;
  std::sort(p.begin(), p.end(), [&](const Term& a, const Term& b) { return order_.compare(a, b) > 0; });
  return p;
}

Vec GroebnerBasis::to_storage(const IPoly& p) const {
  Vec v{p};
  std::sort(v.terms.begin(), v.terms.end(), storage_before);
  return v;
}

void GroebnerBasis::append(IPoly p) {
  const auto comp = p.front().comp;
  if (by_comp_.size() <= comp) by_comp_.resize(comp + 1);
  by_comp_[comp].push_back(static_cast<int>(polys_.size()));
  sev_.push_back(sev_of(p.front().mono));
  polys_.push_back(std::move(p));
}

int GroebnerBasis::find_divisor(const Term& t) const {
  if (t.comp >= by_comp_.size()) return -1;
  const std::uint32_t s = sev_of(t.mono);
  for (int i : by_comp_[t.comp]) {
    if ((sev_[i] & ~s) != 0) continue;
    if (polys_[i].front().mono.divides(t.mono)) return i;
  }
  return -1;
}

namespace {

// f[from..] - c * m * g, all sorted decreasingly in `order`.
GroebnerBasis::IPoly sub_multiple(const GroebnerBasis::IPoly& f, std::size_t from, std::uint32_t c,
                                  const Monomial& m, const GroebnerBasis::IPoly& g,
                                  const MonomialOrder& order, const Zp& F) {
  GroebnerBasis::IPoly r;
  r.reserve(f.size() - from + g.size());
  const std::uint32_t nc = F.neg(c);
  std::size_t i = from, j = 0;
  Term gt;
  bool have_gt = false;
  while (i < f.size() || j < g.size()) {
    if (!have_gt && j < g.size()) {
      gt = Term{g[j].mono * m, g[j].comp, F.mul(g[j].coef, nc)};
      have_gt = true;
    }
    if (!have_gt) {
      r.push_back(f[i++]);
      continue;
    }
    if (i == f.size()) {
      r.push_back(gt);
      have_gt = false;
      ++j;
      continue;
    }
    const int cmp = order.compare(f[i], gt);
    if (cmp > 0) {
      r.push_back(f[i++]);
    } else if (cmp < 0) {
      r.push_back(gt);
      have_gt = false;
      ++j;
    } else {
      const std::uint32_t s = F.add(f[i].coef, gt.coef);
      if (s != 0) r.push_back(Term{f[i].mono, f[i].comp, s});
      ++i;
      ++j;
      have_gt = false;
    }
  }
  return r;
}

void make_monic(GroebnerBasis::IPoly& p, const Zp& F) {
  if (p.empty() || p.front().coef == 1) return;
  const auto inv = F.inv(p.front().coef);
  for (auto& t : p) t.coef = F.mul(t.coef, inv);
}

}  // namespace

namespace {

struct MonoKey {
  Monomial mono;
  std::uint32_t comp;
  bool operator==(const MonoKey&) const = default;
};

struct MonoKeyHash {
  std::size_t operator()(const MonoKey& k) const {
    std::uint64_t h = 1469598103934665603ull ^ k.comp;
    for (auto x : k.mono.e) h = (h ^ x) * 1099511628211ull;
    return static_cast<std::size_t>(h);
  }
};

constexpr std::size_t kHeapThreshold = 48;

}  // namespace

// Long polynomials are reduced with a priority queue of pending terms and a
// hash accumulator, so one reduction step costs O(|g| log |f|) instead of a
// full merge.
GroebnerBasis::IPoly GroebnerBasis::reduce_heap(IPoly f, IPoly result, bool full, std::uint32_t comp_limit) const {
  auto greater = [this](const Term& a, const Term& b) { return order_.compare(a, b) < 0; };
  std::vector<Term> heap;
  std::unordered_map<MonoKey, std::uint32_t, MonoKeyHash> acc;
  acc.reserve(f.size() * 2);
  auto push = [&](const Monomial& m, std::uint32_t comp, std::uint32_t coef) {
    auto [it, inserted] = acc.try_emplace(MonoKey{m, comp}, coef);
    if (inserted) {
      heap.push_back(Term{m, comp, 0});
      std::push_heap(heap.begin(), heap.end(), greater);
      return;
    }
    it->second = F_.add(it->second, coef);
    if (it->second == 0) acc.erase(it);
  };
  for (const auto& t : f) push(t.mono, t.comp, t.coef);
  f.clear();
  auto pop = [&](Term& out) {
    while (!heap.empty()) {
      std::pop_heap(heap.begin(), heap.end(), greater);
      Term t = heap.back();
      heap.pop_back();
      auto it = acc.find(MonoKey{t.mono, t.comp});
      if (it == acc.end()) continue;
      t.coef = it->second;
      acc.erase(it);
      out = t;
      return true;
    }
    return false;
  };
  Term lt;
  bool reducing = true;
  while (pop(lt)) {
    if (!reducing) {
      result.push_back(lt);
      continue;
    }
    int d = lt.comp < comp_limit ? find_divisor(lt) : -1;
    if (d < 0) {
      result.push_back(lt);
      if (!full) reducing = false;
      continue;
    }
    ++g_counters.reductions;
    const IPoly& g = polys_[d];
    const Monomial m = lt.mono / g.front().mono;
    const std::uint32_t c = F_.neg(F_.mul(lt.coef, F_.inv(g.front().coef)));
    for (std::size_t k = 1; k < g.size(); ++k) push(g[k].mono * m, g[k].comp, F_.mul(g[k].coef, c));
  }
  return result;
}

GroebnerBasis::IPoly GroebnerBasis::reduce(IPoly f, bool full, std::uint32_t comp_limit) const {
  IPoly result;
  std::size_t pos = 0;
  while (pos < f.size()) {
    if (f.size() - pos > kHeapThreshold)
      return reduce_heap(IPoly(f.begin() + static_cast<std::ptrdiff_t>(pos), f.end()), std::move(result), full,
                         comp_limit);
    const Term& lt = f[pos];
    int d = lt.comp < comp_limit ? find_divisor(lt) : -1;
    if (d < 0) {
      if (!full) {
        result.insert(result.end(), f.begin() + static_cast<std::ptrdiff_t>(pos), f.end());
        return result;
      }
      result.push_back(lt);
      ++pos;
      continue;
    }
    ++g_counters.reductions;
    const IPoly& g = polys_[d];
    const Monomial m = lt.mono / g.front().mono;
    const std::uint32_t c = F_.mul(lt.coef, F_.inv(g.front().coef));
    f = sub_multiple(f, pos, c, m, g, order_, F_);
    pos = 0;
  }
  return result;
}

std::vector<Vec> GroebnerBasis::elements() const {
  std::vector<Vec> out;
  out.reserve(polys_.size());
  for (const auto& p : polys_) out.push_back(to_storage(p));
  return out;
}

std::vector<Vec> GroebnerBasis::elements_from_component(std::uint32_t first_comp) const {
  std::vector<Vec> out;
  for (const auto& p : polys_)
    if (p.front().comp >= first_comp) out.push_back(to_storage(p));
  return out;
}

Vec GroebnerBasis::normal_form(const Vec& v) const {
  return to_storage(reduce(to_internal(v), true, std::numeric_limits<std::uint32_t>::max()));
}

bool GroebnerBasis::contains(const Vec& v) const {
  return reduce(to_internal(v), false, std::numeric_limits<std::uint32_t>::max()).empty();
}

Vec GroebnerBasis::top_reduce_below(const Vec& v, std::uint32_t comp_limit) const {
  return to_storage(reduce(to_internal(v), false, comp_limit));
}

bool GroebnerBasis::operator==(const GroebnerBasis& other) const {
  if (polys_.size() != other.polys_.size()) return false;
  for (std::size_t i = 0; i < polys_.size(); ++i) {
    const auto& a = polys_[i];
    const auto& b = other.polys_[i];
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
      if (a[k].comp != b[k].comp || a[k].coef != b[k].coef || a[k].mono != b[k].mono) return false;
  }
  return true;
}

namespace {

struct Pair {
  std::int64_t sugar;
  std::uint32_t j;  // newer element (or input index for generator entries)
  std::uint32_t i;  // older element, or kInput for a queued generator
  Monomial lcm;
  std::uint32_t comp;

  static constexpr std::uint32_t kInput = std::numeric_limits<std::uint32_t>::max();

  bool operator<(const Pair& o) const {
    // Queued generators come before S-pairs of the same sugar.
    return std::make_tuple(sugar, i_rank(), j, i) < std::make_tuple(o.sugar, o.i_rank(), o.j, o.i);
  }
  std::uint32_t i_rank() const { return i == kInput ? 0u : 1u; }
};

}  // namespace

GroebnerBasis groebner(std::span<const Vec> generators, const MonomialOrder& order, const Zp& F) {
  ++g_counters.runs;
  GroebnerBasis work(F, order);

  bool ideal_mode = order.track_start > 0;
  for (const auto& g : generators)
    for (const auto& t : g.terms)
      if (t.comp != 0) ideal_mode = false;

  std::vector<GroebnerBasis::IPoly> inputs;
  std::set<Pair> pairs;
  for (const auto& g : generators) {
    if (g.is_zero()) continue;
    auto p = work.to_internal(g);
    std::int64_t sugar = INT64_MIN;
    for (const auto& t : p) sugar = std::max(sugar, order.degree(t));
    pairs.insert(Pair{sugar, static_cast<std::uint32_t>(inputs.size()), Pair::kInput, {}, 0});
    inputs.push_back(std::move(p));
  }

  std::vector<std::int64_t> sugar_of;
  std::vector<char> active;
  std::uint64_t spairs = 0;
  const std::uint64_t budget = g_budget;

  auto mono_degree = [&](const Monomial& m) { return m.weighted_degree(order.weights); };

  while (!pairs.empty()) {
    Pair pr = *pairs.begin();
    pairs.erase(pairs.begin());

    GroebnerBasis::IPoly h;
    if (pr.i == Pair::kInput) {
      h = std::move(inputs[pr.j]);
    } else {
      if (++spairs > budget) throw ResourceError("Groebner S-pair budget exceeded");
      ++g_counters.spairs;
      const auto& gi = work.poly(pr.i);
      const auto& gj = work.poly(pr.j);
      GroebnerBasis::IPoly a;
      a.reserve(gi.size());
      const Monomial mi = pr.lcm / gi.front().mono;
      for (const auto& t : gi) a.push_back(Term{t.mono * mi, t.comp, t.coef});
      h = sub_multiple(a, 0, 1, pr.lcm / gj.front().mono, gj, order, F);
    }
    h = work.reduce(std::move(h), false, std::numeric_limits<std::uint32_t>::max());
    if (h.empty()) continue;
    make_monic(h, F);

    const auto hidx = static_cast<std::uint32_t>(work.size());
    const Term hl = h.front();

    // Criterion B on pending S-pairs.
    for (auto it = pairs.begin(); it != pairs.end();) {
      if (it->i != Pair::kInput && it->comp == hl.comp && hl.mono.divides(it->lcm) &&
          lcm(work.lead(it->i).mono, hl.mono) != it->lcm && lcm(work.lead(it->j).mono, hl.mono) != it->lcm) {
        it = pairs.erase(it);
      } else {
        ++it;
      }
    }

    // New pairs, pruned by the M and F criteria (and the product criterion for ideals).
    struct Cand {
      std::uint32_t i;
      Monomial lcm;
      bool coprime;
      bool dead = false;
    };
    std::vector<Cand> cands;
    for (std::uint32_t i = 0; i < hidx; ++i) {
      if (!active[i] || work.lead(i).comp != hl.comp) continue;
      cands.push_back(Cand{i, lcm(work.lead(i).mono, hl.mono), coprime(work.lead(i).mono, hl.mono)});
    }
    for (auto& c : cands)
      for (const auto& d : cands)
        if (&c != &d && d.lcm != c.lcm && d.lcm.divides(c.lcm)) {
          c.dead = true;
          break;
        }
    std::map<Monomial, std::vector<Cand*>> groups;
    for (auto& c : cands)
      if (!c.dead) groups[c.lcm].push_back(&c);
    for (auto& [l, group] : groups) {
      bool drop = ideal_mode && std::any_of(group.begin(), group.end(), [](Cand* c) { return c->coprime; });
      if (drop) continue;
      const Cand* c = group.front();
      const auto& gi = work.lead(c->i).mono;
      std::int64_t s = std::max(sugar_of[c->i] + mono_degree(l / gi), pr.sugar + mono_degree(l / hl.mono));
      pairs.insert(Pair{s, hidx, c->i, l, hl.comp});
    }

    for (std::uint32_t i = 0; i < hidx; ++i)
      if (active[i] && work.lead(i).comp == hl.comp && hl.mono.divides(work.lead(i).mono)) active[i] = 0;

    std::int64_t hs = pr.sugar;
    for (const auto& t : h) hs = std::max(hs, order.degree(t));
    sugar_of.push_back(hs);
    active.push_back(1);
    work.append(std::move(h));
  }

  // Minimal basis, then tail-reduce, normalize and sort.
  std::vector<std::uint32_t> keep;
  for (std::uint32_t i = 0; i < work.size(); ++i) {
    if (!active[i]) continue;
    bool redundant = false;
    for (std::uint32_t k : keep)
      if (work.lead(k).comp == work.lead(i).comp && work.lead(k).mono.divides(work.lead(i).mono)) redundant = true;
    if (!redundant) keep.push_back(i);
  }
  GroebnerBasis minimal(F, order);
  std::sort(keep.begin(), keep.end(),
            [&](std::uint32_t a, std::uint32_t b) { return order.compare(work.lead(a), work.lead(b)) < 0; });
  for (auto i : keep) minimal.append(work.poly(i));

  GroebnerBasis result(F, order);
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    const auto& p = minimal.poly(k);
    GroebnerBasis::IPoly tail(p.begin() + 1, p.end());
    auto reduced = minimal.reduce(std::move(tail), true, std::numeric_limits<std::uint32_t>::max());
    GroebnerBasis::IPoly q;
    q.reserve(reduced.size() + 1);
    q.push_back(p.front());
    q.insert(q.end(), reduced.begin(), reduced.end());
    make_monic(q, F);
    result.append(std::move(q));
  }
  return result;
}

}  // namespace clalg
