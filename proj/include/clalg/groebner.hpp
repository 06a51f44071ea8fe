#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "clalg/poly.hpp"

namespace clalg {

/// Module monomial order.
///
/// Variables are split into consecutive blocks compared one after another
/// (a product order, used for elimination); inside a block the order is
/// weighted degree-reverse-lexicographic. Components carry degree shifts
/// that are added to the degree of the last block, and ties are broken by
/// component index (smaller index is larger). Components at or above
/// `track_start` sit strictly below all others, which makes the order an
/// elimination order for the leading components: this is how syzygies and
/// lift coefficients are extracted.
struct MonomialOrder {
  std::vector<int> weights;
  /// Variable at each position of the order (identity when empty). Blocks
  /// and the reverse-lexicographic tie break refer to positions.
  std::vector<std::size_t> perm;
  std::vector<std::size_t> block_ends;
  std::vector<std::int64_t> shifts;
  std::uint32_t track_start = std::numeric_limits<std::uint32_t>::max();

  std::size_t nvars() const { return weights.size(); }
  std::int64_t shift(std::uint32_t comp) const { return comp < shifts.size() ? shifts[comp] : 0; }
  std::int64_t degree(const Term& t) const { return t.mono.weighted_degree(weights) + shift(t.comp); }

  /// Positive if a > b, negative if a < b, zero on equal monomial and component.
  int compare(const Term& a, const Term& b) const;

  /// Single-block weighted degrevlex.
  static MonomialOrder grevlex(std::vector<int> weights, std::vector<std::int64_t> shifts = {},
                               std::vector<std::size_t> perm = {});
};

/// Counters accumulated by Groebner runs in the current thread.
struct GbCounters {
  std::uint64_t runs = 0;
  std::uint64_t spairs = 0;
  std::uint64_t reductions = 0;
};

/// Per-run S-pair budget (default 10^6); exceeding it raises ResourceError.
std::uint64_t spair_budget();
void set_spair_budget(std::uint64_t budget);
GbCounters& gb_counters();

/// Reduced Groebner basis of a submodule of a free module, with respect to a
/// fixed module order. Elements are monic and sorted by increasing leading
/// term, so equal modules give bit-identical bases.
class GroebnerBasis {
 public:
  GroebnerBasis(Zp F, MonomialOrder order) : F_(F), order_(std::move(order)) {}

  const Zp& field() const { return F_; }
  const MonomialOrder& order() const { return order_; }

  /// Basis elements in storage representation.
  std::vector<Vec> elements() const;
  std::size_t size() const { return polys_.size(); }

  /// Leading term of element i.
  const Term& lead(std::size_t i) const { return polys_[i].front(); }

  /// Fully reduced normal form.
  Vec normal_form(const Vec& v) const;
  bool contains(const Vec& v) const;

  /// Top-reduces v while its leading component is below `comp_limit`.
  /// Returns the remainder; a remainder with no term below the limit means
  /// v lies in the module modulo the components at or above the limit.
  Vec top_reduce_below(const Vec& v, std::uint32_t comp_limit) const;

  /// Elements whose leading component is at least `first_comp`.
  std::vector<Vec> elements_from_component(std::uint32_t first_comp) const;

  bool operator==(const GroebnerBasis& other) const;

  // Internal representation: terms sorted decreasingly in `order_`.
  using IPoly = std::vector<Term>;
  void append(IPoly p);
  IPoly to_internal(const Vec& v) const;
  Vec to_storage(const IPoly& p) const;
  IPoly reduce(IPoly f, bool full, std::uint32_t comp_limit) const;
  IPoly reduce_heap(IPoly f, IPoly result, bool full, std::uint32_t comp_limit) const;
  const IPoly& poly(std::size_t i) const { return polys_[i]; }
  int find_divisor(const Term& t) const;

 private:
  Zp F_;
  MonomialOrder order_;
  std::vector<IPoly> polys_;
  std::vector<std::uint32_t> sev_;
  std::vector<std::vector<int>> by_comp_;
};

/// Buchberger's algorithm with Gebauer-Moeller pair pruning and a sugar
/// selection strategy (ties broken by pair indices).
GroebnerBasis groebner(std::span<const Vec> generators, const MonomialOrder& order, const Zp& F);

}  // namespace clalg
