#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clalg/closures.hpp"

namespace clalg {

/// An injective map alpha: R -> M together with the presentation data used by
/// the phantom criterion: M's first generator is alpha(1), nu1 holds the
/// relation columns, phi_row their first coordinates and nu the remaining rows.
struct PhantomInstance {
  RingPtr ring;
  PresentedModule M;
  ModuleMap alpha;
  std::vector<Vec> nu1;  // relation columns, in R^n
  std::vector<Vec> nu;   // the same columns without the top row, in R^{n-1}
  Vec phi_row;           // (b_11, ..., b_1m) in R^m
  /// How the instance was obtained from the input map: "direct", "reordered"
  /// (alpha(1) was another generator) or "padded" (a new first generator with
  /// the relation a - alpha(1)).
  std::string normalization = "direct";

  std::uint32_t n() const { return M.ngens(); }
  std::size_t m() const { return nu1.size(); }
  /// Span in R^m of rows 2..n of nu1.
  Submodule row_span() const;
  /// The vector phi_row, as an element of R^m.
  const Vec& phi() const { return phi_row; }
};

/// Throws PreconditionError if alpha is not injective (unless the check is off).
PhantomInstance build_instance(const ModuleMap& alpha, bool check_injective = true);
/// Instance for 1 -> e_1 on an explicit presentation.
PhantomInstance instance_on(const PresentedModule& M, bool check_injective = true);
/// id_A (x) alpha over A, for psi: R -> A.
PhantomInstance base_change_instance(const PhantomInstance& inst, const RingMap& psi);
/// F^e(alpha) over the same ring.
PhantomInstance frobenius_instance(const PhantomInstance& inst, std::uint32_t e);
/// Same (M, alpha) with a redundant last generator equal to e_2 (e_1 when
/// n = 1) and the first relation column repeated.
PhantomInstance padded_presentation(const PhantomInstance& inst);

struct PhantomVerdict {
  bool phantom = false;
  Status status = Status::EXACT;
  ElementVerdict membership;
  /// 0^cl_R, when requested.
  std::optional<Submodule> zero_closure;
};

/// phi_row in (row_span)^cl_{R^m}.
PhantomVerdict phantom_check(const Closure& cl, const PhantomInstance& inst, bool record_zero_closure = false);

/// {gamma(alpha(1)) : gamma in Hom(M, R)}.
Submodule split_multiplier_ideal(const PhantomInstance& inst);

struct StarPhantomVerdict {
  bool phantom = false;
  Status status = Status::BOUNDED_CERTIFIED;
  std::uint32_t e_max = 0;
  std::vector<Submodule> levels;  // J_e for e = 0..e_max
  std::optional<Submodule> intersection;
  std::optional<Poly> witness;
};
StarPhantomVerdict star_phantom_check(const PhantomInstance& inst, std::uint32_t e_max);

struct Sym2Instance {
  PhantomInstance base;
  /// Generators e_i (x) e_j at index i * n + j; relation columns b_j (x) e_i
  /// (j major, i minor) followed by the symmetry columns e_i (x) e_j - e_j (x) e_i, i < j.
  PresentedModule sym2;
  ModuleMap alpha2;  // 1 -> e_1 (x) e_1
  std::size_t symmetry_columns = 0;
  /// Columns b_j (x) b_j' followed by the symmetry columns.
  std::vector<Vec> tensor_variant;
  bool alpha2_injective = false;

  /// Column index of e_i (x) e_j - e_j (x) e_i among the symmetry columns (0-based, i < j).
  static std::size_t symmetry_index(std::size_t n, std::size_t i, std::size_t j);
  /// The presentation of Q' = coker(alpha2): canonical columns with the top row removed.
  std::vector<Vec> q_prime_columns() const;
};
Sym2Instance sym2_extension(const PhantomInstance& inst);

struct SymLe2Quotient {
  /// Generators: 1, e_1..e_n, then e_i (x) e_j at 1 + n + i * n + j.
  PresentedModule module;
  ModuleMap comparison;  // to Sym^2(M)
  bool kernel_zero = false;
  bool cokernel_zero = false;
  bool iso() const { return kernel_zero && cokernel_zero; }
};
SymLe2Quotient symle2_quotient(const PhantomInstance& inst);

enum class AxiomOutcome { VACUOUS, HOLDS, FAILS, UNKNOWN };
const char* to_string(AxiomOutcome a);

struct AlgebraAxiomVerdict {
  AxiomOutcome outcome = AxiomOutcome::UNKNOWN;
  Status status = Status::EXACT;
  PhantomVerdict base;
  std::optional<PhantomVerdict> sym2;
  std::vector<std::string> notes;
};
AlgebraAxiomVerdict algebra_axiom_check(const Closure& cl, const PhantomInstance& inst);

}  // namespace clalg
