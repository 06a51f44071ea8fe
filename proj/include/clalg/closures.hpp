#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "clalg/module.hpp"

namespace clalg {

enum class Status { EXACT, BOUNDED_CERTIFIED, UNKNOWN };
const char* to_string(Status s);
/// The weaker of two statuses (UNKNOWN < BOUNDED_CERTIFIED < EXACT).
Status combine(Status a, Status b);

enum class Membership { IN, OUT, LIKELY_OUT, UNKNOWN };
const char* to_string(Membership m);

/// Answer to "is u in N^cl_M".
struct ElementVerdict {
  Membership verdict = Membership::UNKNOWN;
  Status status = Status::EXACT;
  /// Tight-closure multiplier c, when one certified the answer.
  std::optional<Poly> witness;
  std::uint32_t e_max = 0;
  /// For exact kinds: u over the generators of the computed closure. For the
  /// bounded tight test: one certificate per Frobenius level, c*F^e(u) over
  /// the generators of F^e(N) and the relations of F^e(M).
  std::vector<MembershipCertificate> certificates;
  bool certificates_verified = false;
};

struct ClosureVerdict {
  Submodule closure;
  Status status = Status::EXACT;
  std::uint32_t e_max = 0;
  std::vector<std::string> diagnostics;
  /// Sum closures: the plain sum before the idempotence pass, if the pass changed it.
  std::optional<Submodule> before_idempotence_pass;
};

class ClosureOp {
 public:
  virtual ~ClosureOp() = default;

  virtual std::string kind() const = 0;
  virtual std::string describe() const { return kind(); }
  /// True for kinds whose verdicts are EXACT.
  virtual bool exact() const { return true; }

  /// N^cl_M with M = N.ambient().
  virtual ClosureVerdict close(const Submodule& N) const = 0;
  /// Membership of u in N^cl_M. The default computes the closure.
  virtual ElementVerdict test(const Submodule& N, const Vec& u) const;
};

using Closure = std::shared_ptr<const ClosureOp>;

inline ClosureVerdict close(const Closure& cl, const Submodule& N) { return cl->close(N); }

Closure identity_closure();
/// cl_S for a finitely presented R-module S. With `unit_generator` set (S an
/// R-algebra whose given generator is 1) only s = 1 is used.
Closure module_closure(PresentedModule S, std::optional<std::uint32_t> unit_generator = std::nullopt);
/// cl_A for an R-algebra A given as a ring map R -> A: u is in N^cl iff
/// 1 (x) u lies in im(A (x) N -> A (x) M).
Closure algebra_closure(RingMap psi, std::string label = "");
/// Union (sum) over a user-asserted directed family.
Closure directed_family(std::vector<Closure> members);
/// Iterates N -> sum of member closures until the submodule stabilizes.
/// `max_rounds` = 0 means no cap other than the S-pair budget; a cap that is
/// hit raises ResourceError. `single_pass` skips stabilization (for testing
/// that the law checks catch a non-idempotent operation).
Closure generated_family(std::vector<Closure> members, std::uint32_t max_rounds = 0, bool single_pass = false);
/// Frobenius closure at level e: {u : F^e(u) in im(F^e(N) -> F^e(M))}.
Closure frobenius_closure(std::uint32_t e);
/// Bounded tight-closure search. Empty candidates = 1, the variables and the
/// Jacobian generators of the defining ideal.
Closure tight_bounded(std::vector<Poly> candidates, std::uint32_t e_max, std::int64_t degree_slack = -1);
/// {u in M : 1 (x) u in (im(S (x) N -> S (x) M))^inner} along phi: R -> S.
Closure pullback(RingMap phi, Closure inner, std::string label = "");
Closure intersection(std::vector<Closure> members);
Closure sum(std::vector<Closure> members);

/// The kernel of M -> (S (x) M / im(S (x) N))^t, u -> (s_i (x) u)_i over the
/// generators s_i of S (or only s = 1 when `unit_generator` is given).
Submodule module_closure_eval(const PresentedModule& S, const Submodule& N,
                              std::optional<std::uint32_t> unit_generator = std::nullopt);

/// Default test-element candidates of tight_bounded for a ring.
std::vector<Poly> default_candidates(const RingPtr& ring);

struct TestIdealApprox {
  Submodule ideal;
  std::vector<std::string> warnings;
  Status status = Status::EXACT;
};
/// Intersection over the given pairs of N :_R N^cl_M, an over-approximation of
/// the cl-test ideal that can only shrink as pairs are added.
TestIdealApprox test_ideal_approx(const Closure& cl, const std::vector<Submodule>& pairs);

struct PersistenceResult {
  bool holds = false;
  bool source_member = false;
  bool target_member = false;
};
/// Square R -> S, R -> B, S -> C, B -> C; checks that u in N^{cl_B} implies
/// 1 (x) u in (S (x) N)^{cl_C}. Throws PreconditionError if the square does not commute.
PersistenceResult persistence_check(const RingMap& r_to_s, const RingMap& r_to_b, const RingMap& s_to_c,
                                    const RingMap& b_to_c, const Submodule& N, const Vec& u);

}  // namespace clalg
