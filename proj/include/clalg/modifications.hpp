#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clalg/phantom.hpp"

namespace clalg {

/// x_{k+1} u = sum x_i m_i in M with u outside (x_1..x_k)M.
struct BadRelation {
  PresentedModule M;
  std::vector<Poly> sop;  // x_1..x_{k+1}
  Vec u;                  // m_{k+1}
  std::vector<Vec> m;     // m_1..m_k
  /// Normal form of u modulo (x_1..x_k)M; nonzero.
  Vec remainder;

  std::size_t k() const { return sop.size() - 1; }
  /// Re-checks the equation and the non-membership from scratch.
  bool verify() const;
};

/// Sequences accepted by find_bad_relation. The relaxed check only asks that
/// x_1..x_k cut the dimension of Supp M by k; strict asks it of x_1..x_{k+1}.
bool is_partial_sop_on(const PresentedModule& M, const std::vector<Poly>& xs);

/// Tries the prefixes x_1..x_{k+1}, k = 1..len-1, in order and returns the
/// first Groebner-ordered generator of ((x_1..x_k)M :_M x_{k+1}) outside
/// (x_1..x_k)M. Throws PreconditionError on a non-sop input.
std::optional<BadRelation> find_bad_relation(const PresentedModule& M, const std::vector<Poly>& xs,
                                             bool strict = false);

struct Modification {
  PhantomInstance instance;  // R -> M'
  ModuleMap from_previous;   // M -> M', m -> m
};
/// M' = M[X_1..X_k]_{<=1} / R(m_{k+1} - sum x_i X_i) on n(k+1) generators
/// w_j X^a (block a, generator j at a * n + j), with the m(k+1) block-diagonal
/// relation columns followed by the F column.
Modification partial_algebra_modification(const PhantomInstance& inst, const BadRelation& rel);

struct SymStep {
  PhantomInstance instance;  // R -> Sym^2(M), 1 -> e_1 (x) e_1
  ModuleMap from_previous;   // m -> m (x) e_1
};
/// Throws ResourceError if Sym^2(M) would have more than max_generators generators (0 = no cap).
SymStep sym_step(const PhantomInstance& inst, std::uint32_t max_generators = 0);

enum class StageKind { INITIAL, MODIFY, SYM2 };
const char* to_string(StageKind k);

struct BuildStage {
  StageKind kind = StageKind::INITIAL;
  PhantomInstance instance;
  std::optional<ModuleMap> from_previous;
  std::optional<BadRelation> relation;  // MODIFY stages; empty when none was found
  bool unit_outside_mM = true;          // alpha(1) not in mM
  std::optional<PhantomVerdict> phantom;
};

enum class BuildStatus { COMPLETE, FAILURE, BUDGET_EXHAUSTED };
const char* to_string(BuildStatus s);

struct BuildBudget {
  std::uint64_t spairs = 0;          // total over the build; 0 = unlimited
  std::uint32_t max_generators = 0;  // per stage; 0 = unlimited
};

/// Finite shadow of the big CM construction. Never a proof of anything.
struct BuildTrace {
  std::vector<BuildStage> stages;
  BuildStatus status = BuildStatus::COMPLETE;
  std::vector<std::string> notes;
  std::uint64_t spairs_used = 0;
};

/// Alternates bad-relation modifications with Sym^2 steps: round r runs one
/// MODIFY sweep, followed by a SYM2 stage unless it is the last round.
BuildTrace bcm_build(const RingPtr& ring, const Closure& cl, const std::vector<Poly>& sop, std::uint32_t rounds,
                     BuildBudget budget = {});

struct ChainVerdict {
  bool phantom = true;
  Status status = Status::EXACT;
  std::vector<PhantomVerdict> stages;
  /// 1-based index of the first non-phantom R -> M_i.
  std::optional<std::size_t> first_failure;
};
/// maps[0] : R -> M_1, maps[i] : M_i -> M_{i+1}.
ChainVerdict chain_phantom_check(const std::vector<ModuleMap>& maps, const Closure& cl);

}  // namespace clalg
