#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clalg/closures.hpp"

namespace clalg {

enum class AxiomVerdict { PASS, VACUOUS_PASS, FAIL, UNKNOWN };
const char* to_string(AxiomVerdict v);

/// u lies in `member_of` but not in `not_member_of`. Both are concrete
/// submodules, so the violation re-checks with two memberships.
struct Counterexample {
  Vec element;
  Submodule member_of;
  Submodule not_member_of;
  std::string note;
  std::optional<std::uint64_t> seed;

  bool recheck() const { return member_of.contains(element) && !not_member_of.contains(element); }
};

/// Outcome of an instance-level axiom check. PASS only ever means that no
/// counterexample was found among the tested instances.
struct AxiomReport {
  std::string axiom;
  std::string instance;
  AxiomVerdict verdict = AxiomVerdict::UNKNOWN;
  Status status = Status::EXACT;
  std::uint32_t e_max = 0;  // bound of a bounded closure, 0 otherwise
  std::size_t instances_tested = 0;
  std::optional<Counterexample> counterexample;
  std::vector<std::string> notes;

  static constexpr const char* scope = "refuter: PASS means no counterexample among the tested instances";
  bool passed() const { return verdict == AxiomVerdict::PASS || verdict == AxiomVerdict::VACUOUS_PASS; }
};

/// f(N^cl_M) in f(N)^cl_W, checked on the generators of N^cl_M.
AxiomReport check_functoriality(const Closure& cl, const ModuleMap& f, const Submodule& N);
/// N^cl_M = N implies 0^cl_{M/N} = 0.
AxiomReport check_semiresiduality(const Closure& cl, const Submodule& N);
/// The irrelevant ideal is closed in R.
AxiomReport check_faithfulness(const Closure& cl, const RingPtr& ring);
/// 0^cl_R = 0.
AxiomReport zero_closed(const Closure& cl, const RingPtr& ring);
/// (Rv)^cl_M cap ker f in (Jv)^cl_M for f: M -> R/J, J = (x_1..x_k), f(v) = x_{k+1} + J.
/// `f_values` are the images in R of the generators of M. Precondition
/// failures raise PreconditionError.
AxiomReport check_gcc(const Closure& cl, const std::vector<Poly>& xs, const PresentedModule& M,
                      const std::vector<Poly>& f_values, const Vec& v);

struct RandomInstance {
  std::uint64_t seed = 0;
  Submodule N;
  Submodule N_bigger;  // contains N
};
/// Seeded random graded module (<= 4 generators, <= 4 relations, entry degree
/// <= 3) with nested submodules N in N'.
RandomInstance random_instance(const RingPtr& ring, std::uint64_t seed);

/// Extension, idempotence and order preservation on `count` seeded instances
/// per ring. Instances are processed in seed order; with threads > 1 they are
/// evaluated concurrently and merged in the same order.
AxiomReport closure_law_suite(const Closure& cl, const std::vector<RingPtr>& rings, std::size_t count,
                              std::uint64_t seed, unsigned threads = 1);

/// Generators of N^cl_M that the bounded tight test does not report IN;
/// flagged for review, never treated as failures.
std::vector<Vec> tight_containment_review(const Closure& cl, const Submodule& N, std::uint32_t e_max);

}  // namespace clalg
