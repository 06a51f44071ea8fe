#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "clalg/groebner.hpp"
#include "clalg/ring.hpp"

namespace clalg {

/// Finitely presented graded module coker(P^m -> P^n) over a graded ring.
///
/// Relation columns are vectors in the free module on the generators; over a
/// quotient ring the defining ideal times each generator is implicitly part
/// of the presentation.
class PresentedModule {
 public:
  PresentedModule(RingPtr ring, std::uint32_t ngens, std::vector<Vec> relations,
                  std::vector<std::int64_t> degrees = {});

  static PresentedModule free(RingPtr ring, std::uint32_t rank, std::vector<std::int64_t> degrees = {});

  const RingPtr& ring() const { return ring_; }
  std::uint32_t ngens() const { return ngens_; }
  const std::vector<Vec>& relations() const { return relations_; }
  const std::vector<std::int64_t>& degrees() const { return degrees_; }

  MonomialOrder order() const { return ring_->order(degrees_); }
  bool is_homogeneous() const;
  bool is_homogeneous(const Vec& v) const;

  /// Relations plus the defining ideal on every generator.
  std::vector<Vec> lifted_relations() const;

  /// Relation matrix entry (generator row, relation column).
  Poly entry(std::uint32_t row, std::size_t col) const { return component(relations_[col], row); }

  bool same_presentation(const PresentedModule& other) const;

 private:
  RingPtr ring_;
  std::uint32_t ngens_;
  std::vector<Vec> relations_;
  std::vector<std::int64_t> degrees_;
};

/// Coefficients that re-express an element over a submodule's generators and
/// the ambient relation columns. The residual is a combination of the defining
/// ideal, checked by reduction modulo its Groebner basis.
struct MembershipCertificate {
  std::vector<Poly> generator_coeffs;
  std::vector<Poly> relation_coeffs;
  bool verified = false;
};

/// Submodule of a presented module given by generators (element vectors in
/// the free cover). Groebner data are computed lazily and cached; the value is
/// otherwise immutable.
class Submodule {
 public:
  Submodule(PresentedModule ambient, std::vector<Vec> generators);

  static Submodule zero(const PresentedModule& ambient) { return Submodule(ambient, {}); }
  static Submodule whole(const PresentedModule& ambient);

  const PresentedModule& ambient() const { return ambient_; }
  const std::vector<Vec>& generators() const { return gens_; }
  const RingPtr& ring() const { return ambient_.ring(); }

  /// Reduced Groebner basis of the preimage in the free cover.
  const GroebnerBasis& basis() const;

  bool contains(const Vec& u) const;
  bool contains(const Submodule& other) const;
  bool operator==(const Submodule& other) const;
  bool is_zero() const;
  bool is_whole() const;

  Vec normal_form(const Vec& u) const { return basis().normal_form(u); }

  /// Membership with explicit witnesses; nullopt when u is not in the submodule.
  std::optional<MembershipCertificate> membership(const Vec& u) const;
  bool verify(const Vec& u, const MembershipCertificate& cert) const;

  /// Generators reduced modulo the ambient relations, zeros dropped, and
  /// pruned to a non-redundant generating list.
  Submodule trimmed() const;

 private:
  struct Cache;
  const GroebnerBasis& tracked_basis() const;

  PresentedModule ambient_;
  std::vector<Vec> gens_;
  std::shared_ptr<Cache> cache_;
};

/// Morphism of presented modules given by the images of the source generators.
class ModuleMap {
 public:
  /// Throws PreconditionError when a source relation does not map into the
  /// target relations (unless check is false).
  ModuleMap(PresentedModule source, PresentedModule target, std::vector<Vec> images, bool check = true);

  static ModuleMap identity(const PresentedModule& m);

  const PresentedModule& source() const { return source_; }
  const PresentedModule& target() const { return target_; }
  const std::vector<Vec>& images() const { return images_; }

  Vec apply(const Vec& v) const;
  bool is_well_defined() const;

 private:
  PresentedModule source_;
  PresentedModule target_;
  std::vector<Vec> images_;
};

ModuleMap compose(const ModuleMap& g, const ModuleMap& f);

Submodule image(const ModuleMap& f);
Submodule kernel(const ModuleMap& f);
/// f^{-1}(T) for a submodule T of the target.
Submodule preimage(const ModuleMap& f, const Submodule& target_sub);
bool is_injective(const ModuleMap& f);
bool is_surjective(const ModuleMap& f);

/// Syzygies of the given vectors in the module `ambient`: coefficient vectors c
/// in R^k with sum c_i v_i = 0 in `ambient`.
std::vector<Vec> syzygies(const PresentedModule& ambient, const std::vector<Vec>& vectors);

Submodule colon(const Submodule& N, const Poly& x);
Submodule intersect(const Submodule& a, const Submodule& b);
Submodule sum(const Submodule& a, const Submodule& b);
/// The ideal {r in R : r*B is contained in A} as a submodule of R^1.
Submodule module_colon(const Submodule& A, const Submodule& B);
/// Ideal generated by the given ring elements, as a submodule of R^1.
Submodule ideal(const RingPtr& ring, std::vector<Poly> gens);
/// I * M for an ideal I (as a submodule of R^1).
Submodule ideal_times(const Submodule& I, const PresentedModule& M);

/// M / N with the quotient map.
PresentedModule quotient(const Submodule& N);
PresentedModule direct_sum(const PresentedModule& a, const PresentedModule& b);
/// Generators e_i (x) f_j at index i * b.ngens() + j.
PresentedModule tensor_presentation(const PresentedModule& a, const PresentedModule& b);
/// Element a (x) b in tensor_presentation(A, B).
Vec tensor_elements(const Vec& a, const Vec& b, std::uint32_t b_rank, const Zp& F);

/// Hom_R(M, R): generators are maps M -> R given by their values on the
/// generators of M.
struct HomIntoRing {
  PresentedModule module;
  std::vector<Vec> maps;  // each in R^{ngens(M)}

  /// gamma(u) for gamma = sum c_i maps[i].
  Poly evaluate(const Vec& gamma_coords, const Vec& u, const Zp& F) const;
};
HomIntoRing hom_into_ring(const PresentedModule& M);
/// The ideal {gamma(u) : gamma in Hom(M, R)}.
Submodule evaluation_ideal(const PresentedModule& M, const Vec& u);

/// Peskine-Szpiro Frobenius: relation entries raised to the q-th power, q = p^e.
PresentedModule frobenius_module(const PresentedModule& M, std::uint32_t e);
Vec frobenius_element(const Vec& u, std::uint32_t e, std::uint32_t p);

/// Base change of a presentation along a ring map.
PresentedModule base_change(const PresentedModule& M, const RingMap& psi);

/// {u in M : psi(u) in K} for K a submodule of base_change(M, psi).
Submodule ring_preimage(const RingMap& psi, const PresentedModule& M, const Submodule& K);

struct MinimalPresentation {
  PresentedModule module;
  ModuleMap to_minimal;    // M -> minimal
  ModuleMap from_minimal;  // minimal -> M
};
/// Removes unit entries of the relation matrix (graded case) and redundant
/// relations. Throws ConstructionError on non-homogeneous data.
MinimalPresentation minimal_presentation(const PresentedModule& M);

/// M / mM as a vector space: its dimension and the class of an element.
struct IrrelevantFiber {
  MinimalPresentation minimal;
  std::uint32_t dimension() const { return minimal.module.ngens(); }
  /// Coordinates of the image of u (in the generators of M) in M/mM.
  std::vector<std::uint32_t> coordinates(const Vec& u) const;
  bool is_nonzero(const Vec& u) const;
};
IrrelevantFiber quotient_by_irrelevant(const PresentedModule& M);
/// Direct test u in mM by membership.
bool in_irrelevant_multiple(const PresentedModule& M, const Vec& u);

struct FreeResolution {
  std::vector<std::uint32_t> ranks;              // F_0, F_1, ...
  std::vector<std::vector<std::int64_t>> degrees;
  std::vector<std::vector<Vec>> differentials;   // columns of F_{i+1} -> F_i
};
FreeResolution free_resolution(const PresentedModule& M, std::uint32_t steps);
/// d-th syzygy module: syz^1(M) = ker(F_0 -> M), syz^d(M) = ker(F_{d-1} -> F_{d-2}),
/// presented on the generators of F_d.
PresentedModule syzygy(const PresentedModule& M, std::uint32_t d);

/// Krull dimension of R / (elements).
std::uint32_t krull_dim(const RingPtr& ring, const std::vector<Poly>& elements = {});
bool is_partial_sop(const RingPtr& ring, const std::vector<Poly>& elements);

std::string format_vec(const Vec& v, const RingPtr& ring, std::uint32_t rank);

}  // namespace clalg
