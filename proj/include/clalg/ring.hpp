#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "clalg/groebner.hpp"
#include "clalg/poly.hpp"
#include "clalg/zp.hpp"

namespace clalg {

/// Positively graded quotient ring F_p[x_1..x_n]/I with a degrevlex order in
/// the declared variable order. The irrelevant ideal (x_1..x_n) plays the
/// role of the maximal ideal of a local ring.
class GradedRing {
 public:
  /// Throws ConstructionError on a non-prime modulus, bad weights, or a
  /// non-homogeneous defining ideal.
  GradedRing(std::string name, std::uint32_t p, std::vector<std::string> vars, std::vector<int> weights,
             std::vector<Poly> ideal, bool domain = true);

  const std::string& name() const { return name_; }
  const Zp& field() const { return F_; }
  std::uint32_t characteristic() const { return F_.modulus(); }
  std::size_t nvars() const { return vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<int>& weights() const { return weights_; }
  const std::vector<Poly>& ideal() const { return ideal_; }
  /// User-asserted; never verified.
  bool is_domain() const { return domain_; }
  bool is_quotient() const { return !ideal_gb_.empty(); }

  /// Reduced Groebner basis of the defining ideal (as ring elements).
  const std::vector<Poly>& ideal_basis() const { return ideal_gb_; }

  /// Canonical representative modulo the defining ideal, componentwise.
  Vec reduce(const Vec& v) const;
  bool is_zero(const Vec& v) const { return reduce(v).is_zero(); }

  Poly var(std::size_t i) const;
  Poly constant(std::int64_t c) const;
  Poly parse(std::string_view text) const;
  std::string format(const Poly& f) const;

  /// Module order for a free module with the given component degrees.
  MonomialOrder order(std::vector<std::int64_t> shifts = {}) const;
  /// Variable ranking used by order(): chosen at construction so that the
  /// leading terms of the defining ideal involve as few (and as late) variables
  /// as possible, which keeps Frobenius powers of parameter ideals cheap.
  const std::vector<std::size_t>& variable_ranking() const { return perm_; }

  /// Weighted degree of a homogeneous ring element (throws if not homogeneous).
  std::int64_t degree(const Poly& f) const;

 private:
  std::string name_;
  Zp F_;
  std::vector<std::string> vars_;
  std::vector<int> weights_;
  std::vector<Poly> ideal_;
  bool domain_;
  std::vector<std::size_t> perm_;
  std::vector<Poly> ideal_gb_;
  std::shared_ptr<const GroebnerBasis> ideal_basis_;
};

using RingPtr = std::shared_ptr<const GradedRing>;

RingPtr make_ring(std::string name, std::uint32_t p, std::vector<std::string> vars,
                  std::vector<std::string> relations = {}, std::vector<int> weights = {}, bool domain = true);

/// Ring homomorphism given by the images of the source variables.
struct RingMap {
  RingPtr source;
  RingPtr target;
  std::vector<Poly> images;

  Vec apply(const Vec& v) const;
  /// True when the images are exactly the target variables in order, i.e. a
  /// surjection onto a quotient of the same polynomial ring.
  bool is_variable_identity() const;
};

/// Checks that every defining relation of the source maps to zero.
RingMap make_ring_map(RingPtr source, RingPtr target, std::vector<Poly> images);
RingMap frobenius_map(const RingPtr& ring, std::uint32_t e);

/// Parses an infix polynomial over the given variables. Errors carry the byte
/// offset of the offending token.
class PolyParseError : public std::runtime_error {
 public:
  PolyParseError(std::string msg, std::size_t offset) : std::runtime_error(std::move(msg)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

Poly parse_polynomial(std::string_view text, const std::vector<std::string>& vars, const Zp& F);
std::string format_polynomial(const Poly& f, const std::vector<std::string>& vars, const Zp& F);

}  // namespace clalg
