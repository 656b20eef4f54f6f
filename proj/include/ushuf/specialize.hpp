#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ushuf/shuffle.hpp"

namespace ushuf {

// Substitution of the universal Delta/q generators by classes in a concrete
// target ring.  Delta images are evaluated on the sorted index pair, making
// them symmetric by construction; q images are unit monomials so that kernel
// denominators stay invertible after substitution.
class Specialization {
 public:
  using DeltaFn = std::function<CoeffElement(int i, int j)>;  // called with i < j
  using QFn = std::function<Monomial(int i)>;

  const std::string& name() const { return name_; }
  Flavor flavor() const { return flavor_; }
  int arity() const { return arity_; }
  int resolution_n() const { return an_n_; }
  const RingPtr& target() const { return target_; }

  CoeffElement delta_image(int i, int j) const;
  Monomial q_image(int i) const;  // surface families only
  bool has_q() const { return flavor_ == Flavor::Surface; }

 private:
  std::string name_;
  Flavor flavor_ = Flavor::Curve;
  int arity_ = 0;
  int an_n_ = 0;
  RingPtr target_;
  DeltaFn delta_fn_;
  QFn q_fn_;
  friend Specialization make_specialization(const std::string&, int, int);
  friend Specialization make_custom_specialization(std::string, Flavor, int, RingPtr,
                                                   Specialization::DeltaFn, Specialization::QFn);
};

// Built-ins: a2, p2, p1, a1, an (with n >= 1), diagonal.
Specialization make_specialization(const std::string& name, int k, int n = 0);

// Escape hatch: user-supplied images over a user-supplied target ring.
Specialization make_custom_specialization(std::string name, Flavor flavor, int k, RingPtr target,
                                          Specialization::DeltaFn delta_fn,
                                          Specialization::QFn q_fn = {});

CoeffElement specialize_coeff(const Specialization& sp, const CoeffElement& x);
RatFun specialize_ratfun(const Specialization& sp, const RatFun& f);
ShuffleElement specialize_element(const Specialization& sp, const ShuffleElement& e);

// Kernel over the target family of a built-in, for multiplying specialized
// elements directly.
Kernel kernel_for(const std::string& name, int n = 0);

struct CompatibilityItem {
  std::string identity;
  bool pass = false;
  CoeffElement witness;  // the nonzero normal form on failure
};

struct CompatibilityReport {
  std::string spec_name;
  int arity = 0;
  std::vector<CompatibilityItem> items;
  bool all_pass = true;
};

// Target-ring checks of the consequences of the universal relation:
// D_ij*(q_i - q_j) = 0 and D_ij*(D_il - D_jl) = 0 for all index triples.
CompatibilityReport check_spec_compatibility(const Specialization& sp);

// Euler characteristic pairing chi(x * y) in a one-factor projective ring:
// chi(t^e) = (1-e)(2-e)/2 for the plane (truncation order 3) and 1-e for the
// line (order 2), extended additively.  Both functionals annihilate
// (1-t)^order multiples, so the pairing descends to the quotient; on the
// nilpotent basis this reduces to summing the u-power coefficients.
BigInt euler_pairing(const CoeffElement& x, const CoeffElement& y);

// Virtual K-class given as a signed list of invertible monomials.
struct LineClassDecomposition {
  RingPtr ring;
  std::vector<std::pair<Monomial, int>> entries;  // (line class, +1 or -1)
};

struct DiagZetaResult {
  RatFun series_form;      // prod over minus entries (1 - x L) / prod over plus
  CoeffElement delta_hat;  // sum of signed entries
  bool identity_holds;     // matches the expected low-codimension shape
};

// Wedge series of minus the diagonal class, as a rational function of x,
// cross-checked against 1 + delta_hat*x/((1-x)(1-x*q_hat)) (codimension two)
// or 1 + delta_hat*x/(1-x) (codimension one) in the target ring.
DiagZetaResult zeta_from_diag_class(const LineClassDecomposition& decomp, const Monomial& q_hat);
DiagZetaResult zeta_from_diag_class(const LineClassDecomposition& decomp);

}  // namespace ushuf
