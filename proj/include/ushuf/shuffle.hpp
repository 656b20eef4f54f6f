#pragma once

#include <functional>
#include <vector>

#include "ushuf/ratfun.hpp"

namespace ushuf {

enum class Flavor { Surface, Curve };

// Symmetric rational function tagged with its variable count and flavor.
struct ShuffleElement {
  int arity = 0;
  Flavor flavor = Flavor::Curve;
  RatFun value;
};

// Configured cap on combined arity (SHUFFLE_MAX_ARITY overrides the default 6).
int max_arity();
void set_max_arity(int k);

RingPtr universal_ring(Flavor flavor, int k);

// How to build zeta kernels over a coefficient-ring family: the universal
// Delta rings by default, or a specialization target.
struct Kernel {
  Flavor flavor = Flavor::Curve;
  std::function<RingPtr(int k)> ring_at;
  // Image of D{i}_{j} in the ring of the ambient arity.
  std::function<CoeffElement(const RingPtr&, int i, int j)> delta_image;
  // Image of q_i as a unit monomial (surface only).
  std::function<Monomial(int i)> q_image;

  static Kernel universal(Flavor flavor);
};

// The kernel factor with argument z_i/z_j, denominators cleared:
//   surface: [(z_j-z_i)(z_j-q_i z_i) + D_ij z_i z_j] / ((z_j-z_i)(z_j-q_i z_i))
//   curve:   [(z_j-z_i) + D_ij z_i] / (z_j-z_i)
RatFun zeta_with(const Kernel& ker, int i, int j, int k);
RatFun zeta(Flavor flavor, int i, int j, int k);

// Validating constructor: symmetry and flavor/ring agreement.
ShuffleElement make_shuffle(Flavor flavor, RatFun value);
// Multiplicative unit: the empty element of arity zero.
ShuffleElement one_element(Flavor flavor, const Kernel& ker);
ShuffleElement one_element(Flavor flavor);
// z_1^n at arity one.
ShuffleElement monomial_element(Flavor flavor, int n, const Kernel& ker);
ShuffleElement monomial_element(Flavor flavor, int n);

// Order-preserving representatives of the (k, k')-shuffle cosets in S(k+k').
std::vector<Perm> shuffle_cosets(int k, int kp);

// Sum over shuffle cosets of sigma(iota_first(a) * iota_last(b) * prod zeta),
// cancelled.
ShuffleElement shuffle_mul(const ShuffleElement& a, const ShuffleElement& b, const Kernel& ker);
ShuffleElement shuffle_mul(const ShuffleElement& a, const ShuffleElement& b);

// Iterated product of one-variable monomials; also computes the closed-form
// sum over S(k) and asserts the two agree.
ShuffleElement generator_product(const std::vector<int>& ns, Flavor flavor);
ShuffleElement generator_product(const std::vector<int>& ns, Flavor flavor, const Kernel& ker);

// Laurent-polynomial witness: the element times prod_{i != j} (z_i - q_j z_j)
// for surfaces, or the element itself for curves.
LaurentPoly pole_certificate(const ShuffleElement& e);
LaurentPoly pole_certificate(const ShuffleElement& e, const Kernel& ker);

struct LeadingOrder {
  CoeffElement actual;
  CoeffElement predicted;
  bool equal = false;
};

// Leading lexicographic coefficient of a curve generator product versus the
// admissible-permutation prediction.
LeadingOrder leading_order(const std::vector<int>& ns, Flavor flavor);

}  // namespace ushuf
