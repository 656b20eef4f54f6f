#pragma once

#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "ushuf/generator.hpp"

namespace ushuf {

// Permutation of {1..k}, stored 0-based.
class Perm {
 public:
  explicit Perm(int k) : img_(k) {
    for (int i = 0; i < k; ++i) img_[i] = i;
  }
  explicit Perm(std::vector<int> images_1based);

  int size() const { return static_cast<int>(img_.size()); }
  int apply(int i_1based) const;  // sigma(i)
  Perm after(const Perm& first) const;  // this * first (apply first, then this)
  Perm inverse() const;
  static Perm transposition(int k, int a, int b);
  static Perm reversal(int k);
  static std::vector<Perm> all(int k);
  bool is_identity() const;

  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  std::vector<int> img_;
};

enum class RingVariant { FreeLaurent, Truncation, DeltaSurface, DeltaCurve, AnResolution };

// Immutable description of a coefficient ring.  Shared by every element;
// compared by value so structurally equal specs are interchangeable.
struct RingSpec {
  RingVariant variant;
  int arity = 0;       // k: number of surface/curve factors the indices refer to
  int trunc_order = 0; // Truncation: m, with (1-t_i)^m = 0
  int an_n = 0;        // AnResolution: n
  std::vector<GeneratorId> named_gens;      // FreeLaurent / Truncation auxiliaries
  std::set<GeneratorId> invertible_named;   // subset of named_gens

  static std::shared_ptr<const RingSpec> free_laurent(std::vector<std::string> gens,
                                                      std::vector<std::string> invertible,
                                                      int arity = 1);
  static std::shared_ptr<const RingSpec> truncation(int arity, int order,
                                                    std::vector<std::string> aux = {},
                                                    std::vector<std::string> aux_invertible = {});
  static std::shared_ptr<const RingSpec> delta_surface(int k);
  static std::shared_ptr<const RingSpec> delta_curve(int k);
  static std::shared_ptr<const RingSpec> an_resolution(int n, int k);

  bool knows(const GeneratorId& g) const;
  bool invertible(const GeneratorId& g) const;

  friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

using RingPtr = std::shared_ptr<const RingSpec>;

inline void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b)) fail(Errc::RingMismatch, "elements belong to different rings");
}

enum class RewriteOrder { Forward, Reverse };

// Normalized element of a coefficient ring: finitely many monomials with
// nonzero BigInt coefficients, in the canonical basis of the ring variant.
class CoeffElement {
 public:
  CoeffElement() = default;

  // Terms given in the ring's *internal* basis (u-powers for truncation rings).
  static CoeffElement make(RingPtr ring, TermList terms,
                           RewriteOrder order = RewriteOrder::Forward);
  // Terms given in the external generator language (t-powers, possibly
  // negative, for truncation rings).  This is what parsers should call.
  static CoeffElement from_generators(RingPtr ring, TermList terms);
  static CoeffElement constant(RingPtr ring, BigInt c);
  static CoeffElement generator(RingPtr ring, const GeneratorId& g, int e = 1);
  static CoeffElement monomial(RingPtr ring, const Monomial& m, BigInt c = 1);

  const RingPtr& ring() const { return ring_; }
  const std::map<Monomial, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::optional<BigInt> as_constant() const;

  CoeffElement operator+(const CoeffElement& o) const;
  CoeffElement operator-(const CoeffElement& o) const;
  CoeffElement operator*(const CoeffElement& o) const;
  CoeffElement operator-() const;
  CoeffElement scaled(const BigInt& c) const;
  CoeffElement times_monomial(const Monomial& m) const;
  bool operator==(const CoeffElement& o) const;

  // Whole-element unit inverse.  Defined for +/-(unit monomial) times
  // (1 + nilpotent) in truncation rings and for bare unit monomials elsewhere.
  CoeffElement unit_inverse() const;

  // Simultaneous relabeling of factor indices by sigma.
  CoeffElement permute(const Perm& sigma) const;

  enum class EmbedMode { First, Last };
  CoeffElement embed(EmbedMode mode, int total_arity) const;

  // Re-runs normalization from the stored terms (for idempotence checks).
  CoeffElement renormalized(RewriteOrder order = RewriteOrder::Forward) const;

  // External (t-power) view of a truncation-ring element; identity otherwise.
  TermList external_terms() const;

 private:
  RingPtr ring_;
  std::map<Monomial, BigInt> terms_;
};

// u-basis expansion of t_i^e in a truncation ring of the given order.
TermList t_power_to_u_basis(int i, int e, int order);

// Index relabeling of a single monomial (Delta/Q/T indices and the ambient
// index of TUpper move under sigma; named units are fixed).
Monomial permute_monomial(const Monomial& m, const Perm& sigma);

// Adds `shift` to every ambient index of a monomial.
Monomial shift_monomial(const Monomial& m, int shift);

}  // namespace ushuf
