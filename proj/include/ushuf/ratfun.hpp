#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "ushuf/ring.hpp"

namespace ushuf {

using EmbedMode = CoeffElement::EmbedMode;

// Exponent vector for z_1..z_k; entry s-1 is the exponent of z_s.
using ExpVec = std::vector<int>;

// Sparse Laurent polynomial in z_1..z_k with CoeffElement coefficients.
class LaurentPoly {
 public:
  LaurentPoly() = default;

  static LaurentPoly zero(RingPtr ring, int zarity);
  static LaurentPoly constant(const CoeffElement& c, int zarity);
  // c * z^e
  static LaurentPoly term(const CoeffElement& c, const ExpVec& e);
  // z_var^exp with coefficient one
  static LaurentPoly z_power(RingPtr ring, int zarity, int var, int exp);

  const RingPtr& ring() const { return ring_; }
  int zarity() const { return zarity_; }
  const std::map<ExpVec, CoeffElement>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  bool operator==(const LaurentPoly& o) const;

  LaurentPoly scaled(const BigInt& c) const;
  LaurentPoly scaled(const CoeffElement& c) const;
  // multiply by z_var^exp
  LaurentPoly shifted(int var, int exp) const;
  LaurentPoly pow(int e) const;  // e >= 0

  // Simultaneous action on z-variables and coefficient indices.
  LaurentPoly permute(const Perm& sigma) const;
  // Extend to a larger variable count; Last also shifts coefficient indices.
  LaurentPoly embed(EmbedMode mode, int total_zarity) const;
  // Rebuild every coefficient through fn over the target ring; exponents kept.
  LaurentPoly map_coeffs(RingPtr target,
                         const std::function<CoeffElement(const CoeffElement&)>& fn) const;

  // Lexicographically greatest exponent vector and its coefficient.
  std::pair<ExpVec, CoeffElement> leading_lex() const;

  int min_exp(int var) const;  // 0 for absent variable
  int max_exp(int var) const;

 private:
  RingPtr ring_;
  int zarity_ = 0;
  std::map<ExpVec, CoeffElement> terms_;
  void add_term(const ExpVec& e, const CoeffElement& c);
  friend class RatFun;
  friend std::pair<LaurentPoly, LaurentPoly> exact_divide(const LaurentPoly&, int, int,
                                                          const Monomial&);
};

// One denominator factor (z_j - c * z_i)^mult with c an invertible monomial.
// Index 0 stands for the constant 1, so (j, 0, c) denotes (z_j - c).
// Canonical orientation: j >= 1 and (i == 0 or j > i).
struct DenFactor {
  int j = 0;
  int i = 0;
  Monomial c;
  int mult = 1;
};

struct DenKey {
  int j = 0;
  int i = 0;
  Monomial c;
  auto operator<=>(const DenKey&) const = default;
};

// Rational function: Laurent numerator over a multiset of binomial factors.
class RatFun {
 public:
  RatFun() = default;

  static RatFun from_poly(LaurentPoly num);
  // Normalizes factor orientation, folding the unit in (z_a - c z_b) =
  // (-c) * (z_b - c^{-1} z_a) into the numerator when a < b.
  static RatFun make(LaurentPoly num, const std::vector<DenFactor>& den);

  const LaurentPoly& num() const { return num_; }
  const std::map<DenKey, int>& den() const { return den_; }
  const RingPtr& ring() const { return num_.ring(); }
  int zarity() const { return num_.zarity(); }
  bool cancelled() const { return cancelled_; }
  bool is_polynomial() const { return den_.empty(); }

  RatFun operator+(const RatFun& o) const;
  RatFun operator-(const RatFun& o) const;
  RatFun operator-() const;
  RatFun operator*(const RatFun& o) const;
  // Cross-multiplied comparison over the merged denominator.
  bool operator==(const RatFun& o) const;
  bool is_zero() const { return num_.is_zero(); }

  RatFun scaled(const CoeffElement& c) const;
  RatFun permute(const Perm& sigma) const;
  RatFun embed(EmbedMode mode, int total_zarity) const;

 private:
  LaurentPoly num_;
  std::map<DenKey, int> den_;
  bool cancelled_ = false;
  friend RatFun rf_cancel(const RatFun&);
  friend RatFun rf_symmetrize(const RatFun&);
};

// The polynomial z_j - c * z_i as a LaurentPoly.
LaurentPoly den_factor_poly(RingPtr ring, int zarity, int j, int i, const Monomial& c);

// Division of p by (z_j - c z_i) with z_j as the main variable:
// p = (z_j - c z_i) * quotient + remainder, the remainder carrying no mixed
// z_j powers (a single z_j power appears only when p had negative ones).
std::pair<LaurentPoly, LaurentPoly> exact_divide(const LaurentPoly& p, int j, int i,
                                                 const Monomial& c);

// Removes denominator factors dividing the numerator exactly; value-equal.
RatFun rf_cancel(const RatFun& f);

RatFun rf_permute(const Perm& sigma, const RatFun& f);

// Sum of rf_permute over all of S(zarity), brought to a common denominator
// and cancelled.
RatFun rf_symmetrize(const RatFun& f);

// Invariance under adjacent transpositions (hence all of S(k)).
bool is_symmetric(const RatFun& f);

}  // namespace ushuf
