#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ushuf/ratfun.hpp"

namespace ushuf {

enum class ExpansionPoint { Zero, Infinity };

// Truncated view of a bi-infinite Laurent series in one variable.
// Coefficients are stored only for exponents inside the window [lo, hi];
// `exact` records whether every coefficient outside the window is known to
// vanish (the series is genuinely finite) or merely unknown past the edge.
struct FormalSeries {
  RingPtr ring;
  std::string variable = "z";
  int lo = 0;
  int hi = 0;
  std::map<int, CoeffElement> coefficients;  // nonzero entries only
  bool exact = false;

  static FormalSeries zero(RingPtr ring, int lo, int hi, bool exact = false);

  // Coefficient of variable^e.  Outside the window the value is zero when the
  // series is exact and unavailable (IndexOutOfRange) otherwise.
  CoeffElement coeff(int e) const;
  // Stores a coefficient, dropping zeros; exponents outside the window are
  // rejected (IndexOutOfRange).
  void set_coeff(int e, const CoeffElement& c);
  bool is_zero() const { return coefficients.empty(); }
};

// Coefficient-wise comparison; windows and rings must agree.
bool series_equal(const FormalSeries& a, const FormalSeries& b);
FormalSeries series_sub(const FormalSeries& a, const FormalSeries& b);
// Truncated convolution on the shared window.  Window coefficients are
// reliable when both inputs are one-sided in the same chart (all exponents
// <= 0, or all >= 0), which is how chart expansions come out.
FormalSeries series_mul(const FormalSeries& a, const FormalSeries& b);
FormalSeries series_scale(const FormalSeries& a, const CoeffElement& c);

// Virtual sum of line classes: signed list of invertible monomials.
struct LineClassSum {
  RingPtr ring;
  std::vector<std::pair<Monomial, int>> entries;  // (unit monomial, +1 or -1)
};

// Validates signs (UsageError) and entry invertibility (NonUnitEntry).
LineClassSum make_line_class_sum(RingPtr ring,
                                 std::vector<std::pair<Monomial, int>> entries);

// Laurent expansion of a one-variable rational function in the chart at 0 or
// at infinity, truncated to the window [-order, order].  Each denominator
// factor (z - c) is expanded geometrically in the chosen chart.
FormalSeries expand(const RatFun& f, ExpansionPoint at, int order);

// {f expanded at infinity} - {f expanded at 0} on the window [-order, order].
FormalSeries expand_inf_minus_zero(const RatFun& f, int order);

// Coefficient of z^{-n} in expand_inf_minus_zero(f): the difference of the
// big-circle and small-circle contour integrals of z^n f(z) dz / (2 pi i z).
// Exact for rational f; expansion order |n| already determines it.
CoeffElement integral_inf_minus_zero(int n, const RatFun& f);

enum class WedgeSign { Plus, Minus };

// Argument x = unit * z^{z_exp} fed to a wedge series.
struct WedgeArgument {
  Monomial unit;  // invertible multiplier; Monomial::one() for a bare z-power
  int z_exp = 0;
};

// Wedge generating series of x*U (sign Plus) or of -x*U (sign Minus): product
// over entries (L, s) of (1 - x*L)^{s} resp. (1 - x*L)^{-s}, expanded in the
// chart the sign of z_exp dictates (z_exp < 0: at infinity; z_exp > 0: at 0).
// The all-plus Minus series enumerates symmetric powers.  A z-free argument
// (z_exp == 0) is accepted only when no factor needs inversion (UsageError).
FormalSeries wedge_series(const LineClassSum& U, WedgeSign sign,
                          const WedgeArgument& x, int order);

// Checks delta(z/w) P(z) = delta(z/w) P(w) coefficient-wise in the truncated
// two-variable model, on the window max(|exp_z|, |exp_w|) <= order, for a
// one-variable Laurent polynomial P.
bool delta_property_check(const LaurentPoly& P, int order);

struct PushforwardItem {
  std::string identity;
  bool pass = false;
  CoeffElement witness;  // predicted minus expanded coefficient when failing
};

struct PushforwardReport {
  int rank = 0;
  int order = 0;
  std::vector<PushforwardItem> items;
  bool all_pass = true;
};

// Pushforward check for the tautological-line-bundle delta series on the
// projectivization of an honest (all-plus) sum U of rank >= 1.  For every
// |i| <= order it compares the coefficient of z^{-i} of the bracket of the
// wedge series of -U/z against the symmetric-power prediction
//     S^i U                                        for i >= 0,
//     0                                            for -rank < i < 0,
//     (-1)^{rank-1} S^{-i-rank}(U^v) (det U)^{-1}  for i <= -rank,
// with symmetric powers computed by complete-homogeneous convolution over the
// entries.  The dual-projectivization series (wedge of z/U) is checked the
// same way, and both checks are repeated for a virtual presentation
// U + W - W' of the same machinery with genuinely non-cancelling W, W'.
PushforwardReport proj_pushforward_check(const LineClassSum& U, int order);

}  // namespace ushuf
