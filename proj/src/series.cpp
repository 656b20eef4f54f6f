#include "ushuf/series.hpp"

#include <cstdlib>
#include <utility>

#include "ushuf/error.hpp"

namespace ushuf {

namespace {

CoeffElement unit_coeff(const RingPtr& r, const Monomial& m, BigInt c = 1) {
  return CoeffElement::monomial(r, m, std::move(c));
}

template <class Key>
void add_entry(std::map<Key, CoeffElement>& acc, const Key& k, const CoeffElement& c) {
  if (c.is_zero()) return;
  auto it = acc.find(k);
  if (it == acc.end()) {
    acc.emplace(k, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) acc.erase(it);
}

void require_units(const RingPtr& r, const Monomial& m) {
  for (const auto& [g, e] : m.exps()) {
    (void)e;
    if (!r->invertible(g)) fail(Errc::NonUnitEntry, g.text() + " is not invertible");
  }
}

void require_same_window(const FormalSeries& a, const FormalSeries& b) {
  require_same_ring(a.ring, b.ring);
  if (a.lo != b.lo || a.hi != b.hi) fail(Errc::UsageError, "series windows differ");
}

}  // namespace

FormalSeries FormalSeries::zero(RingPtr ring, int lo, int hi, bool exact) {
  if (lo > hi) fail(Errc::UsageError, "series window is empty");
  FormalSeries s;
  s.ring = std::move(ring);
  s.lo = lo;
  s.hi = hi;
  s.exact = exact;
  return s;
}

CoeffElement FormalSeries::coeff(int e) const {
  auto it = coefficients.find(e);
  if (it != coefficients.end()) return it->second;
  if ((e < lo || e > hi) && !exact)
    fail(Errc::IndexOutOfRange, "coefficient outside the truncation window");
  return CoeffElement::constant(ring, 0);
}

void FormalSeries::set_coeff(int e, const CoeffElement& c) {
  if (e < lo || e > hi) fail(Errc::IndexOutOfRange, "exponent outside the series window");
  if (c.is_zero())
    coefficients.erase(e);
  else
    coefficients[e] = c;
}

bool series_equal(const FormalSeries& a, const FormalSeries& b) {
  require_same_window(a, b);
  return a.coefficients == b.coefficients;
}

FormalSeries series_sub(const FormalSeries& a, const FormalSeries& b) {
  require_same_window(a, b);
  FormalSeries out = FormalSeries::zero(a.ring, a.lo, a.hi, a.exact && b.exact);
  out.coefficients = a.coefficients;
  for (const auto& [e, c] : b.coefficients) add_entry(out.coefficients, e, -c);
  return out;
}

FormalSeries series_mul(const FormalSeries& a, const FormalSeries& b) {
  require_same_window(a, b);
  FormalSeries out = FormalSeries::zero(a.ring, a.lo, a.hi);
  bool dropped = false;
  for (const auto& [e1, c1] : a.coefficients)
    for (const auto& [e2, c2] : b.coefficients) {
      int e = e1 + e2;
      if (e < a.lo || e > a.hi) {
        dropped = true;
        continue;
      }
      add_entry(out.coefficients, e, c1 * c2);
    }
  out.exact = a.exact && b.exact && !dropped;
  return out;
}

FormalSeries series_scale(const FormalSeries& a, const CoeffElement& c) {
  require_same_ring(a.ring, c.ring());
  FormalSeries out = FormalSeries::zero(a.ring, a.lo, a.hi, a.exact);
  for (const auto& [e, x] : a.coefficients) add_entry(out.coefficients, e, x * c);
  return out;
}

LineClassSum make_line_class_sum(RingPtr ring,
                                 std::vector<std::pair<Monomial, int>> entries) {
  if (!ring) fail(Errc::RingMismatch, "line-class sum needs a ring");
  for (const auto& [m, s] : entries) {
    if (s != 1 && s != -1) fail(Errc::UsageError, "line-class signs must be +1 or -1");
    require_units(ring, m);
  }
  return LineClassSum{std::move(ring), std::move(entries)};
}

FormalSeries expand(const RatFun& f0, ExpansionPoint at, int order) {
  if (order < 0) fail(Errc::OrderNegative, "expansion order must be nonnegative");
  if (f0.zarity() != 1) fail(Errc::NotOneVariable, "chart expansion needs one variable");
  RatFun f = rf_cancel(f0);
  const RingPtr& r = f.ring();
  if (!r) fail(Errc::RingMismatch, "rational function carries no ring");

  std::map<int, CoeffElement> acc;
  for (const auto& [e, c] : f.num().terms()) add_entry(acc, e[0], c);

  for (const auto& [key, mult] : f.den()) {
    for (int rep = 0; rep < mult; ++rep) {
      std::map<int, CoeffElement> next;
      if (at == ExpansionPoint::Infinity) {
        // 1/(z - c) = sum_{t >= 0} c^t z^{-1-t}; entries below -order cannot
        // feed back into the window, so the inner bound also prunes.
        for (const auto& [e1, c1] : acc)
          for (int t = 0; e1 - 1 - t >= -order; ++t)
            add_entry(next, e1 - 1 - t, c1 * unit_coeff(r, key.c.pow(t)));
      } else {
        // 1/(z - c) = -sum_{t >= 0} c^{-1-t} z^t; entries above order cannot
        // feed back into the window.
        for (const auto& [e1, c1] : acc)
          for (int t = 0; e1 + t <= order; ++t)
            add_entry(next, e1 + t, c1 * unit_coeff(r, key.c.pow(-1 - t), -1));
      }
      acc = std::move(next);
    }
  }

  FormalSeries out = FormalSeries::zero(r, -order, order);
  bool inside = true;
  for (const auto& [e, c] : acc) {
    if (e < -order || e > order) {
      inside = false;
      continue;
    }
    out.set_coeff(e, c);
  }
  out.exact = f.is_polynomial() && inside;
  return out;
}

FormalSeries expand_inf_minus_zero(const RatFun& f, int order) {
  return series_sub(expand(f, ExpansionPoint::Infinity, order),
                    expand(f, ExpansionPoint::Zero, order));
}

CoeffElement integral_inf_minus_zero(int n, const RatFun& f) {
  return expand_inf_minus_zero(f, std::abs(n)).coeff(-n);
}

FormalSeries wedge_series(const LineClassSum& U, WedgeSign sign,
                          const WedgeArgument& x, int order) {
  if (order < 0) fail(Errc::OrderNegative, "wedge order must be nonnegative");
  const RingPtr& r = U.ring;
  if (!r) fail(Errc::RingMismatch, "line-class sum carries no ring");
  require_units(r, x.unit);

  CoeffElement one = CoeffElement::constant(r, 1);
  FormalSeries acc = FormalSeries::zero(r, -order, order, true);
  acc.set_coeff(0, one);

  for (const auto& [entry, s] : U.entries) {
    int direction = (sign == WedgeSign::Plus) ? s : -s;
    Monomial m = x.unit.times(entry);
    FormalSeries factor = FormalSeries::zero(r, -order, order);
    std::map<int, CoeffElement> terms;
    if (direction > 0) {
      // polynomial factor 1 - m z^{z_exp}
      factor.exact = true;
      add_entry(terms, 0, one);
      if (std::abs(x.z_exp) <= order) {
        add_entry(terms, x.z_exp, unit_coeff(r, m, -1));
      } else {
        factor.exact = false;
      }
    } else {
      // geometric factor 1/(1 - m z^{z_exp}) = sum_{t >= 0} m^t z^{t z_exp}
      if (x.z_exp == 0)
        fail(Errc::UsageError, "a z-free wedge argument cannot invert factors");
      for (int t = 0; std::abs(x.z_exp) * t <= order; ++t)
        add_entry(terms, x.z_exp * t, unit_coeff(r, m.pow(t)));
    }
    factor.coefficients = std::move(terms);
    acc = series_mul(acc, factor);
  }
  return acc;
}

bool delta_property_check(const LaurentPoly& P, int order) {
  if (order < 0) fail(Errc::OrderNegative, "comparison order must be nonnegative");
  if (P.is_zero()) return true;
  if (P.zarity() != 1)
    fail(Errc::NotOneVariable, "the delta property applies to one-variable polynomials");

  int spread = 0;
  for (const auto& [e, c] : P.terms()) {
    (void)c;
    spread = std::max(spread, std::abs(e[0]));
  }
  int big = order + spread;

  // delta(z/w) P(z) versus delta(z/w) P(w), keyed by (z-exponent, w-exponent).
  std::map<std::pair<int, int>, CoeffElement> lhs, rhs;
  for (int i = -big; i <= big; ++i)
    for (const auto& [e, c] : P.terms()) {
      add_entry(lhs, {i + e[0], -i}, c);
      add_entry(rhs, {i, e[0] - i}, c);
    }

  const RingPtr& r = P.ring();
  auto look = [&](const std::map<std::pair<int, int>, CoeffElement>& m, int a, int b) {
    auto it = m.find({a, b});
    return it == m.end() ? CoeffElement::constant(r, 0) : it->second;
  };
  for (int a = -order; a <= order; ++a)
    for (int b = -order; b <= order; ++b)
      if (!(look(lhs, a, b) == look(rhs, a, b))) return false;
  return true;
}

namespace {

// h_t over a list of unit monomials via H_m(t) = H_{m-1}(t) + L_m H_m(t-1).
std::vector<CoeffElement> complete_homogeneous(const RingPtr& r,
                                               const std::vector<Monomial>& ls, int top) {
  std::vector<CoeffElement> h(top + 1, CoeffElement::constant(r, 0));
  h[0] = CoeffElement::constant(r, 1);
  for (const Monomial& m : ls) {
    CoeffElement cl = unit_coeff(r, m);
    for (int t = 1; t <= top; ++t) h[t] = h[t] + cl * h[t - 1];
  }
  return h;
}

// e_t via E_m(t) = E_{m-1}(t) + L_m E_{m-1}(t-1); t runs downward so the
// right-hand side uses the previous row.
std::vector<CoeffElement> elementary(const RingPtr& r, const std::vector<Monomial>& ls,
                                     int top) {
  std::vector<CoeffElement> e(top + 1, CoeffElement::constant(r, 0));
  e[0] = CoeffElement::constant(r, 1);
  for (const Monomial& m : ls) {
    CoeffElement cl = unit_coeff(r, m);
    for (int t = top; t >= 1; --t) e[t] = e[t] + cl * e[t - 1];
  }
  return e;
}

// S^t(V - W) = sum_{a+b=t} h_a(V) (-1)^b e_b(W).
std::vector<CoeffElement> virtual_sym(const RingPtr& r, const std::vector<Monomial>& v,
                                      const std::vector<Monomial>& w, int top) {
  auto h = complete_homogeneous(r, v, top);
  auto e = elementary(r, w, top);
  std::vector<CoeffElement> s(top + 1, CoeffElement::constant(r, 0));
  for (int t = 0; t <= top; ++t)
    for (int a = 0; a <= t; ++a) {
      CoeffElement piece = h[a] * e[t - a];
      s[t] = ((t - a) % 2 == 0) ? s[t] + piece : s[t] - piece;
    }
  return s;
}

// Coefficients c_t of prod_{L in V} (1 - xL) / prod_{M in W} (1 - xM) as a
// power series in x: c_t = sum_{a+b=t} (-1)^a e_a(V) h_b(W).
std::vector<CoeffElement> signed_wedge(const RingPtr& r, const std::vector<Monomial>& v,
                                       const std::vector<Monomial>& w, int top) {
  auto e = elementary(r, v, top);
  auto h = complete_homogeneous(r, w, top);
  std::vector<CoeffElement> c(top + 1, CoeffElement::constant(r, 0));
  for (int t = 0; t <= top; ++t)
    for (int a = 0; a <= t; ++a) {
      CoeffElement piece = e[a] * h[t - a];
      c[t] = (a % 2 == 0) ? c[t] + piece : c[t] - piece;
    }
  return c;
}

std::vector<Monomial> inverted(const std::vector<Monomial>& ls) {
  std::vector<Monomial> out;
  out.reserve(ls.size());
  for (const Monomial& m : ls) out.push_back(m.inverse());
  return out;
}

Monomial product_of(const std::vector<Monomial>& ls) {
  Monomial p = Monomial::one();
  for (const Monomial& m : ls) p = p.times(m);
  return p;
}

}  // namespace

PushforwardReport proj_pushforward_check(const LineClassSum& U, int order) {
  if (order < 0) fail(Errc::OrderNegative, "check order must be nonnegative");
  const RingPtr& r = U.ring;
  if (!r) fail(Errc::RingMismatch, "line-class sum carries no ring");

  std::vector<Monomial> base;
  for (const auto& [m, s] : U.entries) {
    if (s != 1) fail(Errc::UsageError, "pushforward check needs an all-plus sum");
    base.push_back(m);
  }
  if (base.empty()) fail(Errc::UsageError, "pushforward check needs rank at least 1");

  PushforwardReport rep;
  rep.rank = static_cast<int>(base.size());
  rep.order = order;
  CoeffElement zero = CoeffElement::constant(r, 0);
  CoeffElement one = CoeffElement::constant(r, 1);

  auto record = [&](std::string name, const CoeffElement& want, const CoeffElement& have) {
    bool ok = want == have;
    rep.items.push_back({std::move(name), ok, ok ? zero : want - have});
    rep.all_pass = rep.all_pass && ok;
  };

  // Bracket of the wedge series of -(V - W)/z against the symmetric-power
  // prediction.  `three_case` uses the disjoint-region form verbatim; the
  // general form adds both region contributions (they coincide for rank >= 1).
  auto run_direct = [&](const std::string& tag, const std::vector<Monomial>& v,
                        const std::vector<Monomial>& w, bool three_case) {
    int rank = static_cast<int>(v.size()) - static_cast<int>(w.size());
    LaurentPoly num = LaurentPoly::constant(one, 1);
    for (const Monomial& m : w) num = num * den_factor_poly(r, 1, 1, 0, m);
    num = num.shifted(1, rank);
    std::vector<DenFactor> den;
    for (const Monomial& m : v) den.push_back({1, 0, m, 1});
    FormalSeries got = expand_inf_minus_zero(RatFun::make(num, den), order);

    auto s_plus = virtual_sym(r, v, w, order);
    auto s_dual = virtual_sym(r, inverted(v), inverted(w), order);
    Monomial det_inv = product_of(v).inverse().times(product_of(w));
    BigInt lead = (rank % 2 != 0) ? 1 : -1;  // (-1)^{rank-1}
    for (int i = -order; i <= order; ++i) {
      CoeffElement want = zero;
      if (three_case) {
        if (i >= 0)
          want = s_plus[i];
        else if (i <= -rank)
          want = unit_coeff(r, det_inv, lead) * s_dual[-i - rank];
      } else {
        if (i >= 0) want = want + s_plus[i];
        if (i <= -rank) want = want + unit_coeff(r, det_inv, lead) * s_dual[-i - rank];
      }
      record(tag + " i=" + std::to_string(i), want, got.coeff(-i));
    }
  };

  // Bracket of the wedge series of z/(V - W) against the signed-wedge
  // prediction derived from its two chart expansions.
  auto run_dual = [&](const std::string& tag, const std::vector<Monomial>& v,
                      const std::vector<Monomial>& w) {
    int rank = static_cast<int>(v.size()) - static_cast<int>(w.size());
    Monomial det_inv = product_of(v).inverse().times(product_of(w));
    BigInt parity = ((v.size() + w.size()) % 2 == 0) ? 1 : -1;  // (-1)^{rank}
    LaurentPoly num = LaurentPoly::constant(unit_coeff(r, det_inv, parity), 1);
    for (const Monomial& m : v) num = num * den_factor_poly(r, 1, 1, 0, m);
    std::vector<DenFactor> den;
    for (const Monomial& m : w) den.push_back({1, 0, m, 1});
    FormalSeries got = expand_inf_minus_zero(RatFun::make(num, den), order);

    auto top_part = signed_wedge(r, v, w, std::max(rank + order, 0));
    auto low_part = signed_wedge(r, inverted(v), inverted(w), order);
    for (int e = -order; e <= order; ++e) {
      CoeffElement want = zero;
      if (e <= rank) want = want + unit_coeff(r, det_inv, parity) * top_part[rank - e];
      if (e >= 0) want = want - low_part[e];
      record(tag + " e=" + std::to_string(e), want, got.coeff(e));
    }
  };

  run_direct("honest", base, {}, true);
  run_dual("honest-dual", base, {});

  // Virtual presentation: pad with non-cancelling powers of the entry product
  // so the same identities run with a genuine numerator/denominator mix.
  Monomial p = product_of(base);
  std::vector<Monomial> v = base;
  v.push_back(p.pow(2));
  std::vector<Monomial> w{p.pow(3)};
  run_direct("virtual", v, w, false);
  run_dual("virtual-dual", v, w);

  return rep;
}

}  // namespace ushuf
