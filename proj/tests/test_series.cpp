#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "support.hpp"
#include "ushuf/error.hpp"
#include "ushuf/series.hpp"

using namespace ushuf;
using testutil::random_poly;

namespace {

RingPtr lring() { return RingSpec::free_laurent({"L", "M"}, {"L", "M"}, 1); }
RingPtr ring3() {
  return RingSpec::free_laurent({"L1", "L2", "L3"}, {"L1", "L2", "L3"}, 1);
}

Monomial named_pow(const std::string& name, int e) {
  return Monomial::gen(GeneratorId::named(name), e);
}

CoeffElement um(const RingPtr& r, const Monomial& m, long c = 1) {
  return CoeffElement::monomial(r, m, c);
}

// 1/(1 - c/z) = z/(z - c)
RatFun geom(const RingPtr& r, const Monomial& c) {
  return RatFun::make(LaurentPoly::z_power(r, 1, 1, 1), {DenFactor{1, 0, c, 1}});
}

}  // namespace

TEST_CASE("chart expansions of one-variable rational functions") {
  RingPtr r = lring();
  Monomial L = named_pow("L", 1);
  RatFun f = geom(r, L);

  SUBCASE("geometric factor at infinity") {
    FormalSeries s = expand(f, ExpansionPoint::Infinity, 3);
    CHECK(s.lo == -3);
    CHECK(s.hi == 3);
    CHECK_FALSE(s.exact);
    for (int t = 0; t <= 3; ++t) CHECK(s.coeff(-t) == um(r, L.pow(t)));
    CHECK(s.coeff(1).is_zero());
    CHECK(s.coeff(3).is_zero());
    CHECK_THROWS_AS(s.coeff(-4), Error);  // truncated edge, value unknown
  }

  SUBCASE("geometric factor at zero") {
    FormalSeries s = expand(f, ExpansionPoint::Zero, 3);
    CHECK_FALSE(s.exact);
    CHECK(s.coeff(0).is_zero());
    for (int t = 1; t <= 3; ++t) CHECK(s.coeff(t) == um(r, L.pow(-t), -1));
  }

  SUBCASE("constants expand to themselves exactly") {
    RatFun c = RatFun::from_poly(LaurentPoly::constant(CoeffElement::constant(r, 7), 1));
    for (ExpansionPoint at : {ExpansionPoint::Zero, ExpansionPoint::Infinity}) {
      FormalSeries s = expand(c, at, 2);
      CHECK(s.exact);
      CHECK(s.coeff(0) == CoeffElement::constant(r, 7));
      CHECK(s.coeff(2).is_zero());
      CHECK(s.coeff(9).is_zero());  // exact series: known zero beyond the window
    }
  }

  SUBCASE("laurent polynomials are their own expansion") {
    LaurentPoly p = LaurentPoly::z_power(r, 1, 1, 2).scaled(BigInt(3)) -
                    LaurentPoly::z_power(r, 1, 1, -1).scaled(BigInt(5));
    FormalSeries s = expand(RatFun::from_poly(p), ExpansionPoint::Infinity, 3);
    CHECK(s.exact);
    CHECK(s.coeff(2) == CoeffElement::constant(r, 3));
    CHECK(s.coeff(-1) == CoeffElement::constant(r, -5));
    FormalSeries tight = expand(RatFun::from_poly(p), ExpansionPoint::Zero, 1);
    CHECK_FALSE(tight.exact);  // the z^2 term falls outside the window
    CHECK(tight.coeff(-1) == CoeffElement::constant(r, -5));
  }

  SUBCASE("repeated factors") {
    // z^2/(z - L)^2: coefficient of z^{-u} is (u+1) L^u at infinity
    RatFun g = RatFun::make(LaurentPoly::z_power(r, 1, 1, 2), {DenFactor{1, 0, L, 2}});
    FormalSeries inf = expand(g, ExpansionPoint::Infinity, 3);
    for (int u = 0; u <= 3; ++u) CHECK(inf.coeff(-u) == um(r, L.pow(u), u + 1));
    FormalSeries zro = expand(g, ExpansionPoint::Zero, 3);
    CHECK(zro.coeff(1).is_zero());
    CHECK(zro.coeff(2) == um(r, L.pow(-2)));
    CHECK(zro.coeff(3) == um(r, L.pow(-3), 2));
  }

  SUBCASE("composite unit in the factor") {
    Monomial c = L.times(named_pow("M", 2));
    FormalSeries s = expand(geom(r, c), ExpansionPoint::Infinity, 2);
    CHECK(s.coeff(-2) == um(r, c.pow(2)));
  }

  SUBCASE("errors") {
    CHECK_THROWS_AS(expand(f, ExpansionPoint::Infinity, -1), Error);
    try {
      expand(f, ExpansionPoint::Infinity, -1);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::OrderNegative);
    }
    RatFun two = RatFun::from_poly(LaurentPoly::z_power(r, 2, 1, 1));
    try {
      expand(two, ExpansionPoint::Zero, 3);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NotOneVariable);
    }
  }
}

TEST_CASE("infinity-minus-zero bracket") {
  RingPtr r = lring();
  Monomial L = named_pow("L", 1);

  SUBCASE("geometric factor gives the shifted delta series") {
    FormalSeries s = expand_inf_minus_zero(geom(r, L), 4);
    for (int e = -4; e <= 4; ++e) CHECK(s.coeff(e) == um(r, L.pow(-e)));
  }

  SUBCASE("unit factor gives the delta series") {
    FormalSeries s = expand_inf_minus_zero(geom(r, Monomial::one()), 5);
    for (int e = -5; e <= 5; ++e) CHECK(s.coeff(e) == CoeffElement::constant(r, 1));
  }

  SUBCASE("laurent polynomials bracket to zero") {
    LaurentPoly p = LaurentPoly::z_power(r, 1, 1, 2).scaled(BigInt(3)) +
                    LaurentPoly::constant(CoeffElement::constant(r, 7), 1) -
                    LaurentPoly::z_power(r, 1, 1, -1).scaled(um(r, L));
    FormalSeries s = expand_inf_minus_zero(RatFun::from_poly(p), 6);
    CHECK(s.is_zero());
    CHECK(s.exact);
    // a term outside the window still cancels between the two charts
    FormalSeries far = expand_inf_minus_zero(RatFun::from_poly(LaurentPoly::z_power(r, 1, 1, 9)), 3);
    CHECK(far.is_zero());
    CHECK_FALSE(far.exact);
    std::mt19937_64 rng(510);
    for (int trial = 0; trial < 20; ++trial) {
      LaurentPoly q = random_poly(r, 1, rng, 4, 3);
      CHECK(expand_inf_minus_zero(RatFun::from_poly(q), 5).is_zero());
    }
  }
}

TEST_CASE("residue extraction picks one bracket coefficient") {
  RingPtr r = lring();
  Monomial L = named_pow("L", 1);
  RatFun f = geom(r, L);

  CHECK(integral_inf_minus_zero(0, f) == CoeffElement::constant(r, 1));
  CHECK(integral_inf_minus_zero(1, f) == um(r, L));
  CHECK(integral_inf_minus_zero(5, f) == um(r, L.pow(5)));
  CHECK(integral_inf_minus_zero(-1, f) == um(r, L.pow(-1)));
  CHECK(integral_inf_minus_zero(-4, f) == um(r, L.pow(-4)));

  RatFun c = RatFun::from_poly(LaurentPoly::constant(CoeffElement::constant(r, 9), 1));
  for (int n = -2; n <= 2; ++n) CHECK(integral_inf_minus_zero(n, c).is_zero());

  SUBCASE("multiplying by a z-power shifts the index") {
    LaurentPoly num = LaurentPoly::z_power(r, 1, 1, 2) +
                      LaurentPoly::constant(CoeffElement::constant(r, 3), 1);
    RatFun g = RatFun::make(num, {DenFactor{1, 0, L, 1}});
    for (int m = -2; m <= 2; ++m) {
      RatFun shifted = RatFun::make(num.shifted(1, m), {DenFactor{1, 0, L, 1}});
      for (int n = -3; n <= 3; ++n)
        CHECK(integral_inf_minus_zero(n, shifted) == integral_inf_minus_zero(n + m, g));
    }
  }
}

TEST_CASE("wedge generating series") {
  RingPtr r = lring();
  Monomial L = named_pow("L", 1);
  Monomial M = named_pow("M", 1);
  WedgeArgument inv_z{Monomial::one(), -1};

  SUBCASE("rank one") {
    LineClassSum U = make_line_class_sum(r, {{L, 1}});
    FormalSeries plus = wedge_series(U, WedgeSign::Plus, inv_z, 3);
    CHECK(plus.exact);
    CHECK(plus.coeff(0) == CoeffElement::constant(r, 1));
    CHECK(plus.coeff(-1) == um(r, L, -1));
    CHECK(plus.coeff(-2).is_zero());

    FormalSeries minus = wedge_series(U, WedgeSign::Minus, inv_z, 3);
    CHECK_FALSE(minus.exact);
    for (int t = 0; t <= 3; ++t) CHECK(minus.coeff(-t) == um(r, L.pow(t)));

    FormalSeries up = wedge_series(U, WedgeSign::Minus, {Monomial::one(), 1}, 3);
    for (int t = 0; t <= 3; ++t) CHECK(up.coeff(t) == um(r, L.pow(t)));

    FormalSeries twisted = wedge_series(U, WedgeSign::Minus, {M, -1}, 2);
    for (int t = 0; t <= 2; ++t) CHECK(twisted.coeff(-t) == um(r, M.times(L).pow(t)));
  }

  SUBCASE("rank-one dual identity with a z-free argument") {
    WedgeArgument unit{Monomial::one(), 0};
    FormalSeries dual = wedge_series(make_line_class_sum(r, {{L.inverse(), 1}}),
                                     WedgeSign::Plus, unit, 2);
    FormalSeries straight = wedge_series(make_line_class_sum(r, {{L, 1}}),
                                         WedgeSign::Plus, unit, 2);
    CHECK(series_equal(dual, series_scale(straight, um(r, L.inverse(), -1))));
  }

  SUBCASE("multiplicativity over concatenation") {
    std::vector<std::pair<Monomial, int>> one = {{L, 1}};
    std::vector<std::pair<Monomial, int>> two = {{M, 1}, {L.pow(2).times(M.inverse()), -1}};
    std::vector<std::pair<Monomial, int>> both = one;
    both.insert(both.end(), two.begin(), two.end());
    for (WedgeSign sign : {WedgeSign::Plus, WedgeSign::Minus})
      for (const WedgeArgument& x :
           {WedgeArgument{Monomial::one(), -1}, WedgeArgument{Monomial::one(), 1},
            WedgeArgument{M, -1}}) {
        FormalSeries joint = wedge_series(make_line_class_sum(r, both), sign, x, 6);
        FormalSeries split = series_mul(wedge_series(make_line_class_sum(r, one), sign, x, 6),
                                        wedge_series(make_line_class_sum(r, two), sign, x, 6));
        CHECK(series_equal(joint, split));
      }
  }

  SUBCASE("errors") {
    try {
      wedge_series(make_line_class_sum(r, {{L, -1}}), WedgeSign::Plus,
                   WedgeArgument{Monomial::one(), 0}, 2);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::UsageError);
    }
    try {
      make_line_class_sum(r, {{L, 2}});
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::UsageError);
    }
    RingPtr mixed = RingSpec::free_laurent({"L", "c"}, {"L"}, 1);
    try {
      make_line_class_sum(mixed, {{Monomial::gen(GeneratorId::named("c")), 1}});
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NonUnitEntry);
    }
  }
}

TEST_CASE("delta-function multiplication property") {
  RingPtr r = lring();
  Monomial L = named_pow("L", 1);

  CHECK(delta_property_check(LaurentPoly::z_power(r, 1, 1, 1), 8));
  CHECK(delta_property_check(LaurentPoly::z_power(r, 1, 1, 2) +
                                 LaurentPoly::constant(CoeffElement::constant(r, 3), 1),
                             8));
  CHECK(delta_property_check(LaurentPoly::constant(CoeffElement::constant(r, -11), 1), 4));
  CHECK(delta_property_check(LaurentPoly::zero(r, 1), 4));
  CHECK(delta_property_check(LaurentPoly::z_power(r, 1, 1, 3).scaled(BigInt(2)) -
                                 LaurentPoly::z_power(r, 1, 1, -2).scaled(BigInt(5)) +
                                 LaurentPoly::z_power(r, 1, 1, 1).scaled(um(r, L)),
                             5));

  std::mt19937_64 rng(907);
  for (int trial = 0; trial < 10; ++trial)
    CHECK(delta_property_check(random_poly(r, 1, rng, 4, 4), 6));

  try {
    delta_property_check(LaurentPoly::z_power(r, 2, 2, 1), 3);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotOneVariable);
  }
}

TEST_CASE("pushforward of the tautological delta series") {
  RingPtr r = ring3();
  Monomial L1 = named_pow("L1", 1);
  Monomial L2 = named_pow("L2", 1);
  Monomial L3 = named_pow("L3", 1);

  SUBCASE("rank-two bracket matches the frozen region values") {
    // z^2/((z-L1)(z-L2)) is the wedge series of -(L1+L2)/z
    RatFun f = RatFun::make(LaurentPoly::z_power(r, 1, 1, 2),
                            {DenFactor{1, 0, L1, 1}, DenFactor{1, 0, L2, 1}});
    FormalSeries s = expand_inf_minus_zero(f, 4);
    CHECK(s.coeff(0) == CoeffElement::constant(r, 1));
    CHECK(s.coeff(-1) == um(r, L1) + um(r, L2));  // first symmetric power
    CHECK(s.coeff(-2) == um(r, L1.pow(2)) + um(r, L1.times(L2)) + um(r, L2.pow(2)));
    CHECK(s.coeff(1).is_zero());  // the empty middle region
    Monomial det_inv = L1.times(L2).inverse();
    CHECK(s.coeff(2) == um(r, det_inv, -1));
    CHECK(s.coeff(3) == um(r, det_inv.times(L1.inverse()), -1) +
                            um(r, det_inv.times(L2.inverse()), -1));
  }

  SUBCASE("reports pass for fixed sums") {
    PushforwardReport r1 = proj_pushforward_check(make_line_class_sum(r, {{L1, 1}}), 6);
    CHECK(r1.all_pass);
    CHECK(r1.rank == 1);
    CHECK(r1.items.size() == 4u * 13u);
    PushforwardReport r2 =
        proj_pushforward_check(make_line_class_sum(r, {{L1, 1}, {L2, 1}}), 10);
    CHECK(r2.all_pass);
    PushforwardReport r3 =
        proj_pushforward_check(make_line_class_sum(r, {{L1, 1}, {L2, 1}, {L3, 1}}), 10);
    CHECK(r3.all_pass);
    // repeated entries exercise denominator multiplicities
    PushforwardReport rep =
        proj_pushforward_check(make_line_class_sum(r, {{L1, 1}, {L1, 1}}), 8);
    CHECK(rep.all_pass);
  }

  SUBCASE("randomized unit monomials up to rank three") {
    std::mt19937_64 rng(2025);
    std::uniform_int_distribution<int> expo(-2, 2), rank(1, 3);
    for (int trial = 0; trial < 12; ++trial) {
      std::vector<std::pair<Monomial, int>> entries;
      int n = rank(rng);
      for (int i = 0; i < n; ++i) {
        Monomial m = L1.pow(expo(rng)).times(L2.pow(expo(rng))).times(L3.pow(expo(rng)));
        entries.emplace_back(m, 1);
      }
      PushforwardReport rep = proj_pushforward_check(make_line_class_sum(r, entries), 10);
      CAPTURE(trial);
      CHECK(rep.all_pass);
    }
  }

  SUBCASE("input validation") {
    try {
      proj_pushforward_check(make_line_class_sum(r, {{L1, -1}}), 3);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::UsageError);
    }
    try {
      proj_pushforward_check(make_line_class_sum(r, {}), 3);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::UsageError);
    }
  }
}

TEST_CASE("series window discipline") {
  RingPtr r = lring();
  FormalSeries a = FormalSeries::zero(r, -2, 2);
  FormalSeries b = FormalSeries::zero(r, -3, 3);
  CHECK_THROWS_AS(series_sub(a, b), Error);
  CHECK_THROWS_AS(a.set_coeff(5, CoeffElement::constant(r, 1)), Error);
  CHECK_THROWS_AS(FormalSeries::zero(r, 2, -2), Error);

  a.set_coeff(1, CoeffElement::constant(r, 4));
  FormalSeries c = FormalSeries::zero(r, -2, 2);
  c.set_coeff(1, CoeffElement::constant(r, 4));
  CHECK(series_equal(a, c));
  c.set_coeff(1, CoeffElement::constant(r, 0));
  CHECK(c.is_zero());
}
