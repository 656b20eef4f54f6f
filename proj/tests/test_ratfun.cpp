#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ushuf/ratfun.hpp"
#include "ushuf/text.hpp"
#include "support.hpp"

using namespace ushuf;
using namespace testutil;

namespace {

LaurentPoly zp(const RingPtr& r, int k, int var, int exp = 1) {
  return LaurentPoly::z_power(r, k, var, exp);
}

LaurentPoly konst(const RingPtr& r, int k, int c) {
  return LaurentPoly::constant(CoeffElement::constant(r, c), k);
}

}  // namespace

TEST_CASE("opposite binomial factors are identified up to sign") {
  auto r = RingSpec::delta_surface(2);
  auto one = konst(r, 2, 1);
  auto f = RatFun::make(one, {DenFactor{2, 1, Monomial::one(), 1}});  // 1/(z2-z1)
  auto g = RatFun::make(one, {DenFactor{1, 2, Monomial::one(), 1}});  // 1/(z1-z2)
  CHECK((f + g).is_zero());
  CHECK(f == -g);
}

TEST_CASE("product with own denominator cancels") {
  auto r = RingSpec::delta_surface(2);
  auto f = RatFun::make(zp(r, 2, 1), {DenFactor{2, 1, Monomial::one(), 1}});
  auto d = RatFun::from_poly(zp(r, 2, 2) - zp(r, 2, 1));
  auto prod = rf_cancel(f * d);
  CHECK(prod.is_polynomial());
  CHECK(prod.num() == zp(r, 2, 1));
}

TEST_CASE("synthetic division") {
  auto r = RingSpec::delta_surface(2);
  SUBCASE("difference of squares") {
    auto p = zp(r, 2, 1, 2) - zp(r, 2, 2, 2);
    auto [q, rem] = exact_divide(p, 2, 1, Monomial::one());
    CHECK(rem.is_zero());
    CHECK(q == -(zp(r, 2, 2) + zp(r, 2, 1)));
  }
  SUBCASE("nontrivial remainder stays in the low variable") {
    auto p = zp(r, 2, 1).scaled(gen1(r, Q(1))) - zp(r, 2, 2).scaled(gen1(r, Q(2)));
    auto [q, rem] = exact_divide(p, 2, 1, Monomial::one());
    CHECK(q == -konst(r, 2, 1).scaled(gen1(r, Q(2))));
    CHECK(rem == zp(r, 2, 1).scaled(gen1(r, Q(1)) - gen1(r, Q(2))));
  }
  SUBCASE("zero dividend") {
    auto [q, rem] = exact_divide(LaurentPoly::zero(r, 2), 2, 1, Monomial::one());
    CHECK(q.is_zero());
    CHECK(rem.is_zero());
  }
  SUBCASE("negative powers of the main variable") {
    // z2^-1 = (z2 - z1) * 0 + z2^-1; and (z2 - z1)*z2^-1 divides exactly.
    auto p = (zp(r, 2, 2) - zp(r, 2, 1)) * zp(r, 2, 2, -1);
    auto [q, rem] = exact_divide(p, 2, 1, Monomial::one());
    CHECK(rem.is_zero());
    CHECK(q == zp(r, 2, 2, -1));
  }
}

TEST_CASE("cancellation") {
  auto r = RingSpec::delta_surface(2);
  SUBCASE("plain common factor") {
    auto num = (zp(r, 2, 1) - zp(r, 2, 2)) * (zp(r, 2, 1) + zp(r, 2, 2));
    auto f = rf_cancel(RatFun::make(num, {DenFactor{1, 2, Monomial::one(), 1}}));
    CHECK(f.is_polynomial());
    CHECK(f.num() == zp(r, 2, 1) + zp(r, 2, 2));
  }
  SUBCASE("q-mismatch blocks cancellation without a delta factor") {
    auto num = zp(r, 2, 1).scaled(gen1(r, Q(1))) - zp(r, 2, 2).scaled(gen1(r, Q(2)));
    auto f = rf_cancel(RatFun::make(num, {DenFactor{2, 1, Monomial::one(), 1}}));
    CHECK(!f.is_polynomial());
    CHECK(f.den().size() == 1);
  }
  SUBCASE("delta factor unlocks the q-mismatch") {
    auto d12 = gen1(r, D(1, 2));
    auto num = zp(r, 2, 1).scaled(d12 * gen1(r, Q(1))) - zp(r, 2, 2).scaled(d12 * gen1(r, Q(2)));
    auto f = rf_cancel(RatFun::make(num, {DenFactor{1, 2, Monomial::one(), 1}}));
    CHECK(f.is_polynomial());
    CHECK(f.num() == konst(r, 2, 1).scaled(d12 * gen1(r, Q(1))));
  }
  SUBCASE("cancel preserves value") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 30; ++iter) {
      auto f = random_ratfun(r, 2, rng);
      auto g = rf_cancel(f);
      CHECK(f == g);
    }
  }
}

TEST_CASE("permutation action") {
  auto r = RingSpec::delta_surface(2);
  auto f = RatFun::make(zp(r, 2, 1).scaled(gen1(r, Q(1))), {DenFactor{1, 2, Monomial::one(), 1}});
  auto expected =
      RatFun::make(zp(r, 2, 2).scaled(gen1(r, Q(2))), {DenFactor{2, 1, Monomial::one(), 1}});
  auto swapped = rf_permute(Perm::transposition(2, 1, 2), f);
  CHECK(swapped == expected);
  CHECK(rf_permute(Perm(2), f) == f);
  std::mt19937_64 rng(3);
  for (int iter = 0; iter < 20; ++iter) {
    auto g = random_ratfun(r, 2, rng);
    auto tw = Perm::transposition(2, 1, 2);
    CHECK(rf_permute(tw, rf_permute(tw, g)) == g);
  }
}

TEST_CASE("symmetrization") {
  auto r = RingSpec::delta_surface(2);
  SUBCASE("two-variable kernel") {
    auto f =
        RatFun::make(zp(r, 2, 1).scaled(gen1(r, Q(1))), {DenFactor{1, 2, Monomial::one(), 1}});
    auto num = zp(r, 2, 1).scaled(gen1(r, Q(1))) - zp(r, 2, 2).scaled(gen1(r, Q(2)));
    auto expected = RatFun::make(num, {DenFactor{1, 2, Monomial::one(), 1}});
    CHECK(rf_symmetrize(f) == expected);
  }
  SUBCASE("telescoping to a constant") {
    auto f = RatFun::make(zp(r, 2, 1), {DenFactor{1, 2, Monomial::one(), 1}});
    auto s = rf_symmetrize(f);
    CHECK(s.is_polynomial());
    CHECK(s.num() == konst(r, 2, 1));
  }
  SUBCASE("one variable is a no-op") {
    auto r1 = RingSpec::delta_surface(1);
    auto f = RatFun::from_poly(zp(r1, 1, 1, 5));
    CHECK(rf_symmetrize(f) == f);
  }
  SUBCASE("result is symmetric and doubly-symmetrizing scales by k!") {
    std::mt19937_64 rng(11);
    auto r3 = RingSpec::delta_curve(3);
    for (int iter = 0; iter < 8; ++iter) {
      auto f = random_ratfun(r3, 3, rng);
      auto s = rf_symmetrize(f);
      CHECK(is_symmetric(s));
      for (const auto& sigma : Perm::all(3)) CHECK(rf_permute(sigma, s) == s);
      auto ss = rf_symmetrize(s);
      CHECK(ss == s.scaled(CoeffElement::constant(r3, 6)));
    }
  }
}

TEST_CASE("leading term extraction") {
  auto r = RingSpec::delta_curve(2);
  SUBCASE("highest lexicographic vector wins") {
    auto p = zp(r, 2, 1, 2) * zp(r, 2, 2) + zp(r, 2, 1) * zp(r, 2, 2, 2);
    auto [e, c] = p.leading_lex();
    CHECK(e == ExpVec{2, 1});
    CHECK(c == CoeffElement::constant(r, 1));
  }
  SUBCASE("constant polynomial") {
    auto two_minus_d = CoeffElement::constant(r, 2) - gen1(r, D(1, 2));
    auto [e, c] = LaurentPoly::constant(two_minus_d, 2).leading_lex();
    CHECK(e == ExpVec{0, 0});
    CHECK(c == two_minus_d);
  }
  SUBCASE("zero polynomial refuses") {
    CHECK_THROWS_AS(LaurentPoly::zero(r, 2).leading_lex(), Error);
  }
}

TEST_CASE("division reconstruction on random inputs") {
  std::mt19937_64 rng(23);
  auto r = RingSpec::delta_surface(3);
  for (int iter = 0; iter < 40; ++iter) {
    auto p = random_poly(r, 3, rng);
    std::uniform_int_distribution<int> vj(1, 3), vc(0, 1);
    int j = vj(rng);
    int i = vj(rng);
    if (i == j) i = (j % 3) + 1;
    Monomial c = vc(rng) ? Monomial::gen(Q(i == 0 ? 1 : i)) : Monomial::one();
    auto [q, rem] = exact_divide(p, j, i, c);
    auto back = q * den_factor_poly(r, 3, j, i, c) + rem;
    CHECK(back == p);
  }
}

TEST_CASE("arithmetic laws up to cancelled equality") {
  std::mt19937_64 rng(31);
  for (const auto& r : {RingSpec::delta_surface(2), RingSpec::delta_curve(3)}) {
    const int k = r->arity;
    for (int iter = 0; iter < 12; ++iter) {
      auto f = random_ratfun(r, k, rng);
      auto g = random_ratfun(r, k, rng);
      auto h = random_ratfun(r, k, rng);
      CHECK((f + g) == (g + f));
      CHECK((f * g) == (g * f));
      CHECK(((f + g) + h) == (f + (g + h)));
      CHECK(((f * g) * h) == (f * (g * h)));
      CHECK((f * (g + h)) == (f * g + f * h));
      CHECK((f - f).is_zero());
    }
  }
}

TEST_CASE("equality by cross-multiplication sees through representation") {
  auto r = RingSpec::delta_surface(2);
  auto d = den_factor_poly(r, 2, 2, 1, Monomial::one());
  auto f = RatFun::make(zp(r, 2, 1), {DenFactor{2, 1, Monomial::one(), 1}});
  auto g = RatFun::make(zp(r, 2, 1) * d, {DenFactor{2, 1, Monomial::one(), 2}});
  CHECK(f == g);
  auto h = RatFun::make(zp(r, 2, 2), {DenFactor{2, 1, Monomial::one(), 1}});
  CHECK(!(f == h));
}

TEST_CASE("canonical text output") {
  auto r = RingSpec::delta_surface(2);
  auto two_minus_d = CoeffElement::constant(r, 2) - gen1(r, D(1, 2));
  CHECK(text(two_minus_d) == "2 - D1_2");
  CHECK(text(LaurentPoly::constant(two_minus_d, 2)) == "2 - D1_2");
  auto f = RatFun::make(zp(r, 2, 1).scaled(gen1(r, Q(1))) - zp(r, 2, 2).scaled(gen1(r, Q(2))),
                        {DenFactor{2, 1, Monomial::one(), 1},
                         DenFactor{2, 1, Monomial::gen(Q(1)), 1}});
  CHECK(text(f) == "(q1*z1 - q2*z2) / ((z2 - z1)*(z2 - q1*z1))");
  CHECK(text(LaurentPoly::zero(r, 2)) == "0");
}
