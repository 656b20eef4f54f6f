#pragma once

#include <random>
#include <utility>
#include <vector>

#include "ushuf/ratfun.hpp"
#include "ushuf/ring.hpp"
#include "ushuf/text.hpp"

namespace testutil {

using namespace ushuf;

inline CoeffElement gen1(const RingPtr& r, const GeneratorId& g, int e = 1) {
  return CoeffElement::generator(r, g, e);
}
inline GeneratorId D(int i, int j) { return GeneratorId::delta(i, j); }
inline GeneratorId Q(int i) { return GeneratorId::q(i); }
inline GeneratorId T(int i) { return GeneratorId::t(i); }
inline GeneratorId TU(int i, int l) { return GeneratorId::t_upper(i, l); }

// (generator, may carry negative exponents)
inline std::vector<std::pair<GeneratorId, bool>> ring_generators(const RingPtr& r) {
  std::vector<std::pair<GeneratorId, bool>> out;
  switch (r->variant) {
    case RingVariant::DeltaSurface:
      for (int i = 1; i <= r->arity; ++i)
        for (int j = i + 1; j <= r->arity; ++j) out.push_back({D(i, j), false});
      for (int i = 1; i <= r->arity; ++i) out.push_back({Q(i), true});
      break;
    case RingVariant::DeltaCurve:
      for (int i = 1; i <= r->arity; ++i)
        for (int j = i + 1; j <= r->arity; ++j) out.push_back({D(i, j), false});
      break;
    case RingVariant::Truncation:
      for (int i = 1; i <= r->arity; ++i) out.push_back({T(i), true});
      break;
    case RingVariant::AnResolution:
      for (int i = 1; i <= r->an_n; ++i)
        for (int l = 1; l <= r->arity; ++l) out.push_back({TU(i, l), true});
      out.push_back({GeneratorId::named("a"), true});
      out.push_back({GeneratorId::named("b"), true});
      break;
    case RingVariant::FreeLaurent:
      for (const auto& g : r->named_gens) out.push_back({g, r->invertible(g)});
      break;
  }
  return out;
}

inline CoeffElement random_element(const RingPtr& r, std::mt19937_64& rng) {
  auto gens = ring_generators(r);
  std::uniform_int_distribution<int> nterms(0, 3), coef(-9, 9), expo(-2, 2), pick(0, 1);
  TermList terms;
  int n = nterms(rng);
  for (int t = 0; t <= n; ++t) {
    Monomial m;
    for (const auto& [g, inv] : gens) {
      if (pick(rng)) continue;
      int e = expo(rng);
      if (!inv && e < 0) e = -e;
      m = m.times(Monomial::gen(g, e));
    }
    terms.emplace_back(m, coef(rng));
  }
  return CoeffElement::from_generators(r, terms);
}

inline CoeffElement random_nonzero(const RingPtr& r, std::mt19937_64& rng) {
  for (;;) {
    CoeffElement c = random_element(r, rng);
    if (!c.is_zero()) return c;
  }
}

inline LaurentPoly random_poly(const RingPtr& r, int zarity, std::mt19937_64& rng,
                               int max_terms = 3, int max_exp = 2) {
  std::uniform_int_distribution<int> nterms(1, max_terms), expo(-max_exp, max_exp);
  LaurentPoly p = LaurentPoly::zero(r, zarity);
  int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    ExpVec e(zarity);
    for (int s = 0; s < zarity; ++s) e[s] = expo(rng);
    p = p + LaurentPoly::term(random_element(r, rng), e);
  }
  return p;
}

// Random denominator drawn from the binomial factors the kernels generate.
inline std::vector<DenFactor> random_den(const RingPtr& r, int zarity, std::mt19937_64& rng) {
  std::vector<DenFactor> pool;
  for (int i = 1; i <= zarity; ++i)
    for (int j = i + 1; j <= zarity; ++j) {
      pool.push_back(DenFactor{j, i, Monomial::one(), 1});
      if (r->variant == RingVariant::DeltaSurface)
        pool.push_back(DenFactor{j, i, Monomial::gen(Q(i)), 1});
    }
  std::uniform_int_distribution<int> pick(0, 1), mult(1, 2);
  std::vector<DenFactor> out;
  for (auto& f : pool)
    if (pick(rng)) {
      f.mult = mult(rng);
      out.push_back(f);
    }
  return out;
}

inline RatFun random_ratfun(const RingPtr& r, int zarity, std::mt19937_64& rng) {
  return RatFun::make(random_poly(r, zarity, rng), random_den(r, zarity, rng));
}

}  // namespace testutil
