#include "ushuf/specialize.hpp"

#include <utility>

namespace ushuf {

namespace {

CoeffElement ce_pow(const CoeffElement& x, int e) {
  CoeffElement r = CoeffElement::constant(x.ring(), 1);
  for (int s = 0; s < e; ++s) r = r * x;
  return r;
}

// s^(l) at factor f: the chain monomial t^(1)_f ... t^(l)_f (one when l = 0).
Monomial an_chain(int l, int f) {
  Monomial m;
  for (int r = 1; r <= l; ++r) m = m.times(Monomial::gen(GeneratorId::t_upper(r, f)));
  return m;
}

CoeffElement chern_root_delta(const RingPtr& r) {
  CoeffElement one = CoeffElement::constant(r, 1);
  return (one - CoeffElement::generator(r, GeneratorId::named("a"))) *
         (one - CoeffElement::generator(r, GeneratorId::named("b")));
}

Monomial ab_monomial() {
  return Monomial::gen(GeneratorId::named("a")).times(Monomial::gen(GeneratorId::named("b")));
}

}  // namespace

CoeffElement Specialization::delta_image(int i, int j) const {
  if (i < 1 || j < 1 || i > arity_ || j > arity_ || i == j)
    fail(Errc::IndexOutOfRange, "delta image needs two distinct factor indices within the arity");
  if (i > j) std::swap(i, j);
  return delta_fn_(i, j);
}

Monomial Specialization::q_image(int i) const {
  if (!has_q()) fail(Errc::FlavorMismatch, "curve specializations carry no q images");
  if (i < 1 || i > arity_) fail(Errc::IndexOutOfRange, "q image index outside the arity");
  return q_fn_(i);
}

Specialization make_specialization(const std::string& name, int k, int n) {
  if (k < 0 || k > max_arity()) fail(Errc::ArityBound, "specialization arity outside the configured bound");
  Specialization sp;
  sp.name_ = name;
  sp.arity_ = k;
  if (name == "a2" || name == "diagonal") {
    sp.flavor_ = Flavor::Surface;
    sp.target_ = RingSpec::free_laurent({"a", "b"}, {"a", "b"}, k);
    RingPtr r = sp.target_;
    sp.delta_fn_ = [r](int, int) { return chern_root_delta(r); };
    sp.q_fn_ = [](int) { return ab_monomial(); };
  } else if (name == "p2") {
    sp.flavor_ = Flavor::Surface;
    sp.target_ = RingSpec::truncation(k, 3);
    RingPtr r = sp.target_;
    sp.delta_fn_ = [r](int i, int j) {
      auto t = [](int f, int e) { return Monomial::gen(GeneratorId::t(f), e); };
      TermList terms{{Monomial::one(), 1},
                     {t(i, 2).times(t(j, 1)), 1},
                     {t(i, 1).times(t(j, 2)), 1},
                     {t(i, 1).times(t(j, 1)), -3}};
      return CoeffElement::from_generators(r, std::move(terms));
    };
    sp.q_fn_ = [](int i) { return Monomial::gen(GeneratorId::t(i), 3); };
  } else if (name == "p1") {
    sp.flavor_ = Flavor::Curve;
    sp.target_ = RingSpec::truncation(k, 2);
    RingPtr r = sp.target_;
    sp.delta_fn_ = [r](int i, int j) {
      TermList terms{{Monomial::one(), 1},
                     {Monomial::gen(GeneratorId::t(i)).times(Monomial::gen(GeneratorId::t(j))), -1}};
      return CoeffElement::from_generators(r, std::move(terms));
    };
  } else if (name == "a1") {
    sp.flavor_ = Flavor::Curve;
    sp.target_ = RingSpec::free_laurent({"q"}, {"q"}, k);
    RingPtr r = sp.target_;
    sp.delta_fn_ = [r](int, int) {
      return CoeffElement::constant(r, 1) - CoeffElement::generator(r, GeneratorId::named("q"));
    };
  } else if (name == "an") {
    if (n < 1) fail(Errc::UsageError, "resolution parameter n must be >= 1");
    sp.flavor_ = Flavor::Surface;
    sp.an_n_ = n;
    sp.target_ = RingSpec::an_resolution(n, k);
    RingPtr r = sp.target_;
    sp.delta_fn_ = [r, n](int i, int j) {
      const Monomial a = Monomial::gen(GeneratorId::named("a"));
      const Monomial b = Monomial::gen(GeneratorId::named("b"));
      const Monomial ab = ab_monomial();
      TermList terms;
      for (int l = 1; l <= n; ++l) {
        Monomial ratio = an_chain(l, i).times(an_chain(l, j).inverse());
        terms.emplace_back(ratio, 1);
        terms.emplace_back(ratio.times(ab), 1);
        terms.emplace_back(an_chain(l - 1, i).times(an_chain(l, j).inverse()).times(a), -1);
        terms.emplace_back(an_chain(l, i).times(an_chain(l - 1, j).inverse()).times(b), -1);
      }
      return CoeffElement::from_generators(r, std::move(terms));
    };
    sp.q_fn_ = [](int) { return ab_monomial(); };
  } else {
    fail(Errc::UnknownName, "no built-in specialization named '" + name + "'");
  }
  return sp;
}

Specialization make_custom_specialization(std::string name, Flavor flavor, int k, RingPtr target,
                                          Specialization::DeltaFn delta_fn,
                                          Specialization::QFn q_fn) {
  if (k < 0 || k > max_arity()) fail(Errc::ArityBound, "specialization arity outside the configured bound");
  if (!target) fail(Errc::RingMismatch, "custom specialization needs a target ring");
  if (!delta_fn) fail(Errc::UsageError, "custom specialization needs a delta image");
  if (flavor == Flavor::Surface && !q_fn)
    fail(Errc::UsageError, "surface specializations need a q image");
  Specialization sp;
  sp.name_ = std::move(name);
  sp.flavor_ = flavor;
  sp.arity_ = k;
  sp.target_ = std::move(target);
  sp.delta_fn_ = std::move(delta_fn);
  if (flavor == Flavor::Surface) sp.q_fn_ = std::move(q_fn);
  return sp;
}

CoeffElement specialize_coeff(const Specialization& sp, const CoeffElement& x) {
  require_same_ring(x.ring(), universal_ring(sp.flavor(), sp.arity()));
  const RingPtr& tgt = sp.target();
  CoeffElement acc = CoeffElement::constant(tgt, 0);
  for (const auto& [m, c] : x.terms()) {
    CoeffElement term = CoeffElement::constant(tgt, c);
    Monomial unit;
    for (const auto& [g, e] : m.exps()) {
      if (g.kind == GeneratorId::Kind::Delta)
        term = term * ce_pow(sp.delta_image(g.a, g.b), e);
      else if (g.kind == GeneratorId::Kind::Q)
        unit = unit.times(sp.q_image(g.a).pow(e));
      else
        fail(Errc::InternalMismatch, "unexpected generator kind in a universal element");
    }
    if (!unit.is_one()) term = term * CoeffElement::monomial(tgt, unit);
    acc = acc + term;
  }
  return acc;
}

RatFun specialize_ratfun(const Specialization& sp, const RatFun& f) {
  LaurentPoly num = f.num().map_coeffs(
      sp.target(), [&sp](const CoeffElement& c) { return specialize_coeff(sp, c); });
  std::vector<DenFactor> den;
  for (const auto& [key, mult] : f.den()) {
    Monomial c;
    for (const auto& [g, e] : key.c.exps()) {
      if (g.kind != GeneratorId::Kind::Q)
        fail(Errc::InternalMismatch, "unexpected generator kind in a universal denominator unit");
      c = c.times(sp.q_image(g.a).pow(e));
    }
    den.push_back(DenFactor{key.j, key.i, c, mult});
  }
  return RatFun::make(std::move(num), den);
}

ShuffleElement specialize_element(const Specialization& sp, const ShuffleElement& e) {
  if (e.flavor != sp.flavor())
    fail(Errc::FlavorMismatch, "element flavor differs from the specialization flavor");
  if (e.arity != sp.arity())
    fail(Errc::ArityMismatch, "element arity differs from the specialization arity");
  return ShuffleElement{e.arity, e.flavor, specialize_ratfun(sp, e.value)};
}

Kernel kernel_for(const std::string& name, int n) {
  Specialization probe = make_specialization(name, 0, n);
  Kernel ker;
  ker.flavor = probe.flavor();
  ker.ring_at = [name, n](int k) { return make_specialization(name, k, n).target(); };
  ker.delta_image = [name, n](const RingPtr& ring, int i, int j) {
    Specialization sp = make_specialization(name, ring->arity, n);
    require_same_ring(sp.target(), ring);
    return sp.delta_image(i, j);
  };
  if (probe.flavor() == Flavor::Surface)
    ker.q_image = [name, n](int i) { return make_specialization(name, i, n).q_image(i); };
  return ker;
}

CompatibilityReport check_spec_compatibility(const Specialization& sp) {
  CompatibilityReport rep;
  rep.spec_name = sp.name();
  rep.arity = sp.arity();
  const int k = sp.arity();
  auto add = [&rep](std::string id, const CoeffElement& w) {
    bool ok = w.is_zero();
    rep.items.push_back(CompatibilityItem{std::move(id), ok, w});
    if (!ok) rep.all_pass = false;
  };
  auto dname = [](int i, int j) { return "D" + std::to_string(i) + "_" + std::to_string(j); };
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      if (sp.has_q()) {
        CoeffElement qi = CoeffElement::monomial(sp.target(), sp.q_image(i));
        CoeffElement qj = CoeffElement::monomial(sp.target(), sp.q_image(j));
        add(dname(i, j) + "*(q" + std::to_string(i) + " - q" + std::to_string(j) + ")",
            sp.delta_image(i, j) * (qi - qj));
      }
      for (int l = 1; l <= k; ++l) {
        if (l == i || l == j) continue;
        add(dname(i, j) + "*(" + dname(i, l) + " - " + dname(j, l) + ")",
            sp.delta_image(i, j) * (sp.delta_image(i, l) - sp.delta_image(j, l)));
      }
    }
  return rep;
}

BigInt euler_pairing(const CoeffElement& x, const CoeffElement& y) {
  require_same_ring(x.ring(), y.ring());
  const RingPtr& r = x.ring();
  if (!r || r->variant != RingVariant::Truncation || r->arity != 1 || !r->named_gens.empty() ||
      (r->trunc_order != 2 && r->trunc_order != 3))
    fail(Errc::NotSingleFactor, "pairing requires a one-factor line or plane ring");
  // In the u = 1 - t basis chi(u^e) = 1 for every surviving power e, so the
  // pairing is the coefficient sum of the product.
  CoeffElement product = x * y;
  BigInt total = 0;
  for (const auto& [m, c] : product.terms()) total += c;
  return total;
}

namespace {

struct DiagZetaParts {
  RatFun series_form;
  CoeffElement delta_hat;
};

DiagZetaParts diag_zeta_parts(const LineClassDecomposition& decomp) {
  const RingPtr& r = decomp.ring;
  if (!r) fail(Errc::RingMismatch, "decomposition needs a ring");
  auto require_unit = [&r](const Monomial& m) {
    for (const auto& [g, e] : m.exps()) {
      (void)e;
      if (!r->invertible(g)) fail(Errc::NonUnitEntry, g.text() + " is not invertible");
    }
  };
  CoeffElement one = CoeffElement::constant(r, 1);
  LaurentPoly num = LaurentPoly::constant(one, 1);
  std::vector<DenFactor> den;
  CoeffElement delta_hat = CoeffElement::constant(r, 0);
  for (const auto& [L, sign] : decomp.entries) {
    if (sign != 1 && sign != -1) fail(Errc::UsageError, "entry signs must be +1 or -1");
    require_unit(L);
    CoeffElement Lc = CoeffElement::monomial(r, L);
    delta_hat = delta_hat + (sign == 1 ? Lc : -Lc);
    if (sign == -1) {
      num = num * (LaurentPoly::constant(one, 1) - LaurentPoly::term(Lc, ExpVec{1}));
    } else {
      // 1/(1 - L x) = (-1/L) / (x - 1/L)
      den.push_back(DenFactor{1, 0, L.inverse(), 1});
      num = num.scaled(CoeffElement::monomial(r, L.inverse(), -1));
    }
  }
  return DiagZetaParts{RatFun::make(std::move(num), den), std::move(delta_hat)};
}

}  // namespace

DiagZetaResult zeta_from_diag_class(const LineClassDecomposition& decomp, const Monomial& q_hat) {
  DiagZetaParts parts = diag_zeta_parts(decomp);
  const RingPtr& r = decomp.ring;
  for (const auto& [g, e] : q_hat.exps()) {
    (void)e;
    if (!r->invertible(g)) fail(Errc::NonUnitEntry, g.text() + " is not invertible");
  }
  // 1 + D*x/((1-x)(1-q*x)) = [(x-1)(x-1/q) + D*x/q] / ((x-1)(x-1/q))
  Monomial q_inv = q_hat.inverse();
  LaurentPoly cleared = den_factor_poly(r, 1, 1, 0, Monomial::one()) *
                        den_factor_poly(r, 1, 1, 0, q_inv);
  LaurentPoly ref_num =
      cleared + LaurentPoly::term(parts.delta_hat * CoeffElement::monomial(r, q_inv), ExpVec{1});
  RatFun ref = RatFun::make(std::move(ref_num),
                            {DenFactor{1, 0, Monomial::one(), 1}, DenFactor{1, 0, q_inv, 1}});
  bool holds = parts.series_form == ref;
  return DiagZetaResult{std::move(parts.series_form), std::move(parts.delta_hat), holds};
}

DiagZetaResult zeta_from_diag_class(const LineClassDecomposition& decomp) {
  DiagZetaParts parts = diag_zeta_parts(decomp);
  const RingPtr& r = decomp.ring;
  // 1 + D*x/(1-x) = [(x-1) - D*x] / (x-1)
  LaurentPoly ref_num =
      den_factor_poly(r, 1, 1, 0, Monomial::one()) - LaurentPoly::term(parts.delta_hat, ExpVec{1});
  RatFun ref = RatFun::make(std::move(ref_num), {DenFactor{1, 0, Monomial::one(), 1}});
  bool holds = parts.series_form == ref;
  return DiagZetaResult{std::move(parts.series_form), std::move(parts.delta_hat), holds};
}

}  // namespace ushuf
