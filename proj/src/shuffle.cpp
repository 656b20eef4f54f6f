#include "ushuf/shuffle.hpp"

#include <atomic>
#include <cstdlib>
#include <numeric>

namespace ushuf {

namespace {

std::atomic<int> g_max_arity{0};

int env_max_arity() {
  if (const char* s = std::getenv("SHUFFLE_MAX_ARITY")) {
    int v = std::atoi(s);
    if (v >= 1) return v;
  }
  return 6;
}

}  // namespace

int max_arity() {
  int v = g_max_arity.load();
  if (v == 0) {
    v = env_max_arity();
    g_max_arity.store(v);
  }
  return v;
}

void set_max_arity(int k) {
  if (k < 1) fail(Errc::UsageError, "arity bound must be positive");
  g_max_arity.store(k);
}

RingPtr universal_ring(Flavor flavor, int k) {
  return flavor == Flavor::Surface ? RingSpec::delta_surface(k) : RingSpec::delta_curve(k);
}

Kernel Kernel::universal(Flavor flavor) {
  Kernel ker;
  ker.flavor = flavor;
  ker.ring_at = [flavor](int k) { return universal_ring(flavor, k); };
  ker.delta_image = [](const RingPtr& ring, int i, int j) {
    return CoeffElement::generator(ring, GeneratorId::delta(i, j));
  };
  if (flavor == Flavor::Surface)
    ker.q_image = [](int i) { return Monomial::gen(GeneratorId::q(i)); };
  return ker;
}

RatFun zeta_with(const Kernel& ker, int i, int j, int k) {
  if (i < 1 || j < 1 || i > k || j > k || i == j)
    fail(Errc::IndexOutOfRange, "zeta needs two distinct indices within the arity");
  RingPtr ring = ker.ring_at(k);
  CoeffElement delta = ker.delta_image(ring, i, j);
  LaurentPoly zi = LaurentPoly::z_power(ring, k, i, 1);
  LaurentPoly zj = LaurentPoly::z_power(ring, k, j, 1);
  LaurentPoly base = zj - zi;  // z_j - z_i
  if (ker.flavor == Flavor::Curve) {
    return RatFun::make(base + zi.scaled(delta), {DenFactor{j, i, Monomial::one(), 1}});
  }
  Monomial qi = ker.q_image(i);
  LaurentPoly twisted = den_factor_poly(ring, k, j, i, qi);  // z_j - q_i z_i
  LaurentPoly num = base * twisted + (zi * zj).scaled(delta);
  return RatFun::make(std::move(num),
                      {DenFactor{j, i, Monomial::one(), 1}, DenFactor{j, i, qi, 1}});
}

RatFun zeta(Flavor flavor, int i, int j, int k) {
  return zeta_with(Kernel::universal(flavor), i, j, k);
}

ShuffleElement make_shuffle(Flavor flavor, RatFun value) {
  const RingPtr& ring = value.ring();
  if (!ring) fail(Errc::UsageError, "shuffle element needs a ring");
  if (ring->variant == RingVariant::DeltaSurface && flavor != Flavor::Surface)
    fail(Errc::FlavorMismatch, "surface ring carries curve tag");
  if (ring->variant == RingVariant::DeltaCurve && flavor != Flavor::Curve)
    fail(Errc::FlavorMismatch, "curve ring carries surface tag");
  if (!is_symmetric(value)) fail(Errc::NotSymmetric, "shuffle element must be symmetric");
  return ShuffleElement{value.zarity(), flavor, std::move(value)};
}

ShuffleElement one_element(Flavor flavor, const Kernel& ker) {
  RingPtr ring = ker.ring_at(0);
  return ShuffleElement{0, flavor,
                        RatFun::from_poly(LaurentPoly::constant(CoeffElement::constant(ring, 1), 0))};
}

ShuffleElement one_element(Flavor flavor) { return one_element(flavor, Kernel::universal(flavor)); }

ShuffleElement monomial_element(Flavor flavor, int n, const Kernel& ker) {
  RingPtr ring = ker.ring_at(1);
  return ShuffleElement{1, flavor, RatFun::from_poly(LaurentPoly::z_power(ring, 1, 1, n))};
}

ShuffleElement monomial_element(Flavor flavor, int n) {
  return monomial_element(flavor, n, Kernel::universal(flavor));
}

std::vector<Perm> shuffle_cosets(int k, int kp) {
  const int total = k + kp;
  std::vector<Perm> out;
  std::vector<int> comb(k);
  std::iota(comb.begin(), comb.end(), 1);  // first k-subset of {1..total}
  for (;;) {
    std::vector<int> images(total);
    std::vector<bool> used(total + 1, false);
    for (int s = 0; s < k; ++s) {
      images[s] = comb[s];
      used[comb[s]] = true;
    }
    int pos = k;
    for (int v = 1; v <= total; ++v)
      if (!used[v]) images[pos++] = v;
    out.emplace_back(images);
    // next combination
    int s = k - 1;
    while (s >= 0 && comb[s] == total - (k - 1 - s)) --s;
    if (s < 0) break;
    ++comb[s];
    for (int t = s + 1; t < k; ++t) comb[t] = comb[t - 1] + 1;
  }
  return out;
}

ShuffleElement shuffle_mul(const ShuffleElement& a, const ShuffleElement& b, const Kernel& ker) {
  if (a.flavor != b.flavor) fail(Errc::FlavorMismatch, "cannot multiply across flavors");
  const int k = a.arity, kp = b.arity, total = k + kp;
  if (total > max_arity()) fail(Errc::ArityBound, "combined arity exceeds the configured bound");

  RatFun prod = a.value.embed(EmbedMode::First, total) * b.value.embed(EmbedMode::Last, total);
  for (int i = 1; i <= k; ++i)
    for (int j = k + 1; j <= total; ++j) prod = prod * zeta_with(ker, i, j, total);

  std::vector<RatFun> images;
  for (const Perm& sigma : shuffle_cosets(k, kp)) images.push_back(prod.permute(sigma));
  RatFun sum = images.front();
  for (size_t s = 1; s < images.size(); ++s) sum = sum + images[s];
  return ShuffleElement{total, a.flavor, rf_cancel(sum)};
}

ShuffleElement shuffle_mul(const ShuffleElement& a, const ShuffleElement& b) {
  return shuffle_mul(a, b, Kernel::universal(a.flavor));
}

namespace {

RatFun closed_form(const std::vector<int>& ns, const Kernel& ker) {
  const int k = static_cast<int>(ns.size());
  RingPtr ring = ker.ring_at(k);
  RatFun sum;
  bool have = false;
  for (const Perm& sigma : Perm::all(k)) {
    ExpVec e(k, 0);
    for (int s = 1; s <= k; ++s) e[sigma.apply(s) - 1] = ns[s - 1];
    RatFun summand = RatFun::from_poly(
        LaurentPoly::term(CoeffElement::constant(ring, 1), e));
    for (int s = 1; s <= k; ++s)
      for (int t = s + 1; t <= k; ++t)
        summand = summand * zeta_with(ker, sigma.apply(s), sigma.apply(t), k);
    sum = have ? sum + summand : summand;
    have = true;
  }
  return rf_cancel(sum);
}

}  // namespace

ShuffleElement generator_product(const std::vector<int>& ns, Flavor flavor, const Kernel& ker) {
  if (ns.empty()) fail(Errc::UsageError, "generator product needs at least one exponent");
  const int k = static_cast<int>(ns.size());
  if (k > max_arity()) fail(Errc::ArityBound, "arity exceeds the configured bound");
  ShuffleElement acc = monomial_element(flavor, ns[0], ker);
  for (int s = 1; s < k; ++s) acc = shuffle_mul(acc, monomial_element(flavor, ns[s], ker), ker);
  RatFun closed = closed_form(ns, ker);
  if (!(closed == acc.value))
    fail(Errc::InternalMismatch, "closed form disagrees with the iterated product");
  return acc;
}

ShuffleElement generator_product(const std::vector<int>& ns, Flavor flavor) {
  return generator_product(ns, flavor, Kernel::universal(flavor));
}

LaurentPoly pole_certificate(const ShuffleElement& e, const Kernel& ker) {
  RatFun g = e.value;
  if (ker.flavor == Flavor::Surface) {
    const int k = e.arity;
    RingPtr ring = e.value.ring();
    LaurentPoly clear = LaurentPoly::constant(CoeffElement::constant(ring, 1), k);
    for (int i = 1; i <= k; ++i)
      for (int j = 1; j <= k; ++j) {
        if (i == j) continue;
        clear = clear * den_factor_poly(ring, k, i, j, ker.q_image(j));  // z_i - q_j z_j
      }
    g = g * RatFun::from_poly(clear);
  }
  g = rf_cancel(g);
  if (!g.is_polynomial())
    fail(Errc::NotInClaimedForm, "denominator factors remain after clearing");
  return g.num();
}

LaurentPoly pole_certificate(const ShuffleElement& e) {
  return pole_certificate(e, Kernel::universal(e.flavor));
}

LeadingOrder leading_order(const std::vector<int>& ns, Flavor flavor) {
  if (flavor != Flavor::Curve) fail(Errc::FlavorMismatch, "leading order is a curve statement");
  for (size_t s = 1; s < ns.size(); ++s)
    if (ns[s - 1] < ns[s]) fail(Errc::NotSorted, "exponents must be weakly decreasing");
  const int k = static_cast<int>(ns.size());
  ShuffleElement e = generator_product(ns, flavor);
  LaurentPoly poly = pole_certificate(e);
  LeadingOrder out;
  out.actual = poly.leading_lex().second;

  RingPtr ring = e.value.ring();
  CoeffElement predicted = CoeffElement::constant(ring, 0);
  CoeffElement one = CoeffElement::constant(ring, 1);
  for (const Perm& sigma : Perm::all(k)) {
    bool admissible = true;
    for (int i = 1; i <= k && admissible; ++i)
      for (int j = 1; j < i; ++j)
        if (sigma.apply(i) < sigma.apply(j) && ns[i - 1] != ns[j - 1]) {
          admissible = false;
          break;
        }
    if (!admissible) continue;
    CoeffElement prod = one;
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j)
        if (sigma.apply(i) < sigma.apply(j))
          prod = prod * (one - CoeffElement::generator(ring, GeneratorId::delta(i, j)));
    predicted = predicted + prod;
  }
  out.predicted = predicted;
  out.equal = out.actual == out.predicted;
  return out;
}

}  // namespace ushuf
