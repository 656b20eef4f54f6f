#include "ushuf/ratfun.hpp"

#include <algorithm>

namespace ushuf {

namespace {

void require_same(const LaurentPoly& a, const LaurentPoly& b) {
  require_same_ring(a.ring(), b.ring());
  if (a.zarity() != b.zarity()) fail(Errc::ArityMismatch, "variable counts differ");
}

ExpVec add_vec(const ExpVec& a, const ExpVec& b) {
  ExpVec out(a.size());
  for (size_t s = 0; s < a.size(); ++s) out[s] = a[s] + b[s];
  return out;
}

}  // namespace

void LaurentPoly::add_term(const ExpVec& e, const CoeffElement& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    CoeffElement sum = it->second + c;
    if (sum.is_zero())
      terms_.erase(it);
    else
      it->second = std::move(sum);
  }
}

LaurentPoly LaurentPoly::zero(RingPtr ring, int zarity) {
  LaurentPoly p;
  p.ring_ = std::move(ring);
  p.zarity_ = zarity;
  return p;
}

LaurentPoly LaurentPoly::constant(const CoeffElement& c, int zarity) {
  LaurentPoly p = zero(c.ring(), zarity);
  p.add_term(ExpVec(zarity, 0), c);
  return p;
}

LaurentPoly LaurentPoly::term(const CoeffElement& c, const ExpVec& e) {
  LaurentPoly p = zero(c.ring(), static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

LaurentPoly LaurentPoly::z_power(RingPtr ring, int zarity, int var, int exp) {
  if (var < 1 || var > zarity) fail(Errc::IndexOutOfRange, "z index outside variable count");
  ExpVec e(zarity, 0);
  e[var - 1] = exp;
  return term(CoeffElement::constant(std::move(ring), 1), e);
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  require_same(*this, o);
  LaurentPoly out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = zero(ring_, zarity_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  require_same(*this, o);
  LaurentPoly out = zero(ring_, zarity_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) out.add_term(add_vec(e1, e2), c1 * c2);
  return out;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const { return (*this - o).is_zero(); }

LaurentPoly LaurentPoly::scaled(const BigInt& c) const {
  LaurentPoly out = zero(ring_, zarity_);
  for (const auto& [e, v] : terms_) out.add_term(e, v.scaled(c));
  return out;
}

LaurentPoly LaurentPoly::scaled(const CoeffElement& c) const {
  LaurentPoly out = zero(ring_, zarity_);
  for (const auto& [e, v] : terms_) out.add_term(e, v * c);
  return out;
}

LaurentPoly LaurentPoly::shifted(int var, int exp) const {
  if (exp == 0) return *this;
  LaurentPoly out = zero(ring_, zarity_);
  for (const auto& [e, v] : terms_) {
    ExpVec ne = e;
    ne[var - 1] += exp;
    out.terms_.emplace(std::move(ne), v);
  }
  return out;
}

LaurentPoly LaurentPoly::pow(int e) const {
  if (e < 0) fail(Errc::UsageError, "negative polynomial power");
  LaurentPoly out = constant(CoeffElement::constant(ring_, 1), zarity_);
  for (int s = 0; s < e; ++s) out = out * *this;
  return out;
}

LaurentPoly LaurentPoly::permute(const Perm& sigma) const {
  if (sigma.size() != zarity_) fail(Errc::ArityMismatch, "permutation size differs from variable count");
  LaurentPoly out = zero(ring_, zarity_);
  for (const auto& [e, v] : terms_) {
    ExpVec ne(zarity_, 0);
    for (int s = 1; s <= zarity_; ++s) ne[sigma.apply(s) - 1] = e[s - 1];
    out.add_term(ne, v.permute(sigma));
  }
  return out;
}

LaurentPoly LaurentPoly::embed(EmbedMode mode, int total_zarity) const {
  if (total_zarity < zarity_) fail(Errc::ArityOverflow, "cannot embed into fewer variables");
  const int shift = (mode == EmbedMode::Last) ? total_zarity - zarity_ : 0;
  const int ring_total = ring_->arity + (total_zarity - zarity_);
  LaurentPoly out;
  out.zarity_ = total_zarity;
  for (const auto& [e, v] : terms_) {
    ExpVec ne(total_zarity, 0);
    for (int s = 0; s < zarity_; ++s) ne[s + shift] = e[s];
    CoeffElement nv = v.embed(mode, ring_total);
    if (!out.ring_) out.ring_ = nv.ring();
    out.add_term(ne, nv);
  }
  if (!out.ring_) {
    CoeffElement probe = CoeffElement::constant(ring_, 1).embed(mode, ring_total);
    out.ring_ = probe.ring();
  }
  return out;
}

LaurentPoly LaurentPoly::map_coeffs(
    RingPtr target, const std::function<CoeffElement(const CoeffElement&)>& fn) const {
  LaurentPoly out = zero(std::move(target), zarity_);
  for (const auto& [e, v] : terms_) out.add_term(e, fn(v));
  return out;
}

std::pair<ExpVec, CoeffElement> LaurentPoly::leading_lex() const {
  if (terms_.empty()) fail(Errc::ZeroPolynomial, "leading term of zero");
  auto it = terms_.rbegin();
  return {it->first, it->second};
}

int LaurentPoly::min_exp(int var) const {
  int m = 0;
  bool first = true;
  for (const auto& [e, v] : terms_) {
    int x = e[var - 1];
    if (first || x < m) m = x;
    first = false;
  }
  return m;
}

int LaurentPoly::max_exp(int var) const {
  int m = 0;
  bool first = true;
  for (const auto& [e, v] : terms_) {
    int x = e[var - 1];
    if (first || x > m) m = x;
    first = false;
  }
  return m;
}

LaurentPoly den_factor_poly(RingPtr ring, int zarity, int j, int i, const Monomial& c) {
  LaurentPoly p = LaurentPoly::z_power(ring, zarity, j, 1);
  CoeffElement mc = CoeffElement::monomial(ring, c, -1);
  if (i == 0) return p + LaurentPoly::constant(mc, zarity);
  ExpVec e(zarity, 0);
  e[i - 1] = 1;
  return p + LaurentPoly::term(mc, e);
}

std::pair<LaurentPoly, LaurentPoly> exact_divide(const LaurentPoly& p, int j, int i,
                                                 const Monomial& c) {
  const int k = p.zarity();
  if (j < 1 || j > k || i < 0 || i > k || i == j)
    fail(Errc::UsageError, "malformed division factor");
  LaurentPoly zeroP = LaurentPoly::zero(p.ring(), k);
  if (p.is_zero()) return {zeroP, zeroP};

  const int s = std::max(0, -p.min_exp(j));
  LaurentPoly pp = p.shifted(j, s);
  const int D = pp.max_exp(j);

  std::map<int, LaurentPoly> coeff;
  for (const auto& [e, v] : pp.terms()) {
    int d = e[j - 1];
    ExpVec flat = e;
    flat[j - 1] = 0;
    auto it = coeff.find(d);
    if (it == coeff.end()) it = coeff.emplace(d, zeroP).first;
    it->second.add_term(flat, v);
  }
  auto at = [&](int d) -> LaurentPoly {
    auto it = coeff.find(d);
    return it == coeff.end() ? zeroP : it->second;
  };

  CoeffElement cm = CoeffElement::monomial(p.ring(), c);
  LaurentPoly quot = zeroP;
  LaurentPoly carry = zeroP;
  for (int d = D; d >= 1; --d) {
    LaurentPoly cur = at(d) + carry;
    quot = quot + cur.shifted(j, d - 1);
    carry = cur.scaled(cm);
    if (i != 0) carry = carry.shifted(i, 1);
  }
  LaurentPoly rem = at(0) + carry;
  return {quot.shifted(j, -s), rem.shifted(j, -s)};
}

RatFun RatFun::from_poly(LaurentPoly num) {
  RatFun f;
  f.num_ = std::move(num);
  f.cancelled_ = true;
  return f;
}

RatFun RatFun::make(LaurentPoly num, const std::vector<DenFactor>& den) {
  RatFun f;
  const RingPtr ring = num.ring();
  const int k = num.zarity();
  f.num_ = std::move(num);
  for (const auto& d : den) {
    if (d.mult <= 0) fail(Errc::UsageError, "denominator multiplicity must be positive");
    int j = d.j, i = d.i;
    Monomial c = d.c;
    if (j < 1 || j > k || i < 0 || i > k || i == j)
      fail(Errc::UsageError, "malformed denominator factor");
    for (const auto& [g, e] : c.exps())
      if (!ring->invertible(g)) fail(Errc::NonUnitEntry, "denominator unit is not invertible");
    if (i >= 1 && j < i) {
      // (z_j - c z_i) = (-c) * (z_i - c^{-1} z_j)
      Monomial cinv = c.inverse();
      TermList unit{{cinv.pow(d.mult), (d.mult % 2 == 0) ? BigInt(1) : BigInt(-1)}};
      f.num_ = f.num_.scaled(CoeffElement::from_generators(ring, unit));
      std::swap(j, i);
      c = cinv;
    }
    f.den_[DenKey{j, i, c}] += d.mult;
  }
  f.cancelled_ = f.den_.empty();
  return f;
}

namespace {

// Merged (keywise max) denominator and the complement multiplying a numerator
// up to it.
std::map<DenKey, int> merge_den(const std::map<DenKey, int>& a, const std::map<DenKey, int>& b) {
  std::map<DenKey, int> out = a;
  for (const auto& [key, m] : b) {
    auto it = out.find(key);
    if (it == out.end())
      out.emplace(key, m);
    else
      it->second = std::max(it->second, m);
  }
  return out;
}

LaurentPoly complement(const LaurentPoly& num, const std::map<DenKey, int>& merged,
                       const std::map<DenKey, int>& own) {
  LaurentPoly out = num;
  for (const auto& [key, m] : merged) {
    auto it = own.find(key);
    int deficit = m - (it == own.end() ? 0 : it->second);
    if (deficit > 0)
      out = out * den_factor_poly(num.ring(), num.zarity(), key.j, key.i, key.c).pow(deficit);
  }
  return out;
}

}  // namespace

RatFun RatFun::operator+(const RatFun& o) const {
  require_same(num_, o.num_);
  RatFun f;
  f.den_ = merge_den(den_, o.den_);
  f.num_ = complement(num_, f.den_, den_) + complement(o.num_, f.den_, o.den_);
  f.cancelled_ = false;
  return f;
}

RatFun RatFun::operator-(const RatFun& o) const { return *this + (-o); }

RatFun RatFun::operator-() const {
  RatFun f = *this;
  f.num_ = -f.num_;
  return f;
}

RatFun RatFun::operator*(const RatFun& o) const {
  require_same(num_, o.num_);
  RatFun f;
  f.num_ = num_ * o.num_;
  f.den_ = den_;
  for (const auto& [key, m] : o.den_) f.den_[key] += m;
  f.cancelled_ = false;
  return f;
}

bool RatFun::operator==(const RatFun& o) const {
  require_same(num_, o.num_);
  auto merged = merge_den(den_, o.den_);
  return complement(num_, merged, den_) == complement(o.num_, merged, o.den_);
}

RatFun RatFun::scaled(const CoeffElement& c) const {
  RatFun f = *this;
  f.num_ = f.num_.scaled(c);
  f.cancelled_ = false;
  return f;
}

RatFun RatFun::permute(const Perm& sigma) const {
  std::vector<DenFactor> factors;
  for (const auto& [key, m] : den_) {
    int j = sigma.apply(key.j);
    int i = key.i == 0 ? 0 : sigma.apply(key.i);
    factors.push_back(DenFactor{j, i, permute_monomial(key.c, sigma), m});
  }
  return make(num_.permute(sigma), factors);
}

RatFun RatFun::embed(EmbedMode mode, int total_zarity) const {
  const int shift = (mode == EmbedMode::Last) ? total_zarity - num_.zarity() : 0;
  LaurentPoly num = num_.embed(mode, total_zarity);
  std::vector<DenFactor> factors;
  for (const auto& [key, m] : den_) {
    int j = key.j + shift;
    int i = key.i == 0 ? 0 : key.i + shift;
    factors.push_back(DenFactor{j, i, shift_monomial(key.c, shift), m});
  }
  return make(std::move(num), factors);
}

RatFun rf_cancel(const RatFun& f) {
  RatFun out = f;
  bool progress = true;
  while (progress) {
    progress = false;
    for (auto& [key, mult] : out.den_) {
      while (mult > 0) {
        auto [q, r] = exact_divide(out.num_, key.j, key.i, key.c);
        if (!r.is_zero()) break;
        out.num_ = std::move(q);
        --mult;
        progress = true;
      }
    }
    std::erase_if(out.den_, [](const auto& kv) { return kv.second == 0; });
  }
  out.cancelled_ = true;
  return out;
}

RatFun rf_permute(const Perm& sigma, const RatFun& f) { return f.permute(sigma); }

RatFun rf_symmetrize(const RatFun& f) {
  const int k = f.zarity();
  if (f.ring()->arity != k)
    fail(Errc::ArityMismatch, "symmetrization needs matching ring and variable arity");
  std::vector<RatFun> images;
  for (const Perm& sigma : Perm::all(k)) images.push_back(f.permute(sigma));
  std::map<DenKey, int> merged;
  for (const RatFun& g : images) merged = merge_den(merged, g.den());
  LaurentPoly sum = LaurentPoly::zero(f.ring(), k);
  for (const RatFun& g : images) sum = sum + complement(g.num(), merged, g.den());
  RatFun out;
  out.num_ = std::move(sum);
  out.den_ = std::move(merged);
  out.cancelled_ = false;
  return rf_cancel(out);
}

bool is_symmetric(const RatFun& f) {
  const int k = f.zarity();
  for (int s = 1; s + 1 <= k; ++s)
    if (!(f.permute(Perm::transposition(k, s, s + 1)) == f)) return false;
  return true;
}

}  // namespace ushuf
