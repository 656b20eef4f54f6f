#include "ushuf/ring.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace ushuf {

// ---------------------------------------------------------------------------
// GeneratorId

std::string GeneratorId::text() const {
  switch (kind) {
    case Kind::Delta:
      return "D" + std::to_string(a) + "_" + std::to_string(b);
    case Kind::Q:
      return "q" + std::to_string(a);
    case Kind::NamedUnit:
      return label;
    case Kind::T:
      return "t" + std::to_string(a);
    case Kind::TUpper:
      return "T" + std::to_string(a) + "_" + std::to_string(b);
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Perm

Perm::Perm(std::vector<int> images_1based) {
  img_.reserve(images_1based.size());
  std::vector<bool> seen(images_1based.size(), false);
  for (int v : images_1based) {
    if (v < 1 || v > static_cast<int>(images_1based.size()) || seen[v - 1])
      fail(Errc::IndexOutOfRange, "not a permutation");
    seen[v - 1] = true;
    img_.push_back(v - 1);
  }
}

int Perm::apply(int i_1based) const {
  if (i_1based < 1 || i_1based > size()) fail(Errc::IndexOutOfRange, "permutation index");
  return img_[i_1based - 1] + 1;
}

Perm Perm::after(const Perm& first) const {
  if (size() != first.size()) fail(Errc::ArityMismatch, "permutation sizes differ");
  Perm r(size());
  for (int i = 0; i < size(); ++i) r.img_[i] = img_[first.img_[i]];
  return r;
}

Perm Perm::inverse() const {
  Perm r(size());
  for (int i = 0; i < size(); ++i) r.img_[img_[i]] = i;
  return r;
}

Perm Perm::transposition(int k, int a, int b) {
  Perm r(k);
  if (a < 1 || b < 1 || a > k || b > k) fail(Errc::IndexOutOfRange, "transposition index");
  std::swap(r.img_[a - 1], r.img_[b - 1]);
  return r;
}

Perm Perm::reversal(int k) {
  Perm r(k);
  for (int i = 0; i < k; ++i) r.img_[i] = k - 1 - i;
  return r;
}

std::vector<Perm> Perm::all(int k) {
  std::vector<int> img(k);
  for (int i = 0; i < k; ++i) img[i] = i + 1;
  std::vector<Perm> out;
  do {
    out.push_back(Perm(img));
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

bool Perm::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

// ---------------------------------------------------------------------------
// RingSpec

static std::vector<GeneratorId> to_named(const std::vector<std::string>& names) {
  std::vector<GeneratorId> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(GeneratorId::named(n));
  return out;
}

RingPtr RingSpec::free_laurent(std::vector<std::string> gens, std::vector<std::string> invertible,
                               int arity) {
  auto spec = std::make_shared<RingSpec>();
  spec->variant = RingVariant::FreeLaurent;
  spec->arity = arity;
  spec->named_gens = to_named(gens);
  for (const auto& g : to_named(invertible)) spec->invertible_named.insert(g);
  return spec;
}

RingPtr RingSpec::truncation(int arity, int order, std::vector<std::string> aux,
                             std::vector<std::string> aux_invertible) {
  if (order < 1) fail(Errc::OrderNegative, "truncation order must be >= 1");
  auto spec = std::make_shared<RingSpec>();
  spec->variant = RingVariant::Truncation;
  spec->arity = arity;
  spec->trunc_order = order;
  spec->named_gens = to_named(aux);
  for (const auto& g : to_named(aux_invertible)) spec->invertible_named.insert(g);
  return spec;
}

RingPtr RingSpec::delta_surface(int k) {
  auto spec = std::make_shared<RingSpec>();
  spec->variant = RingVariant::DeltaSurface;
  spec->arity = k;
  return spec;
}

RingPtr RingSpec::delta_curve(int k) {
  auto spec = std::make_shared<RingSpec>();
  spec->variant = RingVariant::DeltaCurve;
  spec->arity = k;
  return spec;
}

RingPtr RingSpec::an_resolution(int n, int k) {
  if (n < 1) fail(Errc::IndexOutOfRange, "resolution parameter n must be >= 1");
  auto spec = std::make_shared<RingSpec>();
  spec->variant = RingVariant::AnResolution;
  spec->arity = k;
  spec->an_n = n;
  auto ab = to_named({"a", "b"});
  spec->named_gens = ab;
  spec->invertible_named.insert(ab.begin(), ab.end());
  return spec;
}

bool RingSpec::knows(const GeneratorId& g) const {
  switch (g.kind) {
    case GeneratorId::Kind::NamedUnit:
      return std::find(named_gens.begin(), named_gens.end(), g) != named_gens.end();
    case GeneratorId::Kind::Delta:
      return (variant == RingVariant::DeltaSurface || variant == RingVariant::DeltaCurve) &&
             g.b <= arity;
    case GeneratorId::Kind::Q:
      return variant == RingVariant::DeltaSurface && g.a <= arity;
    case GeneratorId::Kind::T:
      return variant == RingVariant::Truncation && g.a <= arity;
    case GeneratorId::Kind::TUpper:
      return variant == RingVariant::AnResolution && g.a <= an_n && g.b <= arity;
  }
  return false;
}

bool RingSpec::invertible(const GeneratorId& g) const {
  switch (g.kind) {
    case GeneratorId::Kind::NamedUnit:
      return invertible_named.count(g) > 0;
    case GeneratorId::Kind::Delta:
      return false;
    case GeneratorId::Kind::Q:
    case GeneratorId::Kind::T:
    case GeneratorId::Kind::TUpper:
      return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Normalization helpers

Monomial permute_monomial(const Monomial& m, const Perm& sigma) {
  Monomial out;
  for (const auto& [g, e] : m.exps()) {
    GeneratorId ng = g;
    switch (g.kind) {
      case GeneratorId::Kind::Delta:
        ng = GeneratorId::delta(sigma.apply(g.a), sigma.apply(g.b));
        break;
      case GeneratorId::Kind::Q:
        ng = GeneratorId::q(sigma.apply(g.a));
        break;
      case GeneratorId::Kind::T:
        ng = GeneratorId::t(sigma.apply(g.a));
        break;
      case GeneratorId::Kind::TUpper:
        ng = GeneratorId::t_upper(g.a, sigma.apply(g.b));
        break;
      case GeneratorId::Kind::NamedUnit:
        break;
    }
    out = out.times(Monomial::gen(ng, e));
  }
  return out;
}

Monomial shift_monomial(const Monomial& m, int shift) {
  Monomial out;
  for (const auto& [g, e] : m.exps()) {
    GeneratorId ng = g;
    switch (g.kind) {
      case GeneratorId::Kind::Delta:
        ng = GeneratorId::delta(g.a + shift, g.b + shift);
        break;
      case GeneratorId::Kind::Q:
        ng = GeneratorId::q(g.a + shift);
        break;
      case GeneratorId::Kind::T:
        ng = GeneratorId::t(g.a + shift);
        break;
      case GeneratorId::Kind::TUpper:
        ng = GeneratorId::t_upper(g.a, g.b + shift);
        break;
      case GeneratorId::Kind::NamedUnit:
        break;
    }
    out = out.times(Monomial::gen(ng, e));
  }
  return out;
}

namespace {

// Canonical representative of a monomial's residue class in a Delta ring.
//
// The ideal is spanned by f * D{i}_{j} * (N - (ij)N) with f, N arbitrary
// monomials, so a present Delta factor licenses moves of *single* cofactors,
// not just whole-monomial swaps: any one D{i}_{l} may be relabeled D{j}_{l},
// and single q powers may migrate between q_i and q_j.  Consequently the
// q exponents are constant only per connected component of the graph whose
// edges are the Delta factors present; we collapse each component's total
// onto its least vertex and search the (finite) set of reachable Delta parts
// for the lexicographically least reassembled monomial.
Monomial delta_collapse_q(const Monomial& m, int k) {
  std::vector<int> parent(k + 1);
  for (int i = 1; i <= k; ++i) parent[i] = i;
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& [g, e] : m.exps())
    if (g.kind == GeneratorId::Kind::Delta && e > 0) parent[find(g.a)] = find(g.b);
  std::vector<int> total(k + 1, 0);
  Monomial out;
  for (const auto& [g, e] : m.exps()) {
    if (g.kind == GeneratorId::Kind::Q)
      total[find(g.a)] += e;
    else
      out = out.times(Monomial::gen(g, e));
  }
  std::vector<int> least(k + 1, 0);
  for (int i = k; i >= 1; --i) least[find(i)] = i;
  for (int i = 1; i <= k; ++i)
    if (total[i] != 0) out = out.times(Monomial::gen(GeneratorId::q(least[i]), total[i]));
  return out;
}

// The licensed single-factor flips preserve, per connected component of the
// Delta graph, both the vertex set and the total edge multiplicity; and any
// two connected multigraphs with the same vertex set and multiplicity are
// mutually reachable (peel the largest vertex: shrink its degree to one by
// flipping its other edges away, slide its last edge to the least vertex,
// recurse on the rest).  The residue class of a Delta part is therefore the
// full product, over components, of all connected multigraphs on that
// component's vertex set with its edge count — no search is needed.  For
// monomials of equal total degree the map order compares exponents
// edge-by-edge in generator order with preference 1 < 2 < ... < absent, and
// the class minimum factors through the components, so it can be built
// greedily: give each edge of the complete graph, in generator order, the
// smallest exponent from which the remaining edges can still absorb the
// leftover multiplicity and connect the component.
Monomial delta_min_component(const std::vector<int>& verts, int degree) {
  const int s = static_cast<int>(verts.size());
  std::vector<std::pair<int, int>> slots;  // edges of K(S) in generator order
  for (int p = 0; p < s; ++p)
    for (int q = p + 1; q < s; ++q) slots.emplace_back(verts[p], verts[q]);

  std::vector<int> chosen(slots.size(), 0);
  std::vector<int> comp(s);

  // Can the edges after `next` absorb `left` more copies and connect the
  // component, given the union-find state `parent` of what is placed so far?
  auto completable = [&](std::vector<int> parent, size_t next, int left) {
    auto find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    if (left == 0) {
      for (int v = 1; v < s; ++v)
        if (find(v) != find(0)) return false;
      return true;
    }
    if (next >= slots.size()) return false;
    int comps = 0;
    for (int v = 0; v < s; ++v)
      if (find(v) == v) ++comps;
    for (size_t t = next; t < slots.size(); ++t) {
      int a = find(static_cast<int>(std::lower_bound(verts.begin(), verts.end(), slots[t].first) -
                                    verts.begin()));
      int b = find(static_cast<int>(std::lower_bound(verts.begin(), verts.end(), slots[t].second) -
                                    verts.begin()));
      if (a != b) parent[a] = b;
    }
    for (int v = 1; v < s; ++v)
      if (find(v) != find(0)) return false;  // suffix edges cannot span
    return left >= comps - 1;
  };

  std::vector<int> parent(s);
  for (int v = 0; v < s; ++v) parent[v] = v;
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  int left = degree;
  for (size_t i = 0; i < slots.size(); ++i) {
    int a = static_cast<int>(std::lower_bound(verts.begin(), verts.end(), slots[i].first) -
                             verts.begin());
    int b = static_cast<int>(std::lower_bound(verts.begin(), verts.end(), slots[i].second) -
                             verts.begin());
    int pick = 0;
    std::vector<int> probe = parent;  // state with one copy of this edge placed
    {
      int ra = find(a), rb = find(b);
      if (ra != rb) probe[ra] = rb;
    }
    for (int e = 1; e <= left; ++e) {
      if (completable(probe, i + 1, left - e)) {
        pick = e;
        break;
      }
    }
    if (pick == 0 && !completable(parent, i + 1, left))
      fail(Errc::InternalMismatch, "delta component minimization ran out of moves");
    if (pick > 0) {
      chosen[i] = pick;
      left -= pick;
      int ra = find(a), rb = find(b);
      if (ra != rb) parent[ra] = rb;
    }
  }
  if (left != 0) fail(Errc::InternalMismatch, "delta component minimization left degree unplaced");

  Monomial out;
  for (size_t i = 0; i < slots.size(); ++i)
    if (chosen[i] != 0)
      out = out.times(Monomial::gen(GeneratorId::delta(slots[i].first, slots[i].second), chosen[i]));
  return out;
}

Monomial delta_class_rep(const Monomial& m, int k) {
  Monomial start = delta_collapse_q(m, k);
  std::map<std::pair<int, int>, int> edges;
  Monomial rest;
  for (const auto& [g, e] : start.exps()) {
    if (g.kind == GeneratorId::Kind::Delta && e > 0)
      edges[{g.a, g.b}] += e;
    else
      rest = rest.times(Monomial::gen(g, e));
  }
  if (edges.empty()) return start;

  std::vector<int> parent(k + 1);
  for (int i = 1; i <= k; ++i) parent[i] = i;
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& [ij, e] : edges) parent[find(ij.first)] = find(ij.second);

  std::map<int, std::vector<int>> comp_verts;
  std::map<int, int> comp_degree;
  for (int i = 1; i <= k; ++i) {
    bool incident = false;
    for (const auto& [ij, e] : edges) incident = incident || ij.first == i || ij.second == i;
    if (incident) comp_verts[find(i)].push_back(i);
  }
  for (const auto& [ij, e] : edges) comp_degree[find(ij.first)] += e;

  Monomial best = rest;
  for (const auto& [root, verts] : comp_verts)
    best = best.times(delta_min_component(verts, comp_degree[root]));
  return best;
}

void add_term(std::map<Monomial, BigInt>& acc, const Monomial& m, const BigInt& c) {
  if (c == 0) return;
  auto [it, fresh] = acc.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) acc.erase(it);
  }
}

void validate_generator(const RingSpec& spec, const GeneratorId& g, int e) {
  if (!spec.knows(g)) fail(Errc::UnknownGenerator, g.text());
  if (e < 0 && !spec.invertible(g)) fail(Errc::NonInvertibleNegativePower, g.text());
}

// Splits off the T part of an AnResolution monomial at factor l as (i -> exp).
// Rewrites t^(i)_l t^(j)_l (i<j) into a t^(j)_l + b^-1 t^(i)_l - a b^-1 and
// eliminates the top chain generator through t^(1)_l ... t^(n)_l = 1.
// The rule system is applied in a fixed scan order; it is sound but not
// assumed confluent, so equality of normal forms is a sufficient and not a
// necessary condition for ring equality.  an_confluence_report surfaces
// order-dependent outcomes.
Monomial an_eliminate_top(const RingSpec& spec, const Monomial& m) {
  Monomial out;
  for (const auto& [g, e] : m.exps()) {
    if (g.kind == GeneratorId::Kind::TUpper && g.a == spec.an_n) {
      for (int i = 1; i < spec.an_n; ++i) out = out.times(Monomial::gen(GeneratorId::t_upper(i, g.b), -e));
    } else {
      out = out.times(Monomial::gen(g, e));
    }
  }
  return out;
}

struct AnRedex {
  int l, i, j;
};

std::optional<AnRedex> an_find_redex(const RingSpec& spec, const Monomial& m, RewriteOrder order) {
  int top = std::max(spec.an_n - 1, 0);
  auto positive = [&](int i, int l) { return m.exp_of(GeneratorId::t_upper(i, l)) >= 1; };
  if (order == RewriteOrder::Forward) {
    for (int l = 1; l <= spec.arity; ++l)
      for (int i = 1; i <= top; ++i)
        for (int j = i + 1; j <= top; ++j)
          if (positive(i, l) && positive(j, l)) return AnRedex{l, i, j};
  } else {
    for (int l = spec.arity; l >= 1; --l)
      for (int j = top; j >= 2; --j)
        for (int i = j - 1; i >= 1; --i)
          if (positive(i, l) && positive(j, l)) return AnRedex{l, i, j};
  }
  return std::nullopt;
}

std::map<Monomial, BigInt> an_normalize(const RingSpec& spec, const TermList& terms,
                                        RewriteOrder order) {
  static const Monomial kA = Monomial::gen(GeneratorId::named("a"));
  static const Monomial kBInv = Monomial::gen(GeneratorId::named("b"), -1);
  std::map<Monomial, BigInt> done;
  std::deque<std::pair<Monomial, BigInt>> queue;
  for (const auto& [m, c] : terms) queue.emplace_back(an_eliminate_top(spec, m), c);
  while (!queue.empty()) {
    auto [m, c] = queue.front();
    queue.pop_front();
    if (c == 0) continue;
    auto redex = an_find_redex(spec, m, order);
    if (!redex) {
      add_term(done, m, c);
      continue;
    }
    Monomial ti = Monomial::gen(GeneratorId::t_upper(redex->i, redex->l));
    Monomial tj = Monomial::gen(GeneratorId::t_upper(redex->j, redex->l));
    Monomial base = m.times(ti.inverse()).times(tj.inverse());
    queue.emplace_back(base.times(tj).times(kA), c);
    queue.emplace_back(base.times(ti).times(kBInv), c);
    queue.emplace_back(base.times(kA).times(kBInv), -c);
  }
  return done;
}

}  // namespace

// ---------------------------------------------------------------------------
// CoeffElement

CoeffElement CoeffElement::make(RingPtr ring, TermList terms, RewriteOrder order) {
  if (!ring) fail(Errc::RingMismatch, "null ring");
  const RingSpec& spec = *ring;
  for (const auto& [m, c] : terms)
    for (const auto& [g, e] : m.exps()) {
      validate_generator(spec, g, e);
      if (spec.variant == RingVariant::Truncation && g.kind == GeneratorId::Kind::T && e < 0)
        fail(Errc::InternalMismatch, "negative u-power in truncation basis");
    }

  CoeffElement out;
  out.ring_ = std::move(ring);
  switch (spec.variant) {
    case RingVariant::FreeLaurent:
      for (const auto& [m, c] : terms) add_term(out.terms_, m, c);
      break;
    case RingVariant::Truncation:
      for (const auto& [m, c] : terms) {
        bool dead = false;
        for (const auto& [g, e] : m.exps())
          if (g.kind == GeneratorId::Kind::T && e >= spec.trunc_order) dead = true;
        if (!dead) add_term(out.terms_, m, c);
      }
      break;
    case RingVariant::DeltaSurface:
    case RingVariant::DeltaCurve:
      for (const auto& [m, c] : terms) add_term(out.terms_, delta_class_rep(m, spec.arity), c);
      break;
    case RingVariant::AnResolution:
      out.terms_ = an_normalize(spec, terms, order);
      break;
  }
  return out;
}

CoeffElement CoeffElement::from_generators(RingPtr ring, TermList terms) {
  if (!ring) fail(Errc::RingMismatch, "null ring");
  if (ring->variant != RingVariant::Truncation) return make(std::move(ring), std::move(terms));
  const int order = ring->trunc_order;
  TermList internal;
  for (const auto& [m, c] : terms) {
    TermList expanded{{Monomial::one(), c}};
    for (const auto& [g, e] : m.exps()) {
      if (g.kind != GeneratorId::Kind::T) {
        validate_generator(*ring, g, e);
        for (auto& [mm, cc] : expanded) mm = mm.times(Monomial::gen(g, e));
        continue;
      }
      if (!ring->knows(g)) fail(Errc::UnknownGenerator, g.text());
      TermList factor = t_power_to_u_basis(g.a, e, order);
      TermList next;
      for (const auto& [mm, cc] : expanded)
        for (const auto& [fm, fc] : factor) next.emplace_back(mm.times(fm), cc * fc);
      expanded = std::move(next);
    }
    internal.insert(internal.end(), expanded.begin(), expanded.end());
  }
  return make(std::move(ring), std::move(internal));
}

TermList t_power_to_u_basis(int i, int e, int order) {
  const GeneratorId u = GeneratorId::t(i);
  // (1 - u)^e for e >= 0; the exact inverse (1 + u + ... + u^{order-1})^{-e}
  // expansion for e < 0.  Powers at or above the truncation order are dropped.
  auto mul_truncated = [&](const std::vector<BigInt>& x, const std::vector<BigInt>& y) {
    std::vector<BigInt> r(order, 0);
    for (int ax = 0; ax < order; ++ax) {
      if (x[ax] == 0) continue;
      for (int ay = 0; ay + ax < order; ++ay) r[ax + ay] += x[ax] * y[ay];
    }
    return r;
  };
  std::vector<BigInt> acc(order, 0);
  acc[0] = 1;
  std::vector<BigInt> base(order, 0);
  if (e >= 0) {
    base[0] = 1;
    if (order > 1) base[1] = -1;
  } else {
    for (int j = 0; j < order; ++j) base[j] = 1;
  }
  for (int rep = 0; rep < std::abs(e); ++rep) acc = mul_truncated(acc, base);
  TermList out;
  for (int j = 0; j < order; ++j)
    if (acc[j] != 0) out.emplace_back(Monomial::gen(u, j), acc[j]);
  return out;
}

TermList CoeffElement::external_terms() const {
  if (!ring_ || ring_->variant != RingVariant::Truncation) {
    TermList out(terms_.begin(), terms_.end());
    return out;
  }
  std::map<Monomial, BigInt> acc;
  for (const auto& [m, c] : terms_) {
    TermList expanded{{Monomial::one(), c}};
    for (const auto& [g, e] : m.exps()) {
      if (g.kind != GeneratorId::Kind::T) {
        for (auto& [mm, cc] : expanded) mm = mm.times(Monomial::gen(g, e));
        continue;
      }
      // u^e = (1 - t)^e, expanded with binomial coefficients.
      std::vector<BigInt> coef(e + 1, 0);
      BigInt binom = 1;
      for (int j = 0; j <= e; ++j) {
        coef[j] = (j % 2 == 0) ? binom : -binom;
        binom = binom * (e - j) / (j + 1);
      }
      TermList next;
      for (const auto& [mm, cc] : expanded)
        for (int j = 0; j <= e; ++j)
          if (coef[j] != 0) next.emplace_back(mm.times(Monomial::gen(GeneratorId::t(g.a), j)), cc * coef[j]);
      expanded = std::move(next);
    }
    for (const auto& [mm, cc] : expanded) add_term(acc, mm, cc);
  }
  return TermList(acc.begin(), acc.end());
}

CoeffElement CoeffElement::constant(RingPtr ring, BigInt c) {
  TermList t;
  if (c != 0) t.emplace_back(Monomial::one(), std::move(c));
  return make(std::move(ring), std::move(t));
}

CoeffElement CoeffElement::generator(RingPtr ring, const GeneratorId& g, int e) {
  return from_generators(std::move(ring), {{Monomial::gen(g, e), 1}});
}

CoeffElement CoeffElement::monomial(RingPtr ring, const Monomial& m, BigInt c) {
  return from_generators(std::move(ring), {{m, std::move(c)}});
}

bool CoeffElement::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

std::optional<BigInt> CoeffElement::as_constant() const {
  if (terms_.empty()) return BigInt(0);
  if (terms_.size() == 1 && terms_.begin()->first.is_one()) return terms_.begin()->second;
  return std::nullopt;
}

CoeffElement CoeffElement::operator+(const CoeffElement& o) const {
  require_same_ring(ring_, o.ring_);
  CoeffElement out = *this;
  for (const auto& [m, c] : o.terms_) add_term(out.terms_, m, c);
  return out;
}

CoeffElement CoeffElement::operator-(const CoeffElement& o) const { return *this + (-o); }

CoeffElement CoeffElement::operator-() const {
  CoeffElement out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

CoeffElement CoeffElement::scaled(const BigInt& c) const {
  CoeffElement out;
  out.ring_ = ring_;
  if (c == 0) return out;
  out.terms_ = terms_;
  for (auto& [m, v] : out.terms_) v *= c;
  return out;
}

CoeffElement CoeffElement::operator*(const CoeffElement& o) const {
  require_same_ring(ring_, o.ring_);
  TermList raw;
  raw.reserve(terms_.size() * o.terms_.size());
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) raw.emplace_back(m1.times(m2), c1 * c2);
  return make(ring_, std::move(raw));
}

CoeffElement CoeffElement::times_monomial(const Monomial& m) const {
  TermList raw;
  raw.reserve(terms_.size());
  for (const auto& [m1, c1] : terms_) raw.emplace_back(m1.times(m), c1);
  return make(ring_, std::move(raw));
}

bool CoeffElement::operator==(const CoeffElement& o) const {
  require_same_ring(ring_, o.ring_);
  return terms_ == o.terms_;
}

CoeffElement CoeffElement::unit_inverse() const {
  if (!ring_) fail(Errc::RingMismatch, "null ring");
  if (terms_.empty()) fail(Errc::NonUnitEntry, "zero is not a unit");
  auto invertible_monomial = [&](const Monomial& m) {
    for (const auto& [g, e] : m.exps())
      if (!ring_->invertible(g)) return false;
    return true;
  };
  if (terms_.size() == 1) {
    const auto& [m, c] = *terms_.begin();
    if ((c != 1 && c != -1) || !invertible_monomial(m)) fail(Errc::NonUnitEntry, "not a unit monomial");
    return CoeffElement::make(ring_, {{m.inverse(), c}});
  }
  if (ring_->variant != RingVariant::Truncation)
    fail(Errc::NonUnitEntry, "multi-term inverse only defined in truncation rings");
  // Split into scalar part s (no u factors) and nilpotent part n; invert as
  // s^-1 (1 + s^-1 n)^-1 with a terminating geometric series.
  TermList s_terms, n_terms;
  for (const auto& [m, c] : terms_) {
    bool has_u = false;
    for (const auto& [g, e] : m.exps())
      if (g.kind == GeneratorId::Kind::T) has_u = true;
    (has_u ? n_terms : s_terms).emplace_back(m, c);
  }
  if (s_terms.size() != 1) fail(Errc::NonUnitEntry, "scalar part is not a unit monomial");
  CoeffElement s = CoeffElement::make(ring_, s_terms);
  CoeffElement s_inv = s.unit_inverse();
  CoeffElement y = (-s_inv) * CoeffElement::make(ring_, n_terms);  // -s^-1 n
  CoeffElement acc = CoeffElement::constant(ring_, 1);
  CoeffElement pow = CoeffElement::constant(ring_, 1);
  while (true) {
    pow = pow * y;
    if (pow.is_zero()) break;
    acc = acc + pow;
  }
  return s_inv * acc;
}

CoeffElement CoeffElement::permute(const Perm& sigma) const {
  if (!ring_) fail(Errc::RingMismatch, "null ring");
  if (sigma.size() != ring_->arity) fail(Errc::ArityMismatch, "permutation size vs ring arity");
  TermList raw;
  raw.reserve(terms_.size());
  for (const auto& [m, c] : terms_) raw.emplace_back(permute_monomial(m, sigma), c);
  return make(ring_, std::move(raw));
}

CoeffElement CoeffElement::embed(EmbedMode mode, int total_arity) const {
  if (!ring_) fail(Errc::RingMismatch, "null ring");
  if (total_arity < ring_->arity) fail(Errc::ArityOverflow, "embedding target smaller than source");
  auto target = std::make_shared<RingSpec>(*ring_);
  target->arity = total_arity;
  const int shift = (mode == EmbedMode::Last) ? total_arity - ring_->arity : 0;
  TermList raw;
  raw.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    Monomial nm;
    for (const auto& [g, e] : m.exps()) {
      GeneratorId ng = g;
      switch (g.kind) {
        case GeneratorId::Kind::Delta:
          ng = GeneratorId::delta(g.a + shift, g.b + shift);
          break;
        case GeneratorId::Kind::Q:
          ng = GeneratorId::q(g.a + shift);
          break;
        case GeneratorId::Kind::T:
          ng = GeneratorId::t(g.a + shift);
          break;
        case GeneratorId::Kind::TUpper:
          ng = GeneratorId::t_upper(g.a, g.b + shift);
          break;
        case GeneratorId::Kind::NamedUnit:
          break;
      }
      nm = nm.times(Monomial::gen(ng, e));
    }
    raw.emplace_back(nm, c);
  }
  return make(std::move(target), std::move(raw));
}

CoeffElement CoeffElement::renormalized(RewriteOrder order) const {
  return make(ring_, TermList(terms_.begin(), terms_.end()), order);
}

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::UnknownGenerator: return "UnknownGenerator";
    case Errc::NonInvertibleNegativePower: return "NonInvertibleNegativePower";
    case Errc::RingMismatch: return "RingMismatch";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::ArityOverflow: return "ArityOverflow";
    case Errc::FlavorMismatch: return "FlavorMismatch";
    case Errc::ArityBound: return "ArityBound";
    case Errc::InternalMismatch: return "InternalMismatch";
    case Errc::NotInClaimedForm: return "NotInClaimedForm";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::NotSorted: return "NotSorted";
    case Errc::UnknownName: return "UnknownName";
    case Errc::NonUnitEntry: return "NonUnitEntry";
    case Errc::NotSingleFactor: return "NotSingleFactor";
    case Errc::NotOneVariable: return "NotOneVariable";
    case Errc::OrderNegative: return "OrderNegative";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::ConventionFailure: return "ConventionFailure";
    case Errc::ParseError: return "ParseError";
    case Errc::UsageError: return "UsageError";
  }
  return "Error";
}

}  // namespace ushuf
