#include "ushuf/relations.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>
#include <utility>

#include "ushuf/error.hpp"
#include "ushuf/text.hpp"

namespace ushuf {

namespace {

class Timer {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i];
  }
  os << ")";
  return os.str();
}

bool rf_is_zero(const RatFun& f) { return rf_cancel(f).num().terms().empty(); }

// ---------------------------------------------------------------------------
// Quadratic interchange identity.

struct QuadContext {
  Kernel ker;
  RingPtr r2;
  CoeffElement delta, q1, q2, one;
};

QuadContext quad_context(const std::string& spec_name) {
  QuadContext c;
  if (spec_name == "universal") {
    c.ker = Kernel::universal(Flavor::Surface);
  } else if (spec_name == "a2" || spec_name == "p2" || spec_name == "diagonal") {
    c.ker = kernel_for(spec_name);
  } else {
    fail(Errc::UsageError, "quadratic identity supports universal, a2, p2, diagonal");
  }
  c.r2 = c.ker.ring_at(2);
  c.delta = c.ker.delta_image(c.r2, 1, 2);
  c.q1 = CoeffElement::monomial(c.r2, c.ker.q_image(1));
  c.q2 = CoeffElement::monomial(c.r2, c.ker.q_image(2));
  c.one = CoeffElement::constant(c.r2, 1);
  return c;
}

// Sym[z1^a z2^b zeta(z1/z2)] (default) or with the mirrored kernel zeta(z2/z1).
RatFun esym(const QuadContext& c, int a, int b, bool mirrored) {
  RatFun zeta = mirrored ? zeta_with(c.ker, 2, 1, 2) : zeta_with(c.ker, 1, 2, 2);
  return rf_symmetrize(RatFun::from_poly(LaurentPoly::term(c.one, {a, b})) * zeta);
}

RatFun quad_defect(const QuadContext& c, int n, int m, bool mirrored) {
  auto E = [&](int a, int b) { return esym(c, a, b, mirrored); };
  auto comm = [&](int a, int b) { return E(a, b) - E(b, a); };
  auto commq = [&](int a, int b) { return E(a, b) - E(b, a).scaled(c.q1); };
  RatFun lhs = comm(n + 3, m).scaled(c.q1) - comm(n + 2, m + 1).scaled(c.q1 * c.q2 + c.q1 + c.one) +
               comm(n + 1, m + 2).scaled(c.q1 * c.q2 + c.q2 + c.one) - comm(n, m + 3).scaled(c.q2);
  RatFun rhs = (commq(n + 1, m + 2) + commq(m + 1, n + 2)).scaled(c.delta);
  return lhs - rhs;
}

// Checks one (n, m) instance under both kernel orientations.  Returns the
// orientation label; appends the instance to the report.
std::string quad_instance(const QuadContext& c, int n, int m, VerificationReport& rep) {
  std::ostringstream params;
  params << "(n,m)=(" << n << "," << m << ")";
  RatFun d_def = quad_defect(c, n, m, false);
  RatFun d_mir = quad_defect(c, n, m, true);
  const bool def_ok = rf_is_zero(d_def);
  const bool mir_ok = rf_is_zero(d_mir);
  if (!def_ok && !mir_ok) {
    fail(Errc::ConventionFailure, "quadratic identity fails under both kernel orientations at " +
                                      params.str() + "; defect " + text(rf_cancel(d_def)));
  }
  std::string orientation = def_ok && mir_ok ? "either" : def_ok ? "zeta(z1/z2)" : "zeta(z2/z1)";
  rep.add(params.str() + " " + orientation, true);
  return orientation;
}

void quad_note(VerificationReport& rep, const std::string& orientation) {
  if (orientation == "either") return;
  if (rep.note.empty() || rep.note == "either") {
    rep.note = orientation;
  } else if (rep.note != orientation) {
    rep.note = "inconsistent orientation";
    rep.all_pass = false;
  }
}

// ---------------------------------------------------------------------------
// Hall-Littlewood oracle: dense multivariate arithmetic over Z[q], kept
// deliberately separate from the Laurent/rational machinery.

using QPoly = std::map<int, BigInt>;          // q exponent -> coefficient
using ZExp = std::vector<int>;                // one exponent per z variable
using Dense = std::map<ZExp, QPoly>;          // lexicographically ordered

void qp_add(QPoly& p, int e, const BigInt& c) {
  auto it = p.find(e);
  if (it == p.end()) {
    if (c != 0) p.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second == 0) p.erase(it);
}

QPoly qp_mul(const QPoly& a, const QPoly& b) {
  QPoly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) qp_add(out, ea + eb, ca * cb);
  return out;
}

void dense_add(Dense& d, const ZExp& e, int qe, const BigInt& c) {
  auto it = d.find(e);
  if (it == d.end()) it = d.emplace(e, QPoly{}).first;
  qp_add(it->second, qe, c);
  if (it->second.empty()) d.erase(it);
}

// Multiply by (z_A - q z_B), 1-based variable indices.
Dense dense_mul_lin(const Dense& d, int A, int B) {
  Dense out;
  for (const auto& [e, qp] : d) {
    ZExp ea = e;
    ea[A - 1] += 1;
    ZExp eb = e;
    eb[B - 1] += 1;
    for (const auto& [qe, c] : qp) {
      dense_add(out, ea, qe, c);
      dense_add(out, eb, qe + 1, -c);
    }
  }
  return out;
}

// Exact division by (z_A - z_B) with A < B, by elimination of the
// lexicographically greatest term.  The dividend must be divisible.
Dense dense_divide_lin(Dense p, int A, int B) {
  Dense quot;
  while (!p.empty()) {
    auto it = std::prev(p.end());
    const ZExp e = it->first;
    const QPoly qp = it->second;
    if (e[A - 1] == 0)
      fail(Errc::InternalMismatch, "oracle antisymmetrization not divisible by the Vandermonde factor");
    ZExp eq = e;
    eq[A - 1] -= 1;
    for (const auto& [qe, c] : qp) dense_add(quot, eq, qe, c);
    p.erase(it);
    ZExp eb = eq;
    eb[B - 1] += 1;
    for (const auto& [qe, c] : qp) dense_add(p, eb, qe, c);
  }
  return quot;
}

int perm_sign(const Perm& s, int k) {
  int inv = 0;
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j)
      if (s.apply(i) > s.apply(j)) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

// Sym[z^{reverse(lambda)} prod_{i<j} (z_i - q z_j)] / prod_{i<j} (z_i - z_j)
// computed as an antisymmetrization divided by the Vandermonde determinant.
Dense hl_oracle(const std::vector<int>& lampad) {
  const int k = static_cast<int>(lampad.size());
  std::vector<int> rev(lampad.rbegin(), lampad.rend());
  Dense total;
  for (const Perm& s : Perm::all(k)) {
    ZExp e(k, 0);
    for (int i = 1; i <= k; ++i) e[s.apply(i) - 1] += rev[i - 1];
    Dense term;
    term[e][0] = perm_sign(s, k);
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) term = dense_mul_lin(term, s.apply(i), s.apply(j));
    for (const auto& [ze, qp] : term)
      for (const auto& [qe, c] : qp) dense_add(total, ze, qe, c);
  }
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) total = dense_divide_lin(std::move(total), i, j);
  return total;
}

CoeffElement qp_to_coeff(const RingPtr& r, const QPoly& qp) {
  TermList terms;
  for (const auto& [qe, c] : qp) terms.emplace_back(Monomial::gen(GeneratorId::named("q")).pow(qe), c);
  return CoeffElement::from_generators(r, terms);
}

LaurentPoly dense_to_poly(const RingPtr& r, int k, const Dense& d) {
  LaurentPoly out = LaurentPoly::zero(r, k);
  for (const auto& [ze, qp] : d) out = out + LaurentPoly::term(qp_to_coeff(r, qp), ze);
  return out;
}

// q^{inv(lambda)} prod_v [mult_v]_q! over the padded tuple.
QPoly hl_leading(const std::vector<int>& lampad) {
  const int k = static_cast<int>(lampad.size());
  int inv = 0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (lampad[i] > lampad[j]) ++inv;
  QPoly lead{{inv, 1}};
  std::map<int, int> mult;
  for (int v : lampad) ++mult[v];
  for (const auto& [value, m] : mult) {
    (void)value;
    for (int j = 1; j <= m; ++j) {
      QPoly bracket;  // [j]_q = 1 + q + ... + q^{j-1}
      for (int t = 0; t < j; ++t) bracket[t] = 1;
      lead = qp_mul(lead, bracket);
    }
  }
  return lead;
}

// ---------------------------------------------------------------------------
// Batch enumeration helpers.

void for_each_tuple(int max_abs_n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> ns(k, -max_abs_n);
  for (;;) {
    fn(ns);
    int pos = k - 1;
    while (pos >= 0 && ns[pos] == max_abs_n) ns[pos--] = -max_abs_n;
    if (pos < 0) return;
    ++ns[pos];
  }
}

void for_each_decreasing(int max_n, int k, std::vector<int>& prefix,
                         const std::function<void(const std::vector<int>&)>& fn) {
  if (static_cast<int>(prefix.size()) == k) {
    fn(prefix);
    return;
  }
  int hi = prefix.empty() ? max_n : prefix.back();
  for (int v = hi; v >= 0; --v) {
    prefix.push_back(v);
    for_each_decreasing(max_n, k, prefix, fn);
    prefix.pop_back();
  }
}

VerificationReport pole_batch_core(const Kernel& ker, const std::string& label, int max_abs_n,
                                   int max_k) {
  Timer timer;
  VerificationReport rep;
  rep.identity = "pole-certificate[" + label + "]";
  {
    std::ostringstream g;
    g << "|n_i| <= " << max_abs_n << ", arity <= " << max_k;
    rep.grid = g.str();
  }
  for (int k = 1; k <= max_k; ++k) {
    for_each_tuple(max_abs_n, k, [&](const std::vector<int>& ns) {
      try {
        ShuffleElement e = generator_product(ns, ker.flavor, ker);
        (void)pole_certificate(e, ker);
        rep.add("ns=" + join_ints(ns), true);
      } catch (const Error& err) {
        rep.add("ns=" + join_ints(ns), false, err.what());
      }
    });
  }
  rep.wall_ms = timer.ms();
  return rep;
}

}  // namespace

void VerificationReport::add(std::string params, bool pass, std::string witness) {
  all_pass = all_pass && pass;
  instances.push_back({std::move(params), pass, std::move(witness)});
}

VerificationReport verify_quadratic(int n, int m, const std::string& spec_name) {
  Timer timer;
  VerificationReport rep;
  rep.identity = "quadratic[" + spec_name + "]";
  {
    std::ostringstream g;
    g << "(n,m)=(" << n << "," << m << ")";
    rep.grid = g.str();
  }
  QuadContext c = quad_context(spec_name);
  quad_note(rep, quad_instance(c, n, m, rep));
  rep.wall_ms = timer.ms();
  return rep;
}

VerificationReport verify_quadratic_grid(int range, const std::string& spec_name) {
  if (range < 0) fail(Errc::UsageError, "grid range must be >= 0");
  Timer timer;
  VerificationReport rep;
  rep.identity = "quadratic[" + spec_name + "]";
  {
    std::ostringstream g;
    g << "(n,m) in [" << -range << "," << range << "]^2";
    rep.grid = g.str();
  }
  QuadContext c = quad_context(spec_name);
  for (int n = -range; n <= range; ++n)
    for (int m = -range; m <= range; ++m) quad_note(rep, quad_instance(c, n, m, rep));
  rep.wall_ms = timer.ms();
  return rep;
}

VerificationReport verify_serre(int n) {
  Timer timer;
  VerificationReport rep;
  rep.identity = "serre";
  rep.grid = "n=" + std::to_string(n);
  Specialization sp = make_specialization("diagonal", 3);
  RingPtr r = sp.target();
  const Monomial am = Monomial::gen(GeneratorId::named("a"));
  const Monomial bm = Monomial::gen(GeneratorId::named("b"));
  const Monomial qm = am.times(bm);
  const CoeffElement one = CoeffElement::constant(r, 1);
  auto zterm = [&](int e1, int e2, int e3) { return LaurentPoly::term(one, {e1, e2, e3}); };
  LaurentPoly num = LaurentPoly::term(one, {n, n, n}) *
                    (zterm(1, -1, 0) - zterm(-1, 1, 0) - zterm(0, 1, -1) + zterm(0, -1, 1));
  std::vector<DenFactor> den;
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j) {
      num = num * den_factor_poly(r, 3, i, j, Monomial::one()) * den_factor_poly(r, 3, i, j, qm);
      den.push_back({.j = i, .i = j, .c = am, .mult = 1});
      den.push_back({.j = i, .i = j, .c = bm, .mult = 1});
    }
  RatFun f = rf_symmetrize(RatFun::make(std::move(num), den));
  bool pass = rf_is_zero(f);
  rep.add("n=" + std::to_string(n), pass, pass ? "" : text(rf_cancel(f)));
  rep.wall_ms = timer.ms();
  return rep;
}

VerificationReport verify_serre_restricted(int n) {
  Timer timer;
  VerificationReport rep;
  rep.identity = "serre-restricted";
  rep.grid = "n=" + std::to_string(n);
  Specialization sp = make_specialization("diagonal", 3);
  RingPtr r = sp.target();
  const Monomial am = Monomial::gen(GeneratorId::named("a"));
  const Monomial bm = Monomial::gen(GeneratorId::named("b"));
  const CoeffElement one = CoeffElement::constant(r, 1);
  auto zterm = [&](int e1, int e2, int e3) { return LaurentPoly::term(one, {e1, e2, e3}); };
  LaurentPoly num = LaurentPoly::term(one, {n, n, n}) *
                    (zterm(1, -1, 0) - zterm(-1, 1, 0) - zterm(0, 1, -1) + zterm(0, -1, 1));
  std::vector<DenFactor> den;
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j) {
      std::vector<int> eij(3, 0);
      eij[i - 1] = 1;
      eij[j - 1] = 1;
      LaurentPoly pair = den_factor_poly(r, 3, i, j, am) * den_factor_poly(r, 3, i, j, bm) -
                         LaurentPoly::term(sp.delta_image(i, j), eij);
      num = num * pair;
      den.push_back({.j = i, .i = j, .c = am, .mult = 1});
      den.push_back({.j = i, .i = j, .c = bm, .mult = 1});
    }
  RatFun f = rf_symmetrize(RatFun::make(std::move(num), den));
  bool pass = rf_is_zero(f);
  rep.add("n=" + std::to_string(n), pass, pass ? "" : text(rf_cancel(f)));
  rep.wall_ms = timer.ms();
  return rep;
}

VerificationReport verify_hall_littlewood(const std::vector<int>& lambda, int k) {
  for (size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] < 0) fail(Errc::UsageError, "partition parts must be >= 0");
    if (i + 1 < lambda.size() && lambda[i] < lambda[i + 1])
      fail(Errc::UsageError, "partition must be weakly decreasing");
  }
  if (k < static_cast<int>(lambda.size()) || k < 1 || k > 4)
    fail(Errc::UsageError, "variable count must satisfy len(lambda) <= k <= 4");
  int size = 0;
  for (int v : lambda) size += v;
  if (size > 6) fail(Errc::UsageError, "partition size must be <= 6");

  Timer timer;
  VerificationReport rep;
  rep.identity = "hall-littlewood";
  std::vector<int> lampad = lambda;
  lampad.resize(k, 0);
  rep.grid = "lambda=" + join_ints(lampad) + " k=" + std::to_string(k);
  const std::string tag = "lambda=" + join_ints(lampad) + " k=" + std::to_string(k) + " ";

  Specialization sp = make_specialization("a1", k);
  RingPtr r = sp.target();
  ShuffleElement a = specialize_element(sp, generator_product(lampad, Flavor::Curve));
  RatFun av = rf_cancel(a.value);
  if (!av.is_polynomial()) {
    rep.add(tag + "polynomiality", false, text(av));
    rep.wall_ms = timer.ms();
    return rep;
  }
  rep.add(tag + "polynomiality", true);

  LaurentPoly got = av.num();
  LaurentPoly want = dense_to_poly(r, k, hl_oracle(lampad));
  bool match = got == want;
  rep.add(tag + "oracle match", match, match ? "" : text(got) + " vs " + text(want));

  auto [lead_exp, lead_coeff] = got.leading_lex();
  CoeffElement want_lead = qp_to_coeff(r, hl_leading(lampad));
  bool lead_ok = lead_exp == lampad && lead_coeff == want_lead;
  rep.add(tag + "leading coefficient", lead_ok,
          lead_ok ? "" : join_ints(lead_exp) + " " + text(lead_coeff) + " vs " + join_ints(lampad) +
                             " " + text(want_lead));
  rep.wall_ms = timer.ms();
  return rep;
}

VerificationReport verify_pole_batch(int max_abs_n, int max_k, Flavor flavor) {
  return pole_batch_core(Kernel::universal(flavor), flavor == Flavor::Surface ? "surface" : "curve",
                         max_abs_n, max_k);
}

VerificationReport verify_pole_batch(int max_abs_n, int max_k, const std::string& spec_name, int n) {
  return pole_batch_core(kernel_for(spec_name, n), spec_name, max_abs_n, max_k);
}

namespace {

void partitions_exact(int remaining, int max_part, int max_len, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  if (max_len == 0) return;
  for (int p = std::min(max_part, remaining); p >= 1; --p) {
    cur.push_back(p);
    partitions_exact(remaining - p, p, max_len - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> partitions_up_to(int max_size, int max_len) {
  if (max_size < 0 || max_len < 0) fail(Errc::UsageError, "partition bounds must be >= 0");
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  for (int s = 0; s <= max_size; ++s) partitions_exact(s, s, max_len, cur, out);
  return out;
}

VerificationReport verify_leading_batch(int max_n, int max_k) {
  Timer timer;
  VerificationReport rep;
  rep.identity = "leading-order";
  {
    std::ostringstream g;
    g << "weakly decreasing, entries in [0," << max_n << "], arity <= " << max_k;
    rep.grid = g.str();
  }
  for (int k = 1; k <= max_k; ++k) {
    std::vector<int> prefix;
    for_each_decreasing(max_n, k, prefix, [&](const std::vector<int>& ns) {
      LeadingOrder lo = leading_order(ns, Flavor::Curve);
      rep.add("ns=" + join_ints(ns), lo.equal,
              lo.equal ? "" : text(lo.actual) + " vs " + text(lo.predicted));
    });
  }
  rep.wall_ms = timer.ms();
  return rep;
}

}  // namespace ushuf
