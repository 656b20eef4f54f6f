#include "ushuf/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <optional>
#include <utility>
#include <vector>

#include "ushuf/error.hpp"
#include "ushuf/text.hpp"

namespace ushuf {

namespace {

// ---------------------------------------------------------------------------
// Lexer.

struct Token {
  enum class Kind { Int, Ident, Op, End };
  Kind kind = Kind::End;
  std::string text;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  size_t p = 0;
  while (p < src.size()) {
    char ch = src[p];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++p;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      size_t q = p;
      while (q < src.size() && std::isdigit(static_cast<unsigned char>(src[q]))) ++q;
      out.push_back({Token::Kind::Int, src.substr(p, q - p)});
      p = q;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      size_t q = p;
      while (q < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[q])) || src[q] == '_'))
        ++q;
      out.push_back({Token::Kind::Ident, src.substr(p, q - p)});
      p = q;
      continue;
    }
    if (std::string("+-*/^()").find(ch) != std::string::npos) {
      out.push_back({Token::Kind::Op, std::string(1, ch)});
      ++p;
      continue;
    }
    fail(Errc::ParseError, std::string("unexpected character '") + ch + "'");
  }
  out.push_back({Token::Kind::End, ""});
  return out;
}

// ---------------------------------------------------------------------------
// Recursive-descent parser over LaurentPoly values.

class ExprParser {
 public:
  ExprParser(RingPtr ring, int zarity, const std::string& src)
      : ring_(std::move(ring)), zarity_(zarity), toks_(lex(src)) {}

  LaurentPoly parse_polynomial() {
    LaurentPoly p = expr();
    expect_end();
    return p;
  }

  RatFun parse_rational() {
    LaurentPoly num = expr();
    std::vector<DenFactor> den;
    if (accept_op("/")) den = den_group();
    expect_end();
    return RatFun::make(std::move(num), den);
  }

 private:
  RingPtr ring_;
  int zarity_;
  std::vector<Token> toks_;
  size_t pos_ = 0;

  const Token& peek() const { return toks_[pos_]; }
  void advance() { ++pos_; }
  bool accept_op(const char* s) {
    if (peek().kind == Token::Kind::Op && peek().text == s) {
      advance();
      return true;
    }
    return false;
  }
  void expect_op(const char* s) {
    if (!accept_op(s))
      fail(Errc::ParseError, std::string("expected '") + s + "' before '" + describe(peek()) + "'");
  }
  void expect_end() {
    if (peek().kind != Token::Kind::End)
      fail(Errc::ParseError, "unexpected trailing input at '" + describe(peek()) + "'");
  }
  static std::string describe(const Token& t) {
    return t.kind == Token::Kind::End ? "end of input" : t.text;
  }

  int small_int() {
    bool neg = accept_op("-");
    if (peek().kind != Token::Kind::Int)
      fail(Errc::ParseError, "expected an integer at '" + describe(peek()) + "'");
    int v = 0;
    try {
      v = std::stoi(peek().text);
    } catch (const std::exception&) {
      fail(Errc::ParseError, "exponent out of range: " + peek().text);
    }
    advance();
    return neg ? -v : v;
  }

  // "z" (when one variable) or "z<k>"; nullopt when the name is not a
  // variable reference.
  std::optional<int> z_index(const std::string& name) const {
    if (name.empty() || name[0] != 'z') return std::nullopt;
    if (name.size() == 1) return zarity_ == 1 ? std::optional<int>(1) : std::nullopt;
    for (size_t i = 1; i < name.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
    return std::stoi(name.substr(1));
  }

  // D<i>_<j>, q<i>, t<i>, T<i>_<l> when the ring knows the structured form;
  // named unit otherwise.
  GeneratorId gen_from_name(const std::string& name) const {
    auto structured = [&]() -> std::optional<GeneratorId> {
      auto split = [&](size_t from) -> std::optional<std::pair<int, int>> {
        size_t us = name.find('_', from);
        if (us == std::string::npos || us == from || us + 1 == name.size()) return std::nullopt;
        for (size_t i = from; i < name.size(); ++i)
          if (i != us && !std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
        return std::pair{std::stoi(name.substr(from, us - from)), std::stoi(name.substr(us + 1))};
      };
      auto digits = [&](size_t from) -> std::optional<int> {
        if (from >= name.size()) return std::nullopt;
        for (size_t i = from; i < name.size(); ++i)
          if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
        return std::stoi(name.substr(from));
      };
      try {
        if (name[0] == 'D') {
          if (auto ij = split(1)) return GeneratorId::delta(ij->first, ij->second);
        } else if (name[0] == 'T') {
          if (auto il = split(1)) return GeneratorId::t_upper(il->first, il->second);
        } else if (name[0] == 'q') {
          if (auto i = digits(1)) return GeneratorId::q(*i);
        } else if (name[0] == 't') {
          if (auto i = digits(1)) return GeneratorId::t(*i);
        }
      } catch (const Error&) {
        return std::nullopt;  // malformed indices fall back to a named unit
      }
      return std::nullopt;
    }();
    if (structured && ring_->knows(*structured)) return *structured;
    GeneratorId named = GeneratorId::named(name);
    if (!structured || ring_->knows(named)) return named;
    return *structured;  // let element construction report the unknown generator
  }

  LaurentPoly z_var(int idx, int exp) const {
    if (zarity_ == 0) fail(Errc::ParseError, "variables are not allowed in a coefficient");
    return LaurentPoly::z_power(ring_, zarity_, idx, exp);
  }

  // expr := ['-'] term (('+'|'-') term)*
  LaurentPoly expr() {
    LaurentPoly acc = accept_op("-") ? LaurentPoly::zero(ring_, zarity_) - term() : term();
    for (;;) {
      if (accept_op("+"))
        acc = acc + term();
      else if (accept_op("-"))
        acc = acc - term();
      else
        return acc;
    }
  }

  // term := factor ('*' factor)*
  LaurentPoly term() {
    LaurentPoly acc = factor();
    while (accept_op("*")) acc = acc * factor();
    return acc;
  }

  // factor := primary ['^' signed-int], with negative powers restricted to
  // generators, variables, and single-unit-term groups.
  LaurentPoly factor() {
    const Token t = peek();
    if (t.kind == Token::Kind::Int) {
      advance();
      BigInt base(t.text);
      if (accept_op("^")) {
        int e = small_int();
        if (e < 0) fail(Errc::ParseError, "negative power of an integer");
        BigInt v = 1;
        for (int i = 0; i < e; ++i) v *= base;
        base = v;
      }
      return LaurentPoly::constant(CoeffElement::constant(ring_, base), zarity_);
    }
    if (t.kind == Token::Kind::Ident) {
      advance();
      int e = accept_op("^") ? small_int() : 1;
      if (auto zi = z_index(t.text)) return z_var(*zi, e);
      return LaurentPoly::constant(CoeffElement::generator(ring_, gen_from_name(t.text), e),
                                   zarity_);
    }
    if (t.kind == Token::Kind::Op && t.text == "(") {
      advance();
      LaurentPoly inner = expr();
      expect_op(")");
      if (!accept_op("^")) return inner;
      int e = small_int();
      if (e >= 0) return inner.pow(e);
      return invert_single_term(inner, e);
    }
    fail(Errc::ParseError, "expected a value before '" + describe(t) + "'");
  }

  LaurentPoly invert_single_term(const LaurentPoly& p, int e) const {
    if (p.terms().size() != 1)
      fail(Errc::ParseError, "negative power of a non-monomial expression");
    const auto& [ze, coeff] = *p.terms().begin();
    if (coeff.terms().size() != 1)
      fail(Errc::ParseError, "negative power of a non-monomial coefficient");
    const auto& [mono, c] = *coeff.terms().begin();
    if (c != 1 && c != -1) fail(Errc::ParseError, "negative power of a non-unit coefficient");
    ExpVec scaled(ze.size());
    for (size_t i = 0; i < ze.size(); ++i) scaled[i] = ze[i] * e;
    BigInt sign = (c == -1 && e % 2 != 0) ? -1 : 1;
    return LaurentPoly::term(CoeffElement::monomial(ring_, mono.pow(e), sign), scaled);
  }

  // den_group := '(' den_factor ('*' den_factor)* ')'
  std::vector<DenFactor> den_group() {
    expect_op("(");
    std::vector<DenFactor> out;
    out.push_back(den_factor());
    while (accept_op("*")) out.push_back(den_factor());
    expect_op(")");
    return out;
  }

  // den_factor := '(' z<j> '-' rhs ')' ['^' int] with
  // rhs := '1' | monomial | monomial '*' z<i> | z<i>
  DenFactor den_factor() {
    expect_op("(");
    if (peek().kind != Token::Kind::Ident)
      fail(Errc::ParseError, "expected a variable at '" + describe(peek()) + "'");
    auto j = z_index(peek().text);
    if (!j) fail(Errc::ParseError, "expected a variable, got '" + peek().text + "'");
    advance();
    expect_op("-");
    Monomial c;
    int i = 0;
    if (peek().kind == Token::Kind::Int) {
      if (peek().text != "1")
        fail(Errc::ParseError, "denominator constant must be 1, got " + peek().text);
      advance();
    } else {
      for (;;) {
        if (peek().kind != Token::Kind::Ident)
          fail(Errc::ParseError, "expected a monomial or variable at '" + describe(peek()) + "'");
        if (auto zi = z_index(peek().text)) {
          i = *zi;
          advance();
          break;
        }
        GeneratorId g = gen_from_name(peek().text);
        advance();
        int e = accept_op("^") ? small_int() : 1;
        c = c.times(Monomial::gen(g, e));
        if (!accept_op("*")) break;
      }
    }
    expect_op(")");
    int mult = 1;
    if (accept_op("^")) {
      mult = small_int();
      if (mult < 1) fail(Errc::ParseError, "denominator multiplicity must be positive");
    }
    return DenFactor{.j = *j, .i = i, .c = c, .mult = mult};
  }
};

// ---------------------------------------------------------------------------
// JSON emission.

using nlohmann::json;

const char* variant_name(RingVariant v) {
  switch (v) {
    case RingVariant::FreeLaurent: return "FreeLaurent";
    case RingVariant::Truncation: return "Truncation";
    case RingVariant::DeltaSurface: return "DeltaSurface";
    case RingVariant::DeltaCurve: return "DeltaCurve";
    case RingVariant::AnResolution: return "AnResolution";
  }
  return "?";
}

json ring_j(const RingPtr& r) {
  json out{{"variant", variant_name(r->variant)}, {"arity", r->arity}};
  if (r->variant == RingVariant::Truncation) out["trunc_order"] = r->trunc_order;
  if (r->variant == RingVariant::AnResolution) out["an_n"] = r->an_n;
  if (!r->named_gens.empty()) {
    json gens = json::array();
    json inv = json::array();
    for (const auto& g : r->named_gens) {
      gens.push_back(g.text());
      if (r->invertible_named.count(g)) inv.push_back(g.text());
    }
    out["gens"] = gens;
    out["invertible"] = inv;
  }
  return out;
}

json monomial_j(const Monomial& m) {
  json out = json::array();
  for (const auto& [g, e] : m.exps()) out.push_back(json{{"gen", g.text()}, {"exp", e}});
  return out;
}

// [[generator-exponent list, coefficient-as-decimal-string], ...] in the
// canonical printing order.
json coeff_terms_j(const CoeffElement& c) {
  TermList ts = c.external_terms();
  std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  json out = json::array();
  for (const auto& [m, v] : ts) out.push_back(json::array({monomial_j(m), to_decimal(v)}));
  return out;
}

json poly_terms_j(const LaurentPoly& p) {
  json out = json::array();
  for (const auto& [e, c] : p.terms()) out.push_back(json::array({json(e), coeff_terms_j(c)}));
  return out;
}

json ratfun_j(const RatFun& f) {
  json den = json::array();
  for (const auto& [key, mult] : f.den())
    den.push_back(json{{"j", key.j}, {"i", key.i}, {"c", monomial_j(key.c)}, {"mult", mult}});
  return json{{"ring", ring_j(f.ring())},
              {"zarity", f.zarity()},
              {"num", poly_terms_j(f.num())},
              {"den", den}};
}

json verification_j(const VerificationReport& rep) {
  json insts = json::array();
  for (const auto& inst : rep.instances)
    insts.push_back(json{{"params", inst.params}, {"pass", inst.pass}, {"witness", inst.witness}});
  return json{{"identity", rep.identity},
              {"grid", rep.grid},
              {"note", rep.note},
              {"all_pass", rep.all_pass},
              {"instances", insts}};
}

}  // namespace

CoeffElement parse_coeff(const RingPtr& ring, const std::string& input) {
  LaurentPoly p = ExprParser(ring, 0, input).parse_polynomial();
  if (p.terms().empty()) return CoeffElement::constant(ring, 0);
  return p.terms().begin()->second;
}

LaurentPoly parse_poly(const RingPtr& ring, int zarity, const std::string& input) {
  return ExprParser(ring, zarity, input).parse_polynomial();
}

RatFun parse_ratfun(const RingPtr& ring, int zarity, const std::string& input) {
  return ExprParser(ring, zarity, input).parse_rational();
}

std::string json_ring(const RingPtr& ring) { return ring_j(ring).dump(); }

std::string json_coeff(const CoeffElement& c) {
  return json{{"ring", ring_j(c.ring())}, {"terms", coeff_terms_j(c)}}.dump();
}

std::string json_poly(const LaurentPoly& p) {
  return json{{"ring", ring_j(p.ring())}, {"zarity", p.zarity()}, {"terms", poly_terms_j(p)}}
      .dump();
}

std::string json_ratfun(const RatFun& f) { return ratfun_j(f).dump(); }

std::string json_shuffle(const ShuffleElement& e) {
  return json{{"arity", e.arity},
              {"flavor", e.flavor == Flavor::Surface ? "surface" : "curve"},
              {"value", ratfun_j(e.value)}}
      .dump();
}

std::string json_report(const VerificationReport& rep) { return verification_j(rep).dump(); }

std::string json_reports(const std::vector<VerificationReport>& reps) {
  json out = json::array();
  for (const auto& rep : reps) out.push_back(verification_j(rep));
  return out.dump();
}

std::string json_report(const CompatibilityReport& rep) {
  json items = json::array();
  for (const auto& item : rep.items)
    items.push_back(json{{"identity", item.identity},
                         {"pass", item.pass},
                         {"witness", item.pass ? "" : text(item.witness)}});
  return json{{"spec", rep.spec_name},
              {"arity", rep.arity},
              {"all_pass", rep.all_pass},
              {"items", items}}
      .dump();
}

std::string json_report(const PushforwardReport& rep) {
  json items = json::array();
  for (const auto& item : rep.items)
    items.push_back(json{{"identity", item.identity},
                         {"pass", item.pass},
                         {"witness", item.pass ? "" : text(item.witness)}});
  return json{{"rank", rep.rank}, {"order", rep.order}, {"all_pass", rep.all_pass}, {"items", items}}
      .dump();
}

}  // namespace ushuf
