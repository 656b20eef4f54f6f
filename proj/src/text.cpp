#include "ushuf/text.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace ushuf {

namespace {

std::string z_part(const ExpVec& e) {
  std::string out;
  for (size_t s = 0; s < e.size(); ++s) {
    if (e[s] == 0) continue;
    if (!out.empty()) out += "*";
    out += "z" + std::to_string(s + 1);
    if (e[s] != 1) out += "^" + std::to_string(e[s]);
  }
  return out;
}

std::string join_signed(std::string body, bool negative, bool first) {
  if (first) return negative ? "-" + body : body;
  return (negative ? " - " : " + ") + body;
}

// One external term as (sign, body) with the sign pulled out.
std::pair<bool, std::string> term_body(const Monomial& m, const BigInt& c,
                                       const std::string& zs) {
  bool neg = c < 0;
  BigInt mag = neg ? BigInt(-c) : c;
  std::string out;
  if (mag != 1 || (m.is_one() && zs.empty())) out = to_decimal(mag);
  if (!m.is_one()) {
    if (!out.empty()) out += "*";
    out += text(m);
  }
  if (!zs.empty()) {
    if (!out.empty()) out += "*";
    out += zs;
  }
  return {neg, out};
}

TermList sorted_external(const CoeffElement& c) {
  TermList ts = c.external_terms();
  std::sort(ts.begin(), ts.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return ts;
}

}  // namespace

std::string text(const Monomial& m) {
  if (m.is_one()) return "1";
  std::string out;
  for (const auto& [g, e] : m.exps()) {
    if (!out.empty()) out += "*";
    out += g.text();
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

std::string text(const CoeffElement& c) {
  if (c.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, v] : sorted_external(c)) {
    auto [neg, body] = term_body(m, v, "");
    out += join_signed(body, neg, first);
    first = false;
  }
  return out;
}

std::string text(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const std::string zs = z_part(it->first);
    TermList ts = sorted_external(it->second);
    if (ts.size() == 1) {
      auto [neg, body] = term_body(ts[0].first, ts[0].second, zs);
      out += join_signed(body, neg, first);
    } else if (zs.empty() && p.terms().size() == 1) {
      out = text(it->second);
    } else {
      std::string body = "(" + text(it->second) + ")";
      if (!zs.empty()) body += "*" + zs;
      out += join_signed(body, false, first);
    }
    first = false;
  }
  return out;
}

std::string text(const RatFun& f) {
  std::string num = text(f.num());
  if (f.den().empty()) return num;
  if (f.num().terms().size() > 1) num = "(" + num + ")";
  std::string den;
  for (const auto& [key, mult] : f.den()) {
    if (!den.empty()) den += "*";
    std::string rhs;
    if (key.i == 0) {
      rhs = key.c.is_one() ? "1" : text(key.c);
    } else {
      rhs = key.c.is_one() ? "" : text(key.c) + "*";
      rhs += "z" + std::to_string(key.i);
    }
    den += "(z" + std::to_string(key.j) + " - " + rhs + ")";
    if (mult != 1) den += "^" + std::to_string(mult);
  }
  return num + " / (" + den + ")";
}

std::ostream& operator<<(std::ostream& os, const Monomial& m) { return os << text(m); }
std::ostream& operator<<(std::ostream& os, const CoeffElement& c) { return os << text(c); }
std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << text(p); }
std::ostream& operator<<(std::ostream& os, const RatFun& f) { return os << text(f); }

}  // namespace ushuf
