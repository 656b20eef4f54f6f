#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ushuf/bigint.hpp"
#include "ushuf/error.hpp"

namespace ushuf {

// A single formal generator of a coefficient ring.
//
//   Delta(i,j)   D{i}_{j}   symmetric class attached to factors i<j
//   Q(i)         q{i}       per-factor invertible class
//   NamedUnit    a, b, q    global named generator
//   T(i)         t{i}       per-factor generator of a truncation ring
//   TUpper(i,l)  T{i}_{l}   chain generator i at factor l (resolution rings)
struct GeneratorId {
  enum class Kind : std::uint8_t { Delta, Q, NamedUnit, T, TUpper };

  Kind kind;
  std::int16_t a = 0;  // first index (Delta i, Q i, T i, TUpper chain index)
  std::int16_t b = 0;  // second index (Delta j, TUpper factor index)
  std::string label;   // NamedUnit only

  static GeneratorId delta(int i, int j) {
    if (i == j || i < 1 || j < 1) fail(Errc::IndexOutOfRange, "Delta indices must be distinct and positive");
    if (i > j) std::swap(i, j);
    return GeneratorId{Kind::Delta, static_cast<std::int16_t>(i), static_cast<std::int16_t>(j), {}};
  }
  static GeneratorId q(int i) {
    if (i < 1) fail(Errc::IndexOutOfRange, "q index must be positive");
    return GeneratorId{Kind::Q, static_cast<std::int16_t>(i), 0, {}};
  }
  static GeneratorId named(std::string lbl) { return GeneratorId{Kind::NamedUnit, 0, 0, std::move(lbl)}; }
  static GeneratorId t(int i) {
    if (i < 1) fail(Errc::IndexOutOfRange, "t index must be positive");
    return GeneratorId{Kind::T, static_cast<std::int16_t>(i), 0, {}};
  }
  static GeneratorId t_upper(int i, int l) {
    if (i < 1 || l < 1) fail(Errc::IndexOutOfRange, "T indices must be positive");
    return GeneratorId{Kind::TUpper, static_cast<std::int16_t>(i), static_cast<std::int16_t>(l), {}};
  }

  std::string text() const;

  friend auto operator<=>(const GeneratorId&, const GeneratorId&) = default;
};

// Product of generator powers.  Exponents are never zero in the stored map.
// In truncation rings the stored exponent of T(i) is the power of u_i = 1 - t_i
// (the nilpotent basis); conversion to t-powers happens only at the text/JSON
// boundary.  Everywhere else exponents mean literal generator powers.
class Monomial {
 public:
  Monomial() = default;

  static Monomial one() { return Monomial(); }
  static Monomial gen(const GeneratorId& g, int e = 1) {
    Monomial m;
    if (e != 0) m.exps_[g] = e;
    return m;
  }

  bool is_one() const { return exps_.empty(); }
  const std::map<GeneratorId, int>& exps() const { return exps_; }
  int exp_of(const GeneratorId& g) const {
    auto it = exps_.find(g);
    return it == exps_.end() ? 0 : it->second;
  }

  Monomial times(const Monomial& o) const {
    Monomial r = *this;
    for (const auto& [g, e] : o.exps_) {
      int ne = r.exp_of(g) + e;
      if (ne == 0)
        r.exps_.erase(g);
      else
        r.exps_[g] = ne;
    }
    return r;
  }

  Monomial pow(int e) const {
    Monomial r;
    if (e == 0) return r;
    for (const auto& [g, x] : exps_) r.exps_[g] = x * e;
    return r;
  }

  Monomial inverse() const { return pow(-1); }

  // Total order used for canonical representatives and printing.
  friend auto operator<=>(const Monomial& x, const Monomial& y) = default;

 private:
  std::map<GeneratorId, int> exps_;
};

using TermList = std::vector<std::pair<Monomial, BigInt>>;

}  // namespace ushuf
