#pragma once

#include <iosfwd>
#include <string>

#include "ushuf/ratfun.hpp"
#include "ushuf/ring.hpp"

namespace ushuf {

// Canonical text forms.  Generators print as D1_2, q1, t1, T3_1, a, b;
// coefficient terms follow the monomial order; z-terms are emitted in
// descending lexicographic order; denominators as / ((z2 - z1)*(z2 - q1*z1)).
std::string text(const Monomial& m);
std::string text(const CoeffElement& c);
std::string text(const LaurentPoly& p);
std::string text(const RatFun& f);

std::ostream& operator<<(std::ostream& os, const Monomial& m);
std::ostream& operator<<(std::ostream& os, const CoeffElement& c);
std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);
std::ostream& operator<<(std::ostream& os, const RatFun& f);

}  // namespace ushuf
