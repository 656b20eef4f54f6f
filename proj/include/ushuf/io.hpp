#pragma once

#include <string>

#include "ushuf/ratfun.hpp"
#include "ushuf/relations.hpp"
#include "ushuf/series.hpp"
#include "ushuf/shuffle.hpp"
#include "ushuf/specialize.hpp"

namespace ushuf {

// Parsers for the canonical text forms emitted by text().  Grammar: integer
// and generator atoms (D1_2, q1, t1, T3_1, named units), variables z1..zk
// (bare z allowed when zarity == 1), operators + - * ^ ( ), and an optional
// trailing denominator group / ((z2 - z1)*(z2 - q1*z1)^2).  Identifiers of
// the form D/q/t/T + indices resolve to structured generators when the ring
// knows them and fall back to named units otherwise.  Errors: ParseError for
// malformed input; ring-level errors (unknown generator, non-invertible
// negative power, ...) surface from element construction.
CoeffElement parse_coeff(const RingPtr& ring, const std::string& input);
LaurentPoly parse_poly(const RingPtr& ring, int zarity, const std::string& input);
RatFun parse_ratfun(const RingPtr& ring, int zarity, const std::string& input);

// JSON emission.  Shapes are documented in docs/schema.json; output is
// deterministic (alphabetical keys, canonical term order) and carries no
// timing data, so equal values serialize byte-identically.
std::string json_ring(const RingPtr& ring);
std::string json_coeff(const CoeffElement& c);
std::string json_poly(const LaurentPoly& p);
std::string json_ratfun(const RatFun& f);
std::string json_shuffle(const ShuffleElement& e);
std::string json_report(const VerificationReport& rep);
std::string json_reports(const std::vector<VerificationReport>& reps);
std::string json_report(const CompatibilityReport& rep);
std::string json_report(const PushforwardReport& rep);

}  // namespace ushuf
