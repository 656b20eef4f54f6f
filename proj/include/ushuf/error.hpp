#pragma once

#include <stdexcept>
#include <string>

namespace ushuf {

enum class Errc {
  UnknownGenerator,
  NonInvertibleNegativePower,
  RingMismatch,
  ArityMismatch,
  ArityOverflow,
  FlavorMismatch,
  ArityBound,
  InternalMismatch,
  NotInClaimedForm,
  NotSymmetric,
  ZeroPolynomial,
  NotSorted,
  UnknownName,
  NonUnitEntry,
  NotSingleFactor,
  NotOneVariable,
  OrderNegative,
  IndexOutOfRange,
  ConventionFailure,
  ParseError,
  UsageError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace ushuf
