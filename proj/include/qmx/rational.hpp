#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

#include "qmx/errors.hpp"

namespace qmx {

// All values computed by the library are exact.  Integers are arbitrary
// precision and fractions are kept in lowest terms by cpp_rational, so report
// output is reproducible byte for byte and comparisons are never subject to
// rounding.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string rat_str(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Rat rat_parse(std::string_view s) {
  auto bad = [&] { fail(Errc::parse_error, "bad rational '" + std::string(s) + "'"); };
  if (s.empty()) bad();
  std::size_t slash = s.find('/');
  try {
    if (slash == std::string_view::npos) return Rat(Int(std::string(s)));
    Int num{std::string(s.substr(0, slash))};
    Int den{std::string(s.substr(slash + 1))};
    if (den == 0) bad();
    return Rat(num, den);
  } catch (const std::exception&) {
    bad();
  }
  return Rat();  // unreachable
}

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

}  // namespace qmx
