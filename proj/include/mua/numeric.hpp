#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace mua {

// All values, prices and ratios are exact: arbitrary-precision integers for
// valuations and rationals for epsilon, delta and payments. Comparisons in the
// tie-breaking and monotonicity logic must never be subject to rounding.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Thrown when an exhaustive operation would exceed its configured cap. The
// policy everywhere is to refuse rather than silently sample or truncate.
struct CapacityError : std::runtime_error {
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a caller-supplied precondition is detected to be violated at
// runtime (e.g. a payment routine handed a non-monotone allocation rule).
struct IntegrityError : std::runtime_error {
  explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

inline std::int64_t to_int64_checked(const Int& x, const char* context) {
  static const Int kMax = Int(std::numeric_limits<std::int64_t>::max());
  static const Int kMin = Int(std::numeric_limits<std::int64_t>::min());
  if (x > kMax || x < kMin)
    throw CapacityError(std::string(context) + ": value exceeds 64-bit range");
  return x.convert_to<std::int64_t>();
}

// Formats a rational as "p/q" (always with an explicit denominator, never a
// float). Used for every rational emitted by the CLI.
inline std::string rat_to_string(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

// Parses "p/q" or a bare integer "p". Returns nullopt on malformed input.
inline std::optional<Rat> parse_rational(const std::string& text) {
  auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  try {
    auto slash = text.find('/');
    if (slash == std::string::npos) {
      if (!is_int(text)) return std::nullopt;
      return Rat(Int(text));
    }
    std::string p = text.substr(0, slash);
    std::string q = text.substr(slash + 1);
    if (!is_int(p) || !is_int(q)) return std::nullopt;
    Int den(q);
    if (den == 0) return std::nullopt;
    return Rat(Int(p), den);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// floor(a / b) for exact integers, correct for negative a (b > 0).
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int pow_int(Int base, unsigned exp) {
  Int out = 1;
  while (exp) {
    if (exp & 1u) out *= base;
    base *= base;
    exp >>= 1u;
  }
  return out;
}

}  // namespace mua
