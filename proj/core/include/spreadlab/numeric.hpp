#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace spl {

using bigint = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

struct cap_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// raised when the generation-test budget runs out
struct budget_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline rational make_q(const bigint& n, const bigint& d) { return rational(n, d); }

inline std::string q_str(const rational& q) {
  return numerator(q).str() + (denominator(q) == 1 ? std::string() : "/" + denominator(q).str());
}

inline bigint factorial(unsigned n) {
  bigint r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

inline std::uint64_t to_u64(const bigint& v) {
  if (v < 0 || v > bigint(UINT64_MAX)) throw std::overflow_error("value exceeds 64 bits: " + v.str());
  return v.convert_to<std::uint64_t>();
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// rational to decimal for reports only
inline double to_double(const rational& q) { return q.convert_to<double>(); }

}  // namespace spl
