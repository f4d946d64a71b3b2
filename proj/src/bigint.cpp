#include "rashomon/bigint.hpp"

#include <cmath>
#include <limits>

#include "rashomon/error.hpp"

namespace rashomon {

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

double log10_big(const BigInt& x) {
  require(x > 0, ErrorCode::kInvalidArgument, "log10 of a non-positive integer");
  const auto bits = boost::multiprecision::msb(x);
  if (bits < 1000) return std::log10(x.convert_to<double>());
  const unsigned shift = static_cast<unsigned>(bits) - 60;
  const auto top = static_cast<std::uint64_t>(x >> shift);
  return std::log10(static_cast<double>(top)) + static_cast<double>(shift) * std::log10(2.0);
}

double log10_ratio(const BigInt& num, const BigInt& den) {
  if (num == 0) return -std::numeric_limits<double>::infinity();
  return log10_big(num) - log10_big(den);
}

double to_double(const BigRational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (num == 0) return 0.0;
  const BigInt mag = num < 0 ? BigInt(-num) : num;
  const double sign = num < 0 ? -1.0 : 1.0;
  if (boost::multiprecision::msb(mag) < 1000 && boost::multiprecision::msb(den) < 1000) {
    return sign * mag.convert_to<double>() / den.convert_to<double>();
  }
  return sign * std::pow(10.0, log10_ratio(mag, den));
}

}  // namespace rashomon
