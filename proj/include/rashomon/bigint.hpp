#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace rashomon {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

BigInt binomial(unsigned n, unsigned k);
// log10 of a positive integer without converting it to a double first.
double log10_big(const BigInt& x);
double log10_ratio(const BigInt& num, const BigInt& den);
double to_double(const BigRational& q);
inline std::string to_string(const BigInt& x) { return x.str(); }

}  // namespace rashomon
