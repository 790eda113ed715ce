#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace jforge {

// Exact rational coefficients.  cpp_rational keeps fractions normalized
// (lowest terms, positive denominator), which is the Scalar invariant.
using Integer = boost::multiprecision::cpp_int;
using Scalar = boost::multiprecision::cpp_rational;

inline Scalar make_scalar(long num, long den = 1) {
    return Scalar(Integer(num), Integer(den));
}

inline std::string num_string(const Scalar& s) {
    return boost::multiprecision::numerator(s).str();
}

inline std::string den_string(const Scalar& s) {
    return boost::multiprecision::denominator(s).str();
}

inline double to_double(const Scalar& s) {
    return s.convert_to<double>();
}

}  // namespace jforge
