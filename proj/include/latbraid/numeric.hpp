#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cmath>
#include <string>

namespace latbraid {

// Exact unbounded integers: coordinates grow like lambda^k (~69.76 per word for
// the strongest braids found here), so 64-bit overflows within a few iterations.
using ExactInt = boost::multiprecision::cpp_int;

// High-precision reals for spectral analysis (power iteration, splitting
// sequences compare irrational coordinates at tolerance ~1e-30).
using BigFloat = boost::multiprecision::cpp_bin_float_50;

template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

inline double log_value(double x) { return std::log(x); }
inline double log_value(const BigFloat& x) { return static_cast<double>(boost::multiprecision::log(x)); }
inline double log_value(const ExactInt& x) { return static_cast<double>(boost::multiprecision::log(BigFloat(x))); }

inline BigFloat log_big(const BigFloat& x) { return boost::multiprecision::log(x); }
inline BigFloat log_big(const ExactInt& x) { return boost::multiprecision::log(BigFloat(x)); }

// log(a/b) for huge exact integers, exact enough for convergence tests.
inline double log_ratio(const ExactInt& a, const ExactInt& b) {
    return static_cast<double>(boost::multiprecision::log(BigFloat(a) / BigFloat(b)));
}

enum class Backend { Exact, Float };

inline std::string to_string(Backend b) { return b == Backend::Exact ? "exact" : "float"; }

}  // namespace latbraid
