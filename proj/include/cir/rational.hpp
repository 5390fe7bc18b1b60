#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <sstream>
#include <string>

namespace cir {

// Exact arithmetic for belief vectors and game values. Denominators grow
// multiplicatively with the horizon, so a fixed-width type is not an option.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(long long num, long long den = 1) { return Rational(num, den); }
inline Rational rat(const BigInt& num, const BigInt& den) { return Rational(num, den); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// "p/q" for non-integers, plain integer otherwise; used in CSV cells and logs.
inline std::string rat_str(const Rational& r) {
    std::ostringstream os;
    if (boost::multiprecision::denominator(r) == 1) {
        os << boost::multiprecision::numerator(r);
    } else {
        os << boost::multiprecision::numerator(r) << '/' << boost::multiprecision::denominator(r);
    }
    return os.str();
}

// Scalar shim so belief/value code can be instantiated with Rational (exact
// lane) or double (large-instance lane) without branching at call sites.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static Rational from_ratio(long long a, long long b) { return Rational(a, b); }
    static double to_d(const Rational& x) { return to_double(x); }
    static constexpr bool exact = true;
};

template <>
struct scalar_traits<double> {
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static double from_ratio(long long a, long long b) { return double(a) / double(b); }
    static double to_d(double x) { return x; }
    static constexpr bool exact = false;
};

}  // namespace cir
