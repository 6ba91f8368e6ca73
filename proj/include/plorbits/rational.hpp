#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <utility>

namespace plorbits {

/// Arbitrary-precision integer and exact rational scalar.
///
/// Every coordinate in this library is a Rational. cpp_rational keeps the
/// canonical form we rely on everywhere: gcd(|num|, den) = 1, den > 0, and
/// comparisons are exact, so strict inequalities and min/max selections are
/// decidable.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Builds num/den in canonical form. den may be negative (the sign moves to
/// the numerator); den must not be zero.
inline Rational make_rational(const Integer& num, const Integer& den) {
    return Rational(num) / Rational(den);
}

/// Canonical string form: "p/q" with q > 1, or plain "p" for integers.
inline std::string to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += '/';
        s += denominator(r).str();
    }
    return s;
}

/// Closed interval [lo, hi] with rational endpoints. Degenerate (lo == hi)
/// intervals are allowed and stand for single points.
struct Interval {
    Rational lo;
    Rational hi;

    bool operator==(const Interval&) const = default;

    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& other) const {
        return lo <= other.lo && other.hi <= hi;
    }
    bool degenerate() const { return lo == hi; }
    Rational length() const { return hi - lo; }
};

inline std::string to_string(const Interval& iv) {
    return "[" + to_string(iv.lo) + ", " + to_string(iv.hi) + "]";
}

}  // namespace plorbits
