#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "beltrami/errors.hpp"

namespace bcert {

// Closed real interval with double endpoints.  Endpoints move one ulp
// outward exactly when the IEEE operation was inexact (detected through
// TwoSum / fma residuals), so exact arithmetic stays exact and the true
// value of the operation is always contained in the returned interval.
// Endpoints are kept finite; widening past the largest double throws
// overflow_error.
struct Iv {
    double lo;
    double hi;

    Iv() : lo(0.0), hi(0.0) {}
    explicit Iv(double v) : lo(v), hi(v) {}
    Iv(double l, double h) : lo(l), hi(h) {}

    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Iv& o) const { return lo <= o.lo && o.hi <= hi; }
    bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
    double mid() const { return 0.5 * (lo + hi); }
    double width() const;          // upper bound on hi - lo
    double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }  // sup |x|
    double mig() const {           // inf |x| over the interval
        if (contains_zero()) return 0.0;
        return std::min(std::fabs(lo), std::fabs(hi));
    }
};

// Directed 1-ulp rounding helpers.  IEEE +,-,*,/ and sqrt are correctly
// rounded, so nudging the computed endpoint one ulp outward yields a bound
// on the exact endpoint.
double prev_d(double x);
double next_d(double x);

Iv operator+(const Iv& a, const Iv& b);
Iv operator-(const Iv& a, const Iv& b);
Iv operator-(const Iv& a);
Iv operator*(const Iv& a, const Iv& b);
Iv operator/(const Iv& a, const Iv& b);

inline Iv operator+(const Iv& a, double b) { return a + Iv(b); }
inline Iv operator+(double a, const Iv& b) { return Iv(a) + b; }
inline Iv operator-(const Iv& a, double b) { return a - Iv(b); }
inline Iv operator-(double a, const Iv& b) { return Iv(a) - b; }
inline Iv operator*(const Iv& a, double b) { return a * Iv(b); }
inline Iv operator*(double a, const Iv& b) { return Iv(a) * b; }
inline Iv operator/(const Iv& a, double b) { return a / Iv(b); }
inline Iv operator/(double a, const Iv& b) { return Iv(a) / b; }

Iv sqrt(const Iv& a);              // a.lo >= 0 required
Iv abs(const Iv& a);               // enclosure of |x|
Iv sqr(const Iv& a);               // tighter than a*a around zero
Iv hull(const Iv& a, const Iv& b);
Iv intersect(const Iv& a, const Iv& b);   // throws domain_error when empty
bool disjoint(const Iv& a, const Iv& b);
Iv min(const Iv& a, const Iv& b);
Iv max(const Iv& a, const Iv& b);

// Integer power with correct even-power treatment at zero.
Iv pow_int(const Iv& a, int n);

// Frozen enclosures of the constants the elementary kernel needs.
// Hex pairs are adjacent doubles bracketing the true value.
Iv iv_pi();
Iv iv_two_pi();
Iv iv_half_pi();
Iv iv_ln2();
Iv iv_euler();

void check_finite(const Iv& a, const char* op);

} // namespace bcert
