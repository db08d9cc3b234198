#include "beltrami/interval.hpp"

#include <algorithm>

namespace bcert {

namespace {

const double INF = std::numeric_limits<double>::infinity();

// Below this magnitude the fma residual of a product can itself fall into
// the subnormal range and round away, so the exactness test is no longer
// trustworthy; fall back to an unconditional one-ulp nudge there.
constexpr double kResidualSafe = 0x1p-960;

} // namespace

double prev_d(double x) {
    if (x == 0.0) return -std::numeric_limits<double>::denorm_min();
    return std::nextafter(x, -INF);
}

double next_d(double x) {
    if (x == 0.0) return std::numeric_limits<double>::denorm_min();
    return std::nextafter(x, INF);
}

namespace {

// Directed endpoint operations.  IEEE +,-,*,/ round to nearest; the exact
// residual (TwoSum for addition, fma for the rest) tells whether the result
// is already exact, so exact operations keep exact endpoints and inexact
// ones move a single ulp outward on the side that needs it.

double add_lo(double a, double b) {
    double s = a + b;
    double bp = s - a;
    double ap = s - bp;
    double err = (a - ap) + (b - bp);   // a + b = s + err exactly
    return err < 0.0 ? prev_d(s) : s;
}

double add_hi(double a, double b) {
    double s = a + b;
    double bp = s - a;
    double ap = s - bp;
    double err = (a - ap) + (b - bp);
    return err > 0.0 ? next_d(s) : s;
}

double mul_lo(double a, double b) {
    double p = a * b;
    if (std::abs(p) < kResidualSafe)
        return (a == 0.0 || b == 0.0) ? p : prev_d(p);
    return std::fma(a, b, -p) < 0.0 ? prev_d(p) : p;
}

double mul_hi(double a, double b) {
    double p = a * b;
    if (std::abs(p) < kResidualSafe)
        return (a == 0.0 || b == 0.0) ? p : next_d(p);
    return std::fma(a, b, -p) > 0.0 ? next_d(p) : p;
}

double div_lo(double a, double b) {
    double q = a / b;
    if (a == 0.0) return q;
    if (std::abs(q) < kResidualSafe || std::abs(a) < kResidualSafe)
        return prev_d(q);
    double r = std::fma(q, b, -a);      // a = q b + r, so a/b - q = -r/b
    bool below = (r > 0.0) == (b > 0.0) && r != 0.0;
    return below ? prev_d(q) : q;
}

double div_hi(double a, double b) {
    double q = a / b;
    if (a == 0.0) return q;
    if (std::abs(q) < kResidualSafe || std::abs(a) < kResidualSafe)
        return next_d(q);
    double r = std::fma(q, b, -a);
    bool above = (r > 0.0) != (b > 0.0) && r != 0.0;
    return above ? next_d(q) : q;
}

} // namespace

void check_finite(const Iv& a, const char* op) {
    if (!std::isfinite(a.lo) || !std::isfinite(a.hi) || a.lo > a.hi)
        throw overflow_error(op, "enclosure left the finite range");
}

double Iv::width() const { return add_hi(hi, -lo); }

Iv operator+(const Iv& a, const Iv& b) {
    Iv r(add_lo(a.lo, b.lo), add_hi(a.hi, b.hi));
    check_finite(r, "iv_add");
    return r;
}

Iv operator-(const Iv& a, const Iv& b) {
    Iv r(add_lo(a.lo, -b.hi), add_hi(a.hi, -b.lo));
    check_finite(r, "iv_sub");
    return r;
}

Iv operator-(const Iv& a) { return Iv(-a.hi, -a.lo); }

Iv operator*(const Iv& a, const Iv& b) {
    double lo = std::min(std::min(mul_lo(a.lo, b.lo), mul_lo(a.lo, b.hi)),
                         std::min(mul_lo(a.hi, b.lo), mul_lo(a.hi, b.hi)));
    double hi = std::max(std::max(mul_hi(a.lo, b.lo), mul_hi(a.lo, b.hi)),
                         std::max(mul_hi(a.hi, b.lo), mul_hi(a.hi, b.hi)));
    Iv r(lo, hi);
    check_finite(r, "iv_mul");
    return r;
}

Iv operator/(const Iv& a, const Iv& b) {
    if (b.contains_zero())
        throw domain_error("iv_div", "divisor contains zero");
    double lo = std::min(std::min(div_lo(a.lo, b.lo), div_lo(a.lo, b.hi)),
                         std::min(div_lo(a.hi, b.lo), div_lo(a.hi, b.hi)));
    double hi = std::max(std::max(div_hi(a.lo, b.lo), div_hi(a.lo, b.hi)),
                         std::max(div_hi(a.hi, b.lo), div_hi(a.hi, b.hi)));
    Iv r(lo, hi);
    check_finite(r, "iv_div");
    return r;
}

Iv sqrt(const Iv& a) {
    if (a.lo < 0.0)
        throw domain_error("iv_sqrt", "argument extends below zero");
    // IEEE sqrt is correctly rounded; the squared residual decides exactness
    double slo = std::sqrt(a.lo);
    double shi = std::sqrt(a.hi);
    double lo, hi;
    if (a.lo < 0x1p-1000) {
        lo = a.lo == 0.0 ? 0.0 : std::max(0.0, prev_d(slo));
    } else {
        lo = std::fma(slo, slo, -a.lo) > 0.0 ? prev_d(slo) : slo;
    }
    if (a.hi < 0x1p-1000) {
        hi = a.hi == 0.0 ? 0.0 : next_d(shi);
    } else {
        hi = std::fma(shi, shi, -a.hi) < 0.0 ? next_d(shi) : shi;
    }
    return Iv(lo, hi);
}

Iv abs(const Iv& a) {
    if (a.lo >= 0.0) return a;
    if (a.hi <= 0.0) return Iv(-a.hi, -a.lo);
    return Iv(0.0, std::max(-a.lo, a.hi));
}

Iv sqr(const Iv& a) {
    Iv m = abs(a);
    Iv r(m.lo == 0.0 ? 0.0 : mul_lo(m.lo, m.lo), mul_hi(m.hi, m.hi));
    check_finite(r, "iv_sqr");
    return r;
}

Iv hull(const Iv& a, const Iv& b) {
    return Iv(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

Iv intersect(const Iv& a, const Iv& b) {
    Iv r(std::max(a.lo, b.lo), std::min(a.hi, b.hi));
    if (r.lo > r.hi)
        throw domain_error("iv_intersect", "empty intersection");
    return r;
}

bool disjoint(const Iv& a, const Iv& b) { return a.hi < b.lo || b.hi < a.lo; }

Iv min(const Iv& a, const Iv& b) {
    return Iv(std::min(a.lo, b.lo), std::min(a.hi, b.hi));
}

Iv max(const Iv& a, const Iv& b) {
    return Iv(std::max(a.lo, b.lo), std::max(a.hi, b.hi));
}

Iv pow_int(const Iv& a, int n) {
    if (n == 0) return Iv(1.0);
    if (n < 0) return Iv(1.0) / pow_int(a, -n);
    // square-and-multiply over intervals; even powers routed through sqr
    // so that intervals straddling zero stay nonnegative
    Iv acc(1.0);
    Iv base = a;
    int e = n;
    bool first = true;
    while (e > 0) {
        if (e & 1) {
            acc = first ? base : acc * base;
            first = false;
        }
        e >>= 1;
        if (e > 0) base = sqr(base);
    }
    if (n % 2 == 0 && a.contains_zero() && acc.lo < 0.0) acc.lo = 0.0;
    return acc;
}

Iv iv_pi() {
    return Iv(0x1.921fb54442d18p+1, 0x1.921fb54442d19p+1);
}

Iv iv_two_pi() {
    return Iv(0x1.921fb54442d18p+2, 0x1.921fb54442d19p+2);
}

Iv iv_half_pi() {
    return Iv(0x1.921fb54442d18p+0, 0x1.921fb54442d19p+0);
}

Iv iv_ln2() {
    return Iv(0x1.62e42fefa39efp-1, 0x1.62e42fefa39f0p-1);
}

Iv iv_euler() {
    return Iv(0x1.2788cfc6fb618p-1, 0x1.2788cfc6fb619p-1);
}

} // namespace bcert
