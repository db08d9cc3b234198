#include "beltrami/iv_elem.hpp"

#include <algorithm>
#include <cmath>

namespace bcert {

namespace {

// ---- exp ----------------------------------------------------------------
// Reduction x = k ln2 + s with |s| <= ln2/2 + slack, then a degree-17
// Taylor polynomial in interval arithmetic.  The Lagrange remainder
// e^{|s|} |s|^18 / 18! is far below one ulp of the result.

Iv exp_reduced(const Iv& s) {
    // |s| <= 0.35 assumed
    Iv acc(1.0);
    for (int i = 17; i >= 1; --i)
        acc = acc * s / static_cast<double>(i) + 1.0;
    // Lagrange tail: e^{|s|} |s|^18 / 18!, with e^0.35 < 1.5
    const double rem = (pow_int(Iv(s.mag()), 18) * (1.5 / 6402373705728000.0)).hi;
    return acc + Iv(-rem, rem);
}

Iv exp_point(double x) {
    if (x > 709.0)
        throw overflow_error("iv_exp", "argument too large");
    if (x < -709.0)
        return Iv(0.0, std::numeric_limits<double>::denorm_min() * 4.0);
    const double kd = std::nearbyint(x / 0.6931471805599453);
    const int k = static_cast<int>(kd);
    const Iv s = Iv(x) - Iv(kd) * iv_ln2();
    Iv r = exp_reduced(s);
    // scale by 2^k exactly
    return Iv(std::ldexp(r.lo, k), std::ldexp(r.hi, k));
}

// ---- log ----------------------------------------------------------------
// x = m 2^e with m in [1/sqrt2, sqrt2), log m = 2 atanh t, t = (m-1)/(m+1),
// |t| <= 0.1716.  atanh series through t^21 plus tail bound.

Iv log_point(double x) {
    if (x <= 0.0)
        throw domain_error("iv_log", "argument not positive");
    int e = 0;
    double m = std::frexp(x, &e);   // m in [0.5, 1)
    if (m < 0.70710678118654752) { m *= 2.0; e -= 1; }
    const Iv t = (Iv(m) - 1.0) / (Iv(m) + 1.0);
    const Iv t2 = sqr(t);
    Iv acc(1.0 / 21.0);
    for (int i = 19; i >= 1; i -= 2)
        acc = acc * t2 + 1.0 / static_cast<double>(i);
    acc = acc * t * 2.0;
    const double tm = t.mag();
    const double rem = (pow_int(Iv(tm), 23) * 2.0 / (Iv(23.0) * (1.0 - Iv(tm) * Iv(tm)))).hi;
    return Iv(static_cast<double>(e)) * iv_ln2() + acc + Iv(-rem, rem);
}

// ---- sin / cos ----------------------------------------------------------
// Reduction x = k pi/2 + s, |s| <= pi/4 + slack, quadrant dispatch.
// The reduction uses the frozen pi/2 enclosure, so |x| is capped where the
// accumulated k * width(pi/2) is still far below the series error.

Iv sin_reduced(const Iv& s) {
    // Horner over odd terms 1,3,...,17: sin s = s(1 - s2/6(1 - s2/20(...)))
    const Iv s2 = sqr(s);
    Iv acc(1.0);
    for (int i = 17; i >= 3; i -= 2)
        acc = 1.0 - acc * s2 / static_cast<double>(i * (i - 1));
    acc = acc * s;
    const double rem = (pow_int(Iv(s.mag()), 19) / 1.21645100408832e17).hi;  // 19!
    return intersect(acc + Iv(-rem, rem), Iv(-1.0, 1.0));
}

Iv cos_reduced(const Iv& s) {
    const Iv s2 = sqr(s);
    Iv acc(1.0);
    for (int i = 18; i >= 2; i -= 2)
        acc = 1.0 - acc * s2 / static_cast<double>(i * (i - 1));
    const double rem = (pow_int(Iv(s.mag()), 20) / 2.43290200817664e18).hi;  // 20!
    return intersect(acc + Iv(-rem, rem), Iv(-1.0, 1.0));
}

// quadrant index and reduced argument for a point
std::pair<long, Iv> trig_reduce(double x) {
    if (std::fabs(x) > 1.0e8)
        throw domain_error("iv_trig", "argument too large for reduction");
    const double kd = std::nearbyint(x / 1.5707963267948966);
    const long k = static_cast<long>(kd);
    const Iv s = Iv(x) - Iv(kd) * iv_half_pi();
    return {k, s};
}

Iv sin_point(double x) {
    auto [k, s] = trig_reduce(x);
    switch (((k % 4) + 4) % 4) {
        case 0: return sin_reduced(s);
        case 1: return cos_reduced(s);
        case 2: return -sin_reduced(s);
        default: return -cos_reduced(s);
    }
}

Iv cos_point(double x) {
    auto [k, s] = trig_reduce(x);
    switch (((k % 4) + 4) % 4) {
        case 0: return cos_reduced(s);
        case 1: return -sin_reduced(s);
        case 2: return -cos_reduced(s);
        default: return sin_reduced(s);
    }
}

// ---- atan ---------------------------------------------------------------
// Two half-angle reductions t -> t/(1+sqrt(1+t^2)) bring |t| below
// tan(pi/16) ~ 0.199; alternating series through t^25.

Iv atan_small(const Iv& t) {
    const Iv t2 = sqr(t);
    Iv acc(1.0 / 25.0);
    for (int i = 23; i >= 1; i -= 2)
        acc = 1.0 / static_cast<double>(i) - acc * t2;
    acc = acc * t;
    const double rem = (pow_int(Iv(t.mag()), 27) / 27.0).hi;
    return acc + Iv(-rem, rem);
}

Iv atan_point_core(double x) {
    // |x| <= 1 assumed
    Iv t(x);
    for (int i = 0; i < 2; ++i)
        t = t / (1.0 + sqrt(1.0 + sqr(t)));
    return atan_small(t) * 4.0;
}

Iv atan_point(double x) {
    if (std::fabs(x) <= 1.0) return atan_point_core(x);
    // atan x = +-pi/2 - atan(1/x); 1/x through interval division
    Iv t = 1.0 / Iv(x);
    for (int i = 0; i < 2; ++i)
        t = t / (1.0 + sqrt(1.0 + sqr(t)));
    const Iv core = atan_small(t) * 4.0;
    return (x > 0.0) ? iv_half_pi() - core : -iv_half_pi() - core;
}

} // namespace

Iv exp(const Iv& a) {
    // monotone increasing
    return Iv(std::max(0.0, exp_point(a.lo).lo), exp_point(a.hi).hi);
}

Iv log(const Iv& a) {
    return Iv(log_point(a.lo).lo, log_point(a.hi).hi);
}

Iv atan(const Iv& a) {
    return Iv(atan_point(a.lo).lo, atan_point(a.hi).hi);
}

Iv sin(const Iv& a) {
    check_finite(a, "iv_sin");
    if (a.width() >= 6.28318) return Iv(-1.0, 1.0);
    Iv r = hull(sin_point(a.lo), sin_point(a.hi));
    // extremum k pi/2 inside the interval (odd k) forces the endpoint +-1
    const double hp = 1.5707963267948966;
    long klo = static_cast<long>(std::ceil(a.lo / hp - 1.0e-9)) - 1;
    long khi = static_cast<long>(std::floor(a.hi / hp + 1.0e-9)) + 1;
    for (long k = klo; k <= khi; ++k) {
        if (k % 2 == 0) continue;
        const Iv xk = Iv(static_cast<double>(k)) * iv_half_pi();
        if (xk.hi < a.lo || xk.lo > a.hi) continue;
        // critical point may lie inside: include the extreme value
        r = (((k % 4) + 4) % 4 == 1) ? hull(r, Iv(1.0)) : hull(r, Iv(-1.0));
    }
    return intersect(r, Iv(-1.0, 1.0));
}

Iv cos(const Iv& a) {
    check_finite(a, "iv_cos");
    if (a.width() >= 6.28318) return Iv(-1.0, 1.0);
    Iv r = hull(cos_point(a.lo), cos_point(a.hi));
    const double hp = 1.5707963267948966;
    long klo = static_cast<long>(std::ceil(a.lo / hp - 1.0e-9)) - 1;
    long khi = static_cast<long>(std::floor(a.hi / hp + 1.0e-9)) + 1;
    for (long k = klo; k <= khi; ++k) {
        if (k % 2 != 0) continue;
        const Iv xk = Iv(static_cast<double>(k)) * iv_half_pi();
        if (xk.hi < a.lo || xk.lo > a.hi) continue;
        r = (((k % 4) + 4) % 4 == 0) ? hull(r, Iv(1.0)) : hull(r, Iv(-1.0));
    }
    return intersect(r, Iv(-1.0, 1.0));
}

Iv atan2(const Iv& y, const Iv& x) {
    check_finite(x, "iv_atan2");
    check_finite(y, "iv_atan2");
    if (x.lo > 0.0)
        return atan(y / x);
    if (x.hi < 0.0) {
        if (y.lo > 0.0) return atan(y / x) + iv_pi();
        if (y.hi < 0.0) return atan(y / x) - iv_pi();
        throw branch_error("iv_atan2", "box meets the negative real axis");
    }
    // x straddles zero: need a sign on y
    if (y.lo > 0.0) return iv_half_pi() - atan(x / y);
    if (y.hi < 0.0) return -iv_half_pi() - atan(x / y);
    throw domain_error("iv_atan2", "box contains the origin");
}

Iv pow(const Iv& base, const Iv& expo) {
    return exp(expo * log(base));
}

Iv cot(const Iv& a) {
    const Iv s = sin(a);
    if (s.contains_zero())
        throw domain_error("iv_cot", "sine enclosure contains zero");
    return cos(a) / s;
}

} // namespace bcert
