#include "beltrami/special_fn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "beltrami/errors.hpp"
#include "beltrami/iv_elem.hpp"

namespace bcert {

namespace {

constexpr double kThreshold = 35.0;  // |center| cutover between the regimes
constexpr int kNearOrderMax = 60;    // near-zero series truncation order
constexpr int kAsymOrderCap = 40;    // asymptotic order cap (gains stop well before)
constexpr int kFactMax = 62;         // factorial table covers (n+1)! for both regimes

const Iv& fact(int k) {
    static const std::array<Iv, kFactMax + 1> tbl = [] {
        std::array<Iv, kFactMax + 1> t{};
        t[0] = Iv(1.0);
        for (int i = 1; i <= kFactMax; ++i) t[i] = t[i - 1] * Iv(double(i));
        return t;
    }();
    return tbl.at(size_t(k));
}

// Coefficient 1/(k k!) of the convergent series.
const Iv& nz_coef(int k) {
    static const std::array<Iv, kNearOrderMax + 1> tbl = [] {
        std::array<Iv, kNearOrderMax + 1> t{};
        for (int i = 1; i <= kNearOrderMax; ++i)
            t[i] = Iv(1.0) / (Iv(double(i)) * fact(i));
        return t;
    }();
    return tbl.at(size_t(k));
}

Disk disk_of_iv(const Iv& v) { return disk_from_box(v, Iv(0.0), 0.0); }

// Single point sitting on the open positive real axis: evaluates to the
// real principal value instead of being rejected.
bool pv_point(const Disk& z) {
    return z.r == 0.0 && z.c.imag() == 0.0 && z.c.real() > 0.0;
}

// Proof that the disk stays off the cut [0, inf).  The distance from the
// center to the ray is |Im c| when Re c >= 0 and |c| otherwise; both
// comparisons below bound it from below rigorously.
bool avoids_cut(const Disk& z) {
    if (z.c.imag() == 0.0 && z.c.real() >= 0.0) return false;
    if (z.c.real() >= 0.0) return std::fabs(z.c.imag()) > z.r;
    Iv d = sqrt(sqr(Iv(z.c.real())) + sqr(Iv(z.c.imag())));
    return d.lo > z.r;
}

// Truncation bound of the convergent series over |z| <= m:
//   e^m m^{n+1} / ((n+1)! (n+1)).
Iv near_zero_rem(double m_hi, int n) {
    Iv m(m_hi);
    return exp(m) * pow_int(m, n + 1) / (fact(n + 1) * Iv(double(n + 1)));
}

Iv guarded_pow(const Iv& base, int n) {
    Iv p = pow_int(base, n);
    // past DBL_MAX the reciprocal would collapse to an unsound zero;
    // replacing the power by DBL_MAX keeps the quotient an upper bound
    if (!std::isfinite(p.lo)) p = Iv(std::numeric_limits<double>::max());
    return p;
}

int asym_order(double mod) {
    return std::min(kAsymOrderCap, std::max(1, int(std::floor(mod)) - 2));
}

// Complex rectangle with interval sides; enough arithmetic for Horner
// evaluation along the imaginary axis, where it keeps the real part of
// i y exactly zero (interval 0 * x = [0,0] exactly).
struct IvC {
    Iv re, im;
};
IvC operator+(const IvC& a, const IvC& b) { return {a.re + b.re, a.im + b.im}; }
IvC operator*(const IvC& a, const IvC& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

} // namespace

ExpEiRegime expei_regime(const Disk& z) {
    double ca = std::hypot(z.c.real(), z.c.imag());
    if (ca < kThreshold) return {ExpEiKind::near_zero, kNearOrderMax, kThreshold};
    return {ExpEiKind::asymptotic, asym_order(ca), kThreshold};
}

Disk expei_near_zero(const Disk& z, int n) {
    if (n < 1 || n > kNearOrderMax)
        throw domain_error("expei_near_zero", "series order out of range");
    if (pv_point(z)) {
        Iv x(z.c.real());
        Iv acc = nz_coef(n);
        for (int k = n - 1; k >= 1; --k) acc = nz_coef(k) + x * acc;
        Iv rem = near_zero_rem(x.hi, n);
        Iv bracket = iv_euler() + log(x) + x * acc + Iv(-rem.hi, rem.hi);
        Iv val = exp(-x) * bracket;
        check_finite(val, "expei_near_zero");
        return disk_from_box(val, Iv(0.0), 0.0);
    }
    if (!avoids_cut(z))
        throw domain_error("expei_near_zero", "argument meets the branch cut [0, inf)");
    Disk acc = disk_of_iv(nz_coef(n));
    for (int k = n - 1; k >= 1; --k) acc = disk_of_iv(nz_coef(k)) + z * acc;
    Disk bracket = disk_of_iv(iv_euler()) + log(-z) + z * acc;
    Iv rem = near_zero_rem(z.mag().hi, n);
    Disk padded(bracket.c, (Iv(bracket.r) + Iv(rem.hi)).hi);
    Disk out = exp(-z) * padded;
    check_finite(Iv(out.r), "expei_near_zero");
    return out;
}

Disk expei_asymptotic(const Disk& z, int n) {
    if (n < 1 || n + 1 > kFactMax)
        throw domain_error("expei_asymptotic", "series order out of range");
    if (pv_point(z)) {
        // eta(x) = 1 and |z| - |Im z| = x on the positive axis
        Iv x(z.c.real());
        Iv w = Iv(1.0) / x;
        Iv acc = fact(n);
        for (int i = n - 1; i >= 0; --i) acc = fact(i) + w * acc;
        Iv rem = (x + Iv(1.0)) * fact(n + 1) / guarded_pow(x, n + 1);
        return disk_from_box(w * acc + Iv(-rem.hi, rem.hi), Iv(0.0), 0.0);
    }
    if (!avoids_cut(z))
        throw domain_error("expei_asymptotic", "argument meets the branch cut [0, inf)");
    Disk w = reciprocal(z);
    Disk acc = disk_of_iv(fact(n));
    for (int i = n - 1; i >= 0; --i) acc = disk_of_iv(fact(i)) + w * acc;
    Disk s = w * acc;
    Iv m = z.mag();
    Iv re = z.real();
    Iv eta = re.hi <= 0.0 ? Iv(0.0) : (re.lo > 0.0 ? Iv(1.0) : Iv(0.0, 1.0));
    // pointwise |z| >= |Im z|; the clamp only trims the outward-rounded
    // interval difference, it never changes the mathematical bound
    Iv gap = max(m - abs(z.imag()), Iv(0.0));
    Iv rem = (eta * gap + Iv(1.0)) * fact(n + 1) / guarded_pow(Iv(m.lo), n + 1);
    return Disk(s.c, (Iv(s.r) + Iv(rem.hi)).hi);
}

namespace {

Disk expei_dispatch(const Disk& z) {
    if (!pv_point(z) && !avoids_cut(z))
        throw domain_error("expei_enclosure", "argument meets the branch cut [0, inf)");
    ExpEiRegime rg = expei_regime(z);
    Iv m = z.mag();
    // For Re z <= 0 the asymptotic remainder is the classical sector bound,
    // certified at every magnitude; for Re z > 0 only at |z| >= threshold.
    bool classical = z.real().hi <= 0.0;
    if (rg.kind == ExpEiKind::near_zero) {
        bool have_series = false;
        Disk series;
        try {
            series = expei_near_zero(z, rg.terms);
            have_series = true;
        } catch (const overflow_error&) {
            if (!classical) throw;
        }
        if (classical && m.lo > 3.0) {
            Disk tail = expei_asymptotic(z, asym_order(m.lo));
            if (!have_series || tail.r < series.r) return tail;
        }
        if (!have_series)
            throw precision_error("expei_enclosure",
                "series evaluation overflows and no asymptotic bound is certified on the disk");
        return series;
    }
    if (classical || m.lo >= rg.threshold) return expei_asymptotic(z, rg.terms);
    // center beyond the cutover but the disk dips below it with Re z > 0
    // points; fall back to the everywhere-valid series
    return expei_near_zero(z, kNearOrderMax);
}

} // namespace

Disk expei_enclosure(const Disk& z) {
    try {
        return expei_dispatch(z);
    } catch (const overflow_error& e) {
        throw precision_error("expei_enclosure", e.what());
    }
}

Disk expei_imag_axis(const Iv& y) {
    check_finite(y, "expei_imag_axis");
    if (y.contains_zero())
        throw domain_error("expei_imag_axis", "interval contains zero");
    try {
        Iv ay = abs(y);
        int n_as = asym_order(ay.lo);
        bool use_asym = false;
        if (ay.lo > 3.0) {
            // pick the regime with the smaller remainder (log scale estimate;
            // a policy choice, the bound itself is computed in intervals)
            double lg_nz = ay.hi + (kNearOrderMax + 1) * std::log(ay.hi)
                         - std::lgamma(double(kNearOrderMax + 2))
                         - std::log(double(kNearOrderMax + 1));
            double lg_as = std::lgamma(double(n_as + 2))
                         - double(n_as + 1) * std::log(ay.lo);
            use_asym = lg_as < lg_nz;
        }
        if (use_asym) {
            // W = 1/(i y) = -i / y
            IvC w{Iv(0.0), -(Iv(1.0) / y)};
            IvC acc{fact(n_as), Iv(0.0)};
            for (int i = n_as - 1; i >= 0; --i) acc = IvC{fact(i), Iv(0.0)} + w * acc;
            IvC s = w * acc;
            // Re z = 0 exactly: eta = 0, classical remainder at every |y|
            Iv rem = fact(n_as + 1) / guarded_pow(Iv(ay.lo), n_as + 1);
            return disk_from_box(s.re, s.im, rem.hi);
        }
        IvC zc{Iv(0.0), y};
        IvC acc{nz_coef(kNearOrderMax), Iv(0.0)};
        for (int k = kNearOrderMax - 1; k >= 1; --k)
            acc = IvC{nz_coef(k), Iv(0.0)} + zc * acc;
        IvC s = zc * acc;
        // ln(-i y) = ln |y| -+ i pi/2 for y > 0 / y < 0
        Iv lim = (y.lo > 0.0) ? -iv_half_pi() : iv_half_pi();
        IvC bracket{iv_euler() + log(ay) + s.re, lim + s.im};
        Iv rem = near_zero_rem(ay.hi, kNearOrderMax);
        // e^{-i y} has modulus one, so the bracket pad survives unscaled
        IvC phase{cos(y), -sin(y)};
        IvC prod = phase * bracket;
        return disk_from_box(prod.re, prod.im, rem.hi);
    } catch (const overflow_error& e) {
        throw precision_error("expei_imag_axis", e.what());
    }
}

Iv zeta_remainder(int m, int n) {
    if (m < 1 || n < 2)
        throw domain_error("zeta_remainder", "requires m >= 1 and n >= 2");
    const long long first = (long long)m + 1;
    const long long cap = (long long)m + std::max(128LL, (long long)m / 4);
    Iv s(0.0);
    long long last = m;  // highest index folded into the explicit sum
    for (long long i = first; i <= cap; ++i) {
        Iv p = pow_int(Iv(double(i)), n);
        if (!std::isfinite(p.lo)) break;  // remaining terms go into the bracket
        s = s + Iv(1.0) / p;
        last = i;
    }
    // integral bracket for the tail past `last`:
    //   1/((n-1)(last+1)^{n-1}) <= sum_{i>last} i^{-n} <= 1/((n-1) last^{n-1})
    auto tail_at = [&](long long i) {
        return Iv(1.0) / (Iv(double(n - 1)) * guarded_pow(Iv(double(i)), n - 1));
    };
    Iv lo_tail = tail_at(last + 1);
    Iv hi_tail = tail_at(last);
    return s + Iv(lo_tail.lo, hi_tail.hi);
}

} // namespace bcert
