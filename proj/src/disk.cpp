#include "beltrami/disk.hpp"

#include <algorithm>
#include <cmath>

#include "beltrami/errors.hpp"
#include "beltrami/iv_elem.hpp"

namespace bcert {

namespace {

// Enclosure of |center| as an interval (exact doubles in, outward rounding).
Iv center_abs(const Disk& a) {
    return bcert::sqrt(sqr(Iv(a.c.real())) + sqr(Iv(a.c.imag())));
}

} // namespace

Iv Disk::mag() const {
    Iv ca = center_abs(*this);
    double lo = (ca - Iv(r)).lo;
    double hi = (ca + Iv(r)).hi;
    return Iv(std::max(0.0, lo), hi);
}

bool Disk::contains(cdouble z) const {
    Iv dx = Iv(z.real()) - Iv(c.real());
    Iv dy = Iv(z.imag()) - Iv(c.imag());
    Iv d2 = sqr(dx) + sqr(dy);
    return d2.hi <= sqr(Iv(r)).lo;
}

Disk disk_from_box(const Iv& re, const Iv& im, double rad_extra) {
    double mre = re.mid();
    double mim = im.mid();
    Iv hw_re = max(Iv(re.hi) - Iv(mre), Iv(mre) - Iv(re.lo));
    Iv hw_im = max(Iv(im.hi) - Iv(mim), Iv(mim) - Iv(im.lo));
    Iv rad = bcert::sqrt(sqr(hw_re) + sqr(hw_im)) + Iv(rad_extra);
    check_finite(rad, "disk_from_box");
    return Disk(mre, mim, rad.hi);
}

Disk operator+(const Disk& a, const Disk& b) {
    Iv re = Iv(a.c.real()) + Iv(b.c.real());
    Iv im = Iv(a.c.imag()) + Iv(b.c.imag());
    return disk_from_box(re, im, (Iv(a.r) + Iv(b.r)).hi);
}

Disk operator-(const Disk& a, const Disk& b) {
    Iv re = Iv(a.c.real()) - Iv(b.c.real());
    Iv im = Iv(a.c.imag()) - Iv(b.c.imag());
    return disk_from_box(re, im, (Iv(a.r) + Iv(b.r)).hi);
}

Disk operator-(const Disk& a) { return Disk(-a.c, a.r); }

Disk operator*(const Disk& a, const Disk& b) {
    Iv ar = Iv(a.c.real()), ai = Iv(a.c.imag());
    Iv br = Iv(b.c.real()), bi = Iv(b.c.imag());
    Iv re = ar * br - ai * bi;
    Iv im = ar * bi + ai * br;
    // |z1| r2 + |z2| r1 + r1 r2, every factor rounded outward
    Iv rad = center_abs(a) * Iv(b.r) + center_abs(b) * Iv(a.r) + Iv(a.r) * Iv(b.r);
    return disk_from_box(re, im, rad.hi);
}

Disk reciprocal(const Disk& a) {
    Iv d2 = sqr(Iv(a.c.real())) + sqr(Iv(a.c.imag()));
    Iv den = d2 - sqr(Iv(a.r));
    if (den.lo <= 0.0)
        throw domain_error("disk_reciprocal", "cannot prove |center| > radius");
    // 1/z maps the disk onto the disk with center conj(c)/(|c|^2 - r^2),
    // radius r/(|c|^2 - r^2); this image is exact, only rounding is added.
    Iv re = Iv(a.c.real()) / den;
    Iv im = -(Iv(a.c.imag()) / den);
    Iv rad = Iv(a.r) / den;
    return disk_from_box(re, im, rad.hi);
}

Disk operator/(const Disk& a, const Disk& b) { return a * reciprocal(b); }

Disk conj(const Disk& a) { return Disk(std::conj(a.c), a.r); }

Disk hull(const Disk& a, const Disk& b) {
    Iv dre = Iv(b.c.real()) - Iv(a.c.real());
    Iv dim = Iv(b.c.imag()) - Iv(a.c.imag());
    Iv dist = bcert::sqrt(sqr(dre) + sqr(dim));
    // center of a, radius reaching past the far side of b
    Iv rad = max(Iv(a.r), dist + Iv(b.r));
    return Disk(a.c, rad.hi);
}

Disk exp(const Disk& a) {
    Iv er = bcert::exp(Iv(a.c.real()));
    Iv ci = Iv(a.c.imag());
    Iv re = er * bcert::cos(ci);
    Iv im = er * bcert::sin(ci);
    // |e^z - e^c| <= |e^c| (e^{|z-c|} - 1) <= |e^c| (e^r - 1)
    Iv growth = bcert::exp(Iv(a.r)) - Iv(1.0);
    Iv rad = Iv(er.hi) * growth;
    return disk_from_box(re, im, rad.hi);
}

Disk log(const Disk& a) {
    Iv d2 = sqr(Iv(a.c.real())) + sqr(Iv(a.c.imag()));
    Iv ca = bcert::sqrt(d2);
    if (!(ca.lo > a.r))
        throw domain_error("disk_log", "cannot prove the disk avoids zero");
    // Single-valued analytic branch on the disk (0 is excluded, the disk is
    // simply connected).  Anchored at the principal value of the center; a
    // disk crossing the negative real axis is enclosed via the continuous
    // extension across the cut, not the principal values on both sides.
    Iv lre = Iv(0.5) * bcert::log(d2);
    Iv lim;
    if (a.c.imag() == 0.0 && a.c.real() < 0.0) {
        lim = iv_pi();
    } else {
        lim = bcert::atan2(Iv(a.c.imag()), Iv(a.c.real()));
    }
    // |log z - log c| <= -ln(1 - |z-c|/|c|) <= -ln(1 - r/|c|)
    Iv q = Iv(a.r) / Iv(ca.lo);
    Iv one_minus = Iv(1.0) - q;
    if (one_minus.lo <= 0.0)
        throw domain_error("disk_log", "radius bound -ln(1 - r/|c|) diverges");
    Iv rad = -bcert::log(one_minus);
    return disk_from_box(lre, lim, rad.hi);
}

Disk power(const Disk& a, int n) {
    if (n < 0) return power(reciprocal(a), -n);
    Disk acc(1.0);
    Disk base = a;
    unsigned k = static_cast<unsigned>(n);
    while (k > 0) {
        if (k & 1u) acc = acc * base;
        base = (k >>= 1) ? base * base : base;
    }
    return acc;
}

Disk sqrt_principal(const Disk& a) {
    return exp(Disk(0.5) * log(a));
}

Disk unit_circle_arc(const Iv& a) {
    return disk_from_box(bcert::cos(a), bcert::sin(a), 0.0);
}

} // namespace bcert
