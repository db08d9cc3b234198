#pragma once

#include <complex>

#include "beltrami/interval.hpp"

namespace bcert {

using cdouble = std::complex<double>;

// Closed complex disk B[center, radius].  Containment soundness mirrors Iv:
// the result disk of an operation contains f(z) for every z drawn from the
// operand disks.  Centers are plain doubles; all rounding slack of center
// arithmetic is folded into the radius.
struct Disk {
    cdouble c;
    double r;

    Disk() : c(0.0, 0.0), r(0.0) {}
    explicit Disk(double x) : c(x, 0.0), r(0.0) {}
    explicit Disk(cdouble z) : c(z), r(0.0) {}
    Disk(cdouble z, double rad) : c(z), r(rad) {}
    Disk(double re, double im, double rad) : c(re, im), r(rad) {}

    Iv real() const { return Iv(c.real()) + Iv(-r, r); }
    Iv imag() const { return Iv(c.imag()) + Iv(-r, r); }
    Iv mag() const;                    // enclosure of |z| over the disk
    bool contains(cdouble z) const;    // rigorous: |z - c| <= r proven in Iv
    bool is_point() const { return r == 0.0; }
};

// Roll a rectangular enclosure (re x im box) plus extra radius into a disk.
Disk disk_from_box(const Iv& re, const Iv& im, double rad_extra);

Disk operator+(const Disk& a, const Disk& b);
Disk operator-(const Disk& a, const Disk& b);
Disk operator-(const Disk& a);
Disk operator*(const Disk& a, const Disk& b);
Disk operator/(const Disk& a, const Disk& b);

inline Disk operator+(const Disk& a, double s) { return a + Disk(s); }
inline Disk operator-(const Disk& a, double s) { return a - Disk(s); }
inline Disk operator*(const Disk& a, double s) { return a * Disk(s); }
inline Disk operator/(const Disk& a, double s) { return a / Disk(s); }
inline Disk operator+(double s, const Disk& a) { return Disk(s) + a; }
inline Disk operator-(double s, const Disk& a) { return Disk(s) - a; }
inline Disk operator*(double s, const Disk& a) { return Disk(s) * a; }
inline Disk operator/(double s, const Disk& a) { return Disk(s) / a; }
inline Disk operator+(const Disk& a, cdouble s) { return a + Disk(s); }
inline Disk operator*(const Disk& a, cdouble s) { return a * Disk(s); }
inline Disk operator*(cdouble s, const Disk& a) { return Disk(s) * a; }

Disk conj(const Disk& a);
Disk hull(const Disk& a, const Disk& b);

// Exact Moebius image of the disk under 1/z (circles map to circles);
// requires |center| > radius, else domain error.
Disk reciprocal(const Disk& a);

Disk exp(const Disk& a);
// Analytic branch of log over the disk, anchored at the principal value of
// the center (centers on the negative real axis anchor at +i pi).  Disks
// meeting the negative real axis get the continuous extension across it.
// The disk must provably avoid zero, else domain error.
Disk log(const Disk& a);
Disk power(const Disk& a, int n);
Disk sqrt_principal(const Disk& a);    // principal square root, same cut

// Enclosure of e^{i t} for t in the interval a.
Disk unit_circle_arc(const Iv& a);

} // namespace bcert
