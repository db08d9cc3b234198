#pragma once

#include "beltrami/disk.hpp"
#include "beltrami/interval.hpp"

namespace bcert {

// Validated enclosures for the exponential integral combination
//
//     ExpEi(z) := -e^{-z} E1(-z)
//               = e^{-z} ( euler_gamma + ln(-z) + sum_{k>=1} z^k / (k k!) )
//
// with the principal branch of ln, so the cut sits on the nonnegative real
// axis.  Points on the cut evaluate to the real principal value (the
// Cauchy-principal-value integral).  Two evaluation regimes exist:
//
//   near_zero(n):   the series above truncated at k = n, remainder
//                   |E_n(z)| <= e^{|z|} |z|^{n+1} / ((n+1)! (n+1)),
//                   convergent everywhere but only numerically useful
//                   for moderate |z|;
//
//   asymptotic(n):  ExpEi(z) ~ sum_{i=0..n} i! / z^{i+1}, remainder
//                   |R_n(z)| <= [eta(Re z)(|z| - |Im z|) + 1] (n+1)! / |z|^{n+1}
//                   with eta the 0/1 step function.  For Re z <= 0 this is
//                   the classical sector bound and holds at every |z|; for
//                   Re z > 0 it is used only at large |z|.
//
// The (|z| - |Im z|) factor is clamped at >= 0: pointwise it is already
// nonnegative, the clamp only trims the outward-rounded interval difference.

enum class ExpEiKind { near_zero, asymptotic };

struct ExpEiRegime {
    ExpEiKind kind;
    int terms;         // truncation order n of the chosen series
    double threshold;  // |center| cutover between the regimes
};

// Regime the enclosure below selects for this argument:
// near_zero when |center(z)| < threshold, asymptotic otherwise.
ExpEiRegime expei_regime(const Disk& z);

// Enclosure of ExpEi over the whole disk.  The disk must either avoid the
// nonnegative real axis or be a single point on the positive axis (which
// evaluates to the principal value); a positive-radius disk meeting the cut
// throws domain error.  When every sound route overflows or the remainder
// cannot reach a usable width, throws precision error.
Disk expei_enclosure(const Disk& z);

// The two regimes individually, truncated at order n.  Preconditions as
// above; the asymptotic form additionally needs |center| > radius.  Exposed
// so the regimes can be cross-checked against each other on overlap bands.
Disk expei_near_zero(const Disk& z, int n);
Disk expei_asymptotic(const Disk& z, int n);

// Enclosure of ExpEi(i y) for y in the interval (0 must not be contained).
// Keeps the real part exactly zero through the evaluation, which a round
// disk argument cannot (it always pokes into Re z > 0 where the small-|z|
// asymptotic bound is not certified), so purely imaginary arguments get the
// classical remainder at every magnitude.  Picks whichever regime yields
// the smaller radius.
Disk expei_imag_axis(const Iv& y);

// Enclosure of the zeta tail sum_{i > m} i^{-n} for integer m >= 1, n >= 2:
// an explicit partial sum plus the integral bracket
//   [ 1/((n-1)(m+K+1)^{n-1}),  1/((n-1)(m+K)^{n-1}) ]
// for the remainder past the last explicit term.
Iv zeta_remainder(int m, int n);

} // namespace bcert
