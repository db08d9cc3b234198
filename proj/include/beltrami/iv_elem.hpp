#pragma once

#include "beltrami/interval.hpp"

namespace bcert {

// Elementary functions with validated enclosures.  Each is built from
// argument reduction against the frozen constant enclosures plus a Taylor
// or atanh-type series whose truncation error is added to the result, so
// no libm accuracy assumption beyond correctly rounded +,-,*,/,sqrt enters
// the certified path.

Iv exp(const Iv& a);
Iv log(const Iv& a);               // a.lo > 0 required
Iv sin(const Iv& a);
Iv cos(const Iv& a);
Iv atan(const Iv& a);
// Argument of the point/box (x,y), principal value in (-pi, pi].
// The box must not meet the closed negative real axis when it straddles
// y = 0; that case throws branch_error.
Iv atan2(const Iv& y, const Iv& x);
Iv pow(const Iv& base, const Iv& expo);   // base.lo > 0 required
Iv cot(const Iv& a);               // sin(a) must not contain zero

} // namespace bcert
