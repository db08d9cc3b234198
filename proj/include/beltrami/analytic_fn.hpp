#pragma once

#include <complex>
#include <vector>

#include "beltrami/disk.hpp"
#include "beltrami/errors.hpp"
#include "beltrami/interval.hpp"

namespace bcert {

// A standard set of analytic functions on the disk D_rho = {|z| < rho} that
// fix the origin:
//
//   { f : f(z) = sum_{k=1..N} c_k z^k  +  z g(z)  +  z^{N+1} h(z) }
//
// where c_k ranges over poly_coeffs[k-1], g and h are analytic on D_rho with
// sup norms ||g||_rho in general_error and ||h||_rho in higher_error.  Every
// member fixes 0.  The error parts carry mass the polynomial representation
// cannot: general_error absorbs low-order slack, higher_error absorbs the
// degree > N tail.  A plain polynomial has both intervals equal to [0, 0],
// and operations preserve that exactly.
struct FnStd {
    int degree_bound = 0;           // N >= 1
    double rho = 2.0;               // domain radius, > 1
    std::vector<Disk> poly_coeffs;  // c_1 .. c_N, size == degree_bound
    Iv general_error;               // ||g||_rho, subset of [0, inf)
    Iv higher_error;                // ||h||_rho, subset of [0, inf)
};

// Polynomial standard set with zero error terms; degree bound = coeffs.size().
// coeffs[k-1] is the coefficient of z^k.  Throws domain_error unless
// rho > 1 and coeffs is nonempty.
FnStd fn_from_coeffs(std::vector<Disk> coeffs, double rho);

// Upper bound for sup_{|z| <= rho} |p(z)| of the polynomial part, as the
// interval [0, sum_k mag(c_k).hi * rho^k].
Iv fn_poly_norm(const FnStd& f);

// Golden mean rotation data and the quadratic family member built on it.
struct GoldenQuadratic {
    Iv theta;     // (sqrt 5 - 1) / 2
    Disk lambda;  // e^{2 pi i theta}

    // Continued fraction denominators of theta: q(0) = q(1) = 1,
    // q(n) = q(n-1) + q(n-2), so q(2) = 2, q(3) = 3, q(5) = 8.
    // Valid for 0 <= n <= 63.
    long long q(int n) const;

    // f(z) = lambda z (1 - z/2) as a standard set: c_1 = lambda,
    // c_2 = -lambda/2, zero error terms.  degree_bound >= 2.
    FnStd map(int degree_bound = 32, double rho = 8.0) const;
};

GoldenQuadratic golden_quadratic();

// Product of two standard sets over the same disk with the same degree bound.
// Writing f_i = p_i + z g_i + z^{N+1} h_i and p_1 p_2 = p + z^{N+1} r with
// deg p <= N, the product decomposes exactly as
//   p(z) + z [p_1 g_2 + g_1 p_2 + z g_1 g_2]
//        + z^{N+1} [r + z^{N+1} h_1 h_2 + (p_1 + z g_1) h_2 + h_1 (p_2 + z g_2)]
// and the two brackets are bounded through sup norms on D_rho.  Zero error
// inputs whose polynomial product has degree <= N come out with zero errors.
FnStd fn_mul(const FnStd& a, const FnStd& b);

// Encloses { f(z) : f in the set, z in Z }.  Requires Z inside D_rho: for a
// set with zero error terms |z| <= rho is enough, otherwise |z| < rho is
// required since the error norms are sup norms over the open disk.  Horner
// on the coefficient disks, then the radius is padded by
// |z| sup I_g + |z|^{N+1} sup I_h.  (Composition and evaluation both route
// through this Horner-with-padding scheme.)
Disk fn_eval_disk(const FnStd& f, const Disk& z);

// Encloses { f'(z) : f in the set, z in Z } for polynomial members only.
// Sets with nonzero error terms are refused (their derivative is not
// controlled by the stored data).
Disk fn_deriv_disk(const FnStd& f, const Disk& z);

// n-fold iterate enclosure f^n(Z).  If some intermediate disk leaves D_rho
// the thrown domain_error names the first escaping iterate in what().
Disk orbit(const FnStd& f, const Disk& z, int n);

// Non-rigorous double-precision Newton refinement of a fixed point of f^period
// starting from guess.  Used to produce seeds for the verified routines.
std::complex<double> newton_seed(const FnStd& f, int period,
                                 std::complex<double> guess);

struct PeriodicPoint {
    Disk point;       // contains exactly one fixed point of f^period
    Disk multiplier;  // Df^period over the point disk, |multiplier| > 1 verified
};

// Verified repelling periodic point inside seed.  Runs the interval Newton
// operator N(Z) = mid(Z) - (f^period(mid) - mid) / (Df^period(Z) - 1); the
// first step must land in the interior of the seed (existence + uniqueness),
// then the disk is refined until the radius stalls.  Throws verify_error if
// Newton fails to contract or the multiplier enclosure does not stay
// strictly outside the unit circle.
PeriodicPoint periodic_point(const FnStd& f, int period, const Disk& seed);

// Verified branch of f^{-n} on the disk W, selected by the forward orbit of
// seed: the returned disk Z satisfies f^n(Z) meets W and Z tracks the branch
// with f^j(Z) near f^j(seed).  The pullback runs one step at a time, each
// step its own interval Newton contraction.  Throws branch_error if a
// derivative enclosure along the way meets zero (branch point), verify_error
// if a contraction or the final round trip fails.
Disk inverse_branch(const FnStd& f, int n, const Disk& w, const Disk& seed);

}  // namespace bcert
