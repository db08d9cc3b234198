#pragma once

#include <string>
#include <vector>

#include "beltrami/analytic_fn.hpp"
#include "beltrami/disk.hpp"
#include "beltrami/interval.hpp"

namespace bcert {

// Geometry of the fundamental crescent of the golden quadratic at period 3:
// the two-parabola boundary curve lambda_n, the straightening coordinate
// tau^{-1} onto a horizontal strip, the interpolating annulus map g_n, a
// rigorous disjointness certificate for the curve against its pullback, and
// the inner/outer completions of the boundary with certified dilatation
// sup-bounds.
//
// Letter renames against the usual write-up (the letters are overloaded
// there): parabola constants A..E are P_A..P_E here; xi always means the
// repelling multiplier (the radial shift function of the annulus data gets
// its own name in the coefficient module); nu_exp is the completion
// exponent on either side (real interval on the inner side, i log xi on
// the outer side).

struct CrescentConfig {
    int n = 3;                // renormalization depth; constants ship for 3
    double slope = -1.7;      // common tangent slope at the parabola join
    double r_inner = 3.1e-3;  // inner parameter cutoff
    double r_outer = 9.8e3;   // outer parameter cutoff

    // Parabola constants, real-valued enclosures.  First piece
    // y = P_A x^2 + P_B x runs from 0 to the join point; second piece
    // x = P_C y^2 + P_D y + P_E runs from the join point to the far anchor.
    Disk P_A, P_B, P_C, P_D, P_E;

    // Strip normalization tau(u) = far_anchor / (1 - e^{i tau_a u + tau_b}),
    // chosen so that tau^{-1}(strip_origin) = 0 and |tau^{-1}(join_point)|
    // = 1.  tau_a is real and positive.
    Disk tau_a, tau_b;

    Disk join_point;    // 11th iterate of the critical point; parabola join
    Disk strip_origin;  // 8th iterate of the critical point; tau^{-1} = 0
    Disk far_anchor;    // repelling period-3 point the curve limits into
    FnStd map;          // the quadratic itself as a degree-2 standard set
};

// Builds the period-3 configuration: iterates the critical point for the
// anchor disks, verifies the repelling period-3 point, solves the five
// linear incidence/tangency conditions for P_A..P_E by interval
// elimination, and solves the two normalization conditions for tau_a,
// tau_b.  Throws domain_error on a bad cutoff range, verify_error if an
// anchor or normalization check fails.
CrescentConfig make_crescent_config(double r_inner = 3.1e-3,
                                    double r_outer = 9.8e3);

// Chord-length parameter T(r) = L sqrt(r) / (sqrt(r) + 1), L the total
// span; strictly increasing, T(0) = 0, T -> L as r -> infinity.  r >= 0.
Iv crescent_T(const CrescentConfig& cfg, const Iv& r);
Iv crescent_span(const CrescentConfig& cfg);     // L = F + G
Iv crescent_r_tilde(const CrescentConfig& cfg);  // join parameter (F/G)^2

// Boundary point enclosure over the parameter interval r >= 0.  First
// parabola for parameters up to r_tilde, second beyond; enclosures
// straddling r_tilde hull both pieces.
Disk lambda_n(const CrescentConfig& cfg, const Iv& r);

// Enclosure of d lambda_n / dr over r, r > 0.  The parametrization speed
// jumps at the join (the tangent direction does not), so straddling
// enclosures hull both one-sided derivatives; a single parameter value is
// harmless under the essential suprema this feeds.
Disk lambda_n_deriv(const CrescentConfig& cfg, const Iv& r);

// Strip coordinate maps.  tau_fwd(u) = far_anchor / (1 - e^{i a u + b}).
// tau_inv(z) = (log(1 - far_anchor/z) - b) / (i a), with the log branch cut
// along the non-negative real axis of the argument 1 - far_anchor/z; the
// enclosure of that argument must avoid the cut, and z must avoid 0 and
// far_anchor, else domain_error.
Disk tau_fwd(const CrescentConfig& cfg, const Disk& u);
Disk tau_inv(const CrescentConfig& cfg, const Disk& z);
// Derivative of tau_inv: far_anchor / (i a  z (z - far_anchor)).
Disk tau_inv_deriv(const CrescentConfig& cfg, const Disk& z);

// Verified pullback lambda_n(r) under the branch of f^{-3} that maps the
// boundary curve to its preimage arc.  The branch seed comes from float
// Newton continuation started at the exact known pair (r_tilde,
// strip_origin); the result disk is certified by inverse_branch.
Disk lambda_n_preimage(const CrescentConfig& cfg, const Iv& r);

// Interpolation between the pullback curve and the boundary curve in strip
// coordinates:
//   g_n(r, phi) = W tau^{-1}(f^{-3}(lambda_n(r)))
//               + (1 - W) tau^{-1}(lambda_n(r)),
//   W = eta(-phi) + phi/(2 pi),   eta(x) = 1 for x >= 0 else 0,
// for -pi < phi <= pi, r > 0.  Enclosures of phi straddling 0 hull both
// weight branches (the deck jump of the interpolant lives at phi = 0).
Disk g_n_eval(const CrescentConfig& cfg, const Iv& r, const Iv& phi);

struct EmptyIntersectionReport {
    int balls = 0;
    double min_separation = 0.0;   // smallest certified disk gap found
    double max_cover_radius = 0.0;
};

// Certifies that the pullback of the boundary arc misses the arc itself.
// Covers lambda_n([r_inner, r_outer]) with n_balls parameter slabs
// equidistributed in sampled arclength, encloses the verified branch
// pullback of every cover disk, and proves each pullback disk disjoint
// from every cover disk.  Consecutive cover disks share an endpoint
// parameter, so the chain overlaps by construction; a gap still throws
// verify_error, as does any pullback/cover contact (naming the index
// pair).  threads > 1 runs the pullback verifications chunked in parallel;
// the report is identical for every thread count.  A nonempty csv_path
// writes all disks as "index,center_re,center_im,radius,kind" rows with
// kind in {boundary, preimage}.
EmptyIntersectionReport verify_empty_intersection(
    const CrescentConfig& cfg, int n_balls, int threads = 1,
    const std::string& csv_path = {});

// Inner completion: near the indifferent fixed point the boundary continues
// as the linearizer image of the straight segment d t, t in (0, 1], and its
// pullback as the image of lambda^{-3} d t.  Everything needed to evaluate
// the completed interpolant lives in the linearizer series.
struct SiegelCompletion {
    std::vector<Disk> coeffs;  // linearizer Taylor coefficients; coeffs[1] = 1
    Iv s;           // assumed validated lower bound on the conformal radius
    double rho_small = 0.0;  // |d|
    Iv koebe_c;     // distortion constant 1 / (s (1 - rho_small/s)^3)
    Disk d;         // linearizer preimage of lambda_n(r_inner)
    Iv nu_exp;      // radial exponent: the golden fractional part 2 - 3 theta
    Disk lam_inv_q; // lambda^{-3}, the pullback factor in linearizing coords
};

// Outer completion: near the repelling period-3 point the boundary
// continues as the (shifted) linearizer image of a logarithmic spiral
// (d - far_anchor) e^{(nu/2pi) log(r/R)} and its pullback as the image of
// the spiral divided by xi.
struct KoenigsCompletion {
    Disk xi;                   // repelling multiplier of f^3 at far_anchor
    std::vector<Disk> coeffs;  // linearizer Taylor coefficients; coeffs[1] = 1
    Iv s;                      // certified univalence radius
    double rho_large = 0.0;    // |d - far_anchor|
    Iv c1, c2;                 // distortion constants 1 / (s (1 - rho/s)^3)
    Disk d;                    // linearizer preimage of lambda_n(r_outer)
    Disk nu_exp;               // spiral exponent i log xi, negative real part
    double cbar = 0.0;         // inverse-step contraction constant
    Iv majorant;               // M with |coeffs[k]| <= M for every k
};

struct CompletionData {
    SiegelCompletion siegel;
    KoenigsCompletion koenigs;
    Disk far_anchor;
};

// Builds both completions.  Inner side: linearizer coefficients from the
// conjugacy recursion to inner_terms, d by interval Newton on the series
// with its tail, distortion constant from s_inner.  s_inner is the one
// assumed constant of the module: a configurable lower bound on the
// conformal radius of the linearization disk (default 0.60 against an
// oracle estimate of 0.67); every tail bound keys off it.  Outer side:
// everything is certified internally (the linearizer is entire), including
// the coefficient majorant, the univalence radius, the contraction window
// of cbar, and d via the multiplier-power limit with a geometric tail.
// Throws domain_error on nonsense arguments, verify_error if any internal
// certification fails.
CompletionData make_completion_data(const CrescentConfig& cfg,
                                    double s_inner = 0.60,
                                    int inner_terms = 80,
                                    int outer_terms = 60);

// Certified enclosure [largest point sample, sup bound] for the essential
// supremum of the completed interpolant's dilatation over 0 < r <= r_inner
// (inner) and r >= r_outer (outer).  The bound is a maximum of per-piece
// enclosures: the inner routine splits t in [0, 1] into `pieces`
// subintervals, the outer routine splits log(r/R) geometrically plus one
// closing piece for the spiral tail into the anchor.  Throws domain_error
// if rho >= s on the queried side.
Iv completion_small_r_sup(const CompletionData& cd, int pieces = 128);
Iv completion_large_r_sup(const CompletionData& cd, int pieces = 24);

}  // namespace bcert
