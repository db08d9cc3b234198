#include "beltrami/analytic_fn.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace bcert {

namespace {

// Nonnegative norm interval [0, ub] from any enclosure of a sup norm.
Iv norm_ub(const Iv& a) { return Iv(0.0, a.hi > 0.0 ? a.hi : 0.0); }

bool has_error_part(const FnStd& f) {
    return f.general_error.hi > 0.0 || f.higher_error.hi > 0.0;
}

// |inner.c - outer.c| + inner.r < outer.r, proven in interval arithmetic.
bool disk_interior(const Disk& inner, const Disk& outer) {
    Iv dx = Iv(inner.c.real()) - Iv(outer.c.real());
    Iv dy = Iv(inner.c.imag()) - Iv(outer.c.imag());
    Iv dist = sqrt(sqr(dx) + sqr(dy));
    return (dist + Iv(inner.r)).hi < outer.r;
}

// Center-only evaluation and derivative, for seeds and diagnostics.
cdouble eval_pt(const FnStd& f, cdouble z) {
    cdouble acc = f.poly_coeffs.back().c;
    for (int k = f.degree_bound - 1; k >= 1; --k)
        acc = f.poly_coeffs[k - 1].c + z * acc;
    return z * acc;
}

cdouble deriv_pt(const FnStd& f, cdouble z) {
    int n = f.degree_bound;
    cdouble acc = double(n) * f.poly_coeffs[n - 1].c;
    for (int k = n - 1; k >= 1; --k)
        acc = double(k) * f.poly_coeffs[k - 1].c + z * acc;
    return acc;
}

// D(f^n) over the disk z as the chain product of derivative enclosures
// along the orbit enclosure.
Disk deriv_along(const FnStd& f, const Disk& z, int n) {
    Disk w = z;
    Disk d(1.0);
    for (int i = 1; i <= n; ++i) {
        d = d * fn_deriv_disk(f, w);
        if (i < n) w = fn_eval_disk(f, w);
    }
    return d;
}

// One interval Newton step for fixed points of f^period:
//   N(Z) = mid - (f^period(mid) - mid) / (Df^period(Z) - 1).
// Any fixed point inside z lies inside the returned disk.  Throws
// domain_error when the denominator enclosure meets zero.
Disk newton_step(const FnStd& f, const Disk& z, int period) {
    Disk mid(z.c);
    Disk num = orbit(f, mid, period) - mid;
    Disk den = deriv_along(f, z, period) - 1.0;
    return mid - num / den;
}

// One verified inverse step: a disk containing the preimage under f of the
// given branch (selected by approach, an approximate preimage of w.c) with
// f(result) tracking w.
Disk inverse_step(const FnStd& f, const Disk& w, cdouble approach) {
    // Non-rigorous polish of the center preimage first.
    cdouble z0 = approach;
    for (int it = 0; it < 60; ++it) {
        cdouble d = deriv_pt(f, z0);
        if (d == cdouble(0.0)) break;
        cdouble step = (eval_pt(f, z0) - w.c) / d;
        z0 -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z0))) break;
    }
    double dmag = std::abs(deriv_pt(f, z0));
    if (dmag == 0.0)
        throw branch_error("inverse_branch",
                           "derivative vanishes at the branch seed");

    double r0 = 3.0 * (std::abs(eval_pt(f, z0) - w.c) + w.r) / dmag +
                1e-13 * (1.0 + std::abs(z0));
    for (int attempt = 0; attempt < 12; ++attempt, r0 *= 4.0) {
        Disk cand(z0, r0);
        Disk d;
        try {
            d = fn_deriv_disk(f, cand);
        } catch (const domain_error&) {
            break;  // candidate left D_rho; growing cannot help
        }
        if (!(d.mag().lo > 0.0)) {
            if (attempt == 0)
                throw branch_error("inverse_branch",
                                   "derivative enclosure meets zero near the "
                                   "branch");
            break;  // grew into a critical point
        }
        Disk n = Disk(z0) - (fn_eval_disk(f, Disk(z0)) - w) / d;
        if (disk_interior(n, cand)) return n;
    }
    throw verify_error("inverse_branch",
                       "interval Newton failed to contract on a pullback step");
}

}  // namespace

FnStd fn_from_coeffs(std::vector<Disk> coeffs, double rho) {
    if (coeffs.empty())
        throw domain_error("fn_from_coeffs", "needs at least one coefficient");
    if (!(rho > 1.0) || !std::isfinite(rho))
        throw domain_error("fn_from_coeffs", "domain radius must exceed one");
    FnStd f;
    f.degree_bound = static_cast<int>(coeffs.size());
    f.rho = rho;
    f.poly_coeffs = std::move(coeffs);
    f.general_error = Iv(0.0);
    f.higher_error = Iv(0.0);
    return f;
}

Iv fn_poly_norm(const FnStd& f) {
    Iv rho(f.rho);
    Iv s(0.0);
    for (int k = 1; k <= f.degree_bound; ++k)
        s = s + f.poly_coeffs[k - 1].mag() * pow_int(rho, k);
    return Iv(0.0, s.hi);
}

long long GoldenQuadratic::q(int n) const {
    if (n < 0 || n > 63)
        throw domain_error("golden_q", "index outside the table range");
    long long a = 1, b = 1;  // q(0), q(1)
    for (int i = 0; i < n; ++i) {
        long long t = a + b;
        a = b;
        b = t;
    }
    return a;
}

FnStd GoldenQuadratic::map(int degree_bound, double rho) const {
    if (degree_bound < 2)
        throw domain_error("golden_map", "degree bound below the polynomial "
                                         "degree");
    std::vector<Disk> coeffs(degree_bound);
    coeffs[0] = lambda;
    coeffs[1] = lambda * Disk(-0.5);
    return fn_from_coeffs(std::move(coeffs), rho);
}

GoldenQuadratic golden_quadratic() {
    GoldenQuadratic g;
    g.theta = (sqrt(Iv(5.0)) - Iv(1.0)) * Iv(0.5);
    g.lambda = unit_circle_arc(iv_two_pi() * g.theta);
    return g;
}

FnStd fn_mul(const FnStd& a, const FnStd& b) {
    if (a.degree_bound != b.degree_bound || a.rho != b.rho)
        throw domain_error("fn_mul",
                           "operands live on different standard-set spaces");
    int n = a.degree_bound;
    Iv rho(a.rho);

    // Full polynomial product, degrees 2 .. 2N; index by degree.
    std::vector<Disk> prod(2 * n + 1);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            prod[i + j] = prod[i + j] + a.poly_coeffs[i - 1] * b.poly_coeffs[j - 1];

    FnStd out;
    out.degree_bound = n;
    out.rho = a.rho;
    out.poly_coeffs.assign(prod.begin() + 1, prod.begin() + n + 1);

    // p1 p2 = p + z^{N+1} r with deg r <= N - 1:
    // ||r||_rho <= sum_{d=N+1..2N} |prod_d| rho^{d-N-1}.
    Iv r_norm(0.0);
    for (int d = n + 1; d <= 2 * n; ++d)
        r_norm = r_norm + prod[d].mag() * pow_int(rho, d - n - 1);
    r_norm = Iv(0.0, r_norm.hi);

    Iv pa = fn_poly_norm(a), pb = fn_poly_norm(b);
    Iv ga = norm_ub(a.general_error), gb = norm_ub(b.general_error);
    Iv ha = norm_ub(a.higher_error), hb = norm_ub(b.higher_error);

    // (f1 f2)(z) = p(z) + z [p1 g2 + g1 p2 + z g1 g2]
    //            + z^{N+1} [r + z^{N+1} h1 h2 + (p1 + z g1) h2 + h1 (p2 + z g2)]
    Iv g_out = pa * gb + ga * pb + rho * ga * gb;
    Iv h_out = r_norm + pow_int(rho, n + 1) * ha * hb + (pa + rho * ga) * hb +
               ha * (pb + rho * gb);
    out.general_error = Iv(0.0, g_out.hi);
    out.higher_error = Iv(0.0, h_out.hi);
    return out;
}

Disk fn_eval_disk(const FnStd& f, const Disk& z) {
    Iv m = z.mag();
    bool err = has_error_part(f);
    if (m.hi > f.rho || (err && m.hi == f.rho))
        throw domain_error("fn_eval_disk", "argument leaves the domain disk");

    Disk acc = f.poly_coeffs[f.degree_bound - 1];
    for (int k = f.degree_bound - 1; k >= 1; --k)
        acc = f.poly_coeffs[k - 1] + z * acc;
    Disk val = z * acc;

    if (err) {
        Iv mh(m.hi);
        Iv pad = mh * Iv(f.general_error.hi) +
                 pow_int(mh, f.degree_bound + 1) * Iv(f.higher_error.hi);
        val.r = (Iv(val.r) + Iv(pad.hi)).hi;
    }
    return val;
}

Disk fn_deriv_disk(const FnStd& f, const Disk& z) {
    if (has_error_part(f))
        throw domain_error("fn_deriv_disk",
                           "derivative is only available for sets with zero "
                           "error terms");
    if (z.mag().hi > f.rho)
        throw domain_error("fn_deriv_disk", "argument leaves the domain disk");
    int n = f.degree_bound;
    Disk acc = Disk(double(n)) * f.poly_coeffs[n - 1];
    for (int k = n - 1; k >= 1; --k)
        acc = Disk(double(k)) * f.poly_coeffs[k - 1] + z * acc;
    return acc;
}

Disk orbit(const FnStd& f, const Disk& z, int n) {
    if (n < 0) throw domain_error("orbit", "negative iterate count");
    Disk w = z;
    for (int i = 1; i <= n; ++i) {
        try {
            w = fn_eval_disk(f, w);
        } catch (const domain_error&) {
            // The point that left the domain is the previous iterate: its
            // value is what can no longer be fed to the map.
            throw domain_error("orbit",
                               "orbit leaves the domain disk at iterate " +
                                   std::to_string(i - 1));
        }
    }
    return w;
}

cdouble newton_seed(const FnStd& f, int period, cdouble guess) {
    cdouble z = guess;
    for (int it = 0; it < 80; ++it) {
        cdouble w = z, d(1.0);
        for (int j = 0; j < period; ++j) {
            d *= deriv_pt(f, w);
            w = eval_pt(f, w);
        }
        cdouble den = d - cdouble(1.0);
        if (den == cdouble(0.0)) break;
        cdouble step = (w - z) / den;
        z -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z))) break;
    }
    return z;
}

PeriodicPoint periodic_point(const FnStd& f, int period, const Disk& seed) {
    if (period < 1) throw domain_error("periodic_point", "period must be >= 1");

    Disk z;
    try {
        z = newton_step(f, seed, period);
    } catch (const domain_error&) {
        throw verify_error("periodic_point",
                           "Newton denominator enclosure meets zero on the "
                           "seed");
    }
    // First step inside the interior of the seed proves there is exactly one
    // fixed point of f^period in the seed and that it lies in z.
    if (!disk_interior(z, seed))
        throw verify_error("periodic_point",
                           "interval Newton step does not contract into the "
                           "seed");
    for (int round = 0; round < 60; ++round) {
        Disk next;
        try {
            next = newton_step(f, z, period);
        } catch (const domain_error&) {
            break;
        }
        if (!disk_interior(next, z) || !(next.r < z.r * 0.9)) break;
        z = next;
    }

    Disk mult = deriv_along(f, z, period);
    if (!(mult.mag().lo > 1.0))
        throw verify_error("periodic_point",
                           "multiplier enclosure does not stay outside the "
                           "unit circle");
    return {z, mult};
}

Disk inverse_branch(const FnStd& f, int n, const Disk& w, const Disk& seed) {
    if (n < 1) throw domain_error("inverse_branch", "needs n >= 1");

    // Forward orbit of the seed center picks the branch at every level.
    std::vector<cdouble> chain(n);
    cdouble p = seed.c;
    for (int j = 0; j < n; ++j) {
        chain[j] = p;
        p = eval_pt(f, p);
    }

    Disk cur = w;
    for (int j = n - 1; j >= 0; --j) cur = inverse_step(f, cur, chain[j]);

    // Round trip sanity.  The result holds the branch value of every w in w,
    // so the forward enclosure must cover the target disk (wrapping only
    // fattens it further); a wrong branch would surface as a forward image
    // centered far from the target.
    Disk fwd = orbit(f, cur, n);
    Iv dx = Iv(fwd.c.real()) - Iv(w.c.real());
    Iv dy = Iv(fwd.c.imag()) - Iv(w.c.imag());
    Iv dist = sqrt(sqr(dx) + sqr(dy));
    bool covers =
        (dist + Iv(w.r)).hi <= fwd.r + 1e-12 * (1.0 + std::abs(w.c) + fwd.r);
    bool centered = dist.lo <= w.r + 1e-9 * (1.0 + std::abs(w.c));
    if (!covers || !centered)
        throw verify_error("inverse_branch",
                           "round trip failed to land back on the target disk");
    return cur;
}

}  // namespace bcert
