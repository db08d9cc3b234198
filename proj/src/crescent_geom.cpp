#include "beltrami/crescent_geom.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "beltrami/errors.hpp"
#include "beltrami/iv_elem.hpp"

namespace bcert {

namespace {

Disk as_disk(const Iv& re) { return disk_from_box(re, Iv(0.0), 0.0); }
Disk as_disk(const Iv& re, const Iv& im) { return disk_from_box(re, im, 0.0); }

// Multiplication by i is an exact rotation of the center; the radius is
// unchanged.
Disk i_times(const Disk& a) {
    return Disk(cdouble(-a.c.imag(), a.c.real()), a.r);
}

bool contains_zero(const Iv& a) { return a.lo <= 0.0 && a.hi >= 0.0; }

Iv center_dist(const Disk& a, const Disk& b) {
    Iv dx = Iv(a.c.real()) - Iv(b.c.real());
    Iv dy = Iv(a.c.imag()) - Iv(b.c.imag());
    return sqrt(sqr(dx) + sqr(dy));
}

// a proven inside the open disk b.
bool disk_inside(const Disk& a, const Disk& b) {
    return (center_dist(a, b) + Iv(a.r)).hi < b.r;
}

// log with the branch cut moved to the non-negative real axis:
// log_plus(w) = Log(-w) + i pi, analytic and single-valued on C \ [0, inf),
// with imaginary part in (0, 2 pi).  The enclosure must stay off the cut.
Disk log_plus(const Disk& w) {
    Iv d2 = w.c.real() >= 0.0 ? sqr(Iv(w.c.imag()))
                              : sqr(Iv(w.c.real())) + sqr(Iv(w.c.imag()));
    if (!(d2.lo > sqr(Iv(w.r)).hi))
        throw domain_error("log_plus",
                           "enclosure meets the branch cut on [0, inf)");
    return log(-w) + as_disk(Iv(0.0), iv_pi());
}

// Double-precision evaluation of the polynomial part at its coefficient
// centers, and the derivative; the float scaffolding for branch seeds.
cdouble f_pt(const FnStd& f, cdouble z) {
    cdouble acc(0.0, 0.0);
    for (int k = f.degree_bound; k >= 1; --k) acc = acc * z + f.poly_coeffs[k - 1].c;
    return acc * z;
}

cdouble df_pt(const FnStd& f, cdouble z) {
    cdouble acc(0.0, 0.0);
    for (int k = f.degree_bound; k >= 1; --k)
        acc = acc * z + static_cast<double>(k) * f.poly_coeffs[k - 1].c;
    return acc;
}

bool newton_pullback(const FnStd& f, cdouble target, cdouble& u) {
    for (int it = 0; it < 60; ++it) {
        cdouble z0 = u, z1 = f_pt(f, z0), z2 = f_pt(f, z1);
        cdouble val = f_pt(f, z2) - target;
        if (std::abs(val) <= 1e-13 * (1.0 + std::abs(target))) return true;
        cdouble der = df_pt(f, z2) * df_pt(f, z1) * df_pt(f, z0);
        if (!(std::abs(der) > 1e-30)) return false;
        u -= val / der;
        if (!std::isfinite(u.real()) || !std::isfinite(u.imag())) return false;
    }
    return false;
}

// Float continuation of the f^{-3} pullback seed along the boundary curve
// from parameter r_from (seed u) to r_to, stepping in log r so that each
// Newton target moves at most `cap` in the plane.  Failures void the seed
// for the verified routines, hence verify_error.
cdouble continue_seed(const CrescentConfig& cfg, double r_from, cdouble u,
                      double r_to) {
    const double cap = 0.02;
    double l = std::log(r_from);
    const double lt = std::log(r_to);
    cdouble target = lambda_n(cfg, Iv(std::exp(l))).c;
    double dl_max = 0.25;
    while (l != lt) {
        double dl = std::clamp(lt - l, -dl_max, dl_max);
        double ln = (std::abs(lt - l) <= dl_max) ? lt : l + dl;
        cdouble next = lambda_n(cfg, Iv(std::exp(ln))).c;
        double moved = std::abs(next - target);
        if (moved > cap) {
            dl_max *= 0.5;
            if (dl_max < 1e-9)
                throw verify_error("pullback_seed",
                                   "continuation step collapsed");
            continue;
        }
        if (!newton_pullback(cfg.map, next, u))
            throw verify_error("pullback_seed",
                               "float Newton lost the branch");
        l = ln;
        target = next;
        if (moved < cap / 3.0 && dl_max < 0.5) dl_max *= 1.4;
    }
    return u;
}

double mid(const Iv& a) { return 0.5 * (a.lo + a.hi); }

// First parabola as a function of the chord parameter enclosure.
Disk lambda_piece1(const CrescentConfig& cfg, const Iv& T) {
    Iv xf = cfg.join_point.real();
    Iv F = cfg.join_point.mag();
    Iv x = xf / F * T;
    Iv y = cfg.P_A.real() * sqr(x) + cfg.P_B.real() * x;
    return as_disk(x, y);
}

// Second parabola; the chord parameter runs from F at the join to L = F + G
// at the far anchor.
Disk lambda_piece2(const CrescentConfig& cfg, const Iv& T) {
    Iv yf = cfg.join_point.imag();
    Iv ya = cfg.far_anchor.imag();
    Iv F = cfg.join_point.mag();
    Iv G = (cfg.far_anchor - cfg.join_point).mag();
    Iv y = (yf * ((F + G) - T) + ya * (T - F)) / G;
    Iv x = cfg.P_C.real() * sqr(y) + cfg.P_D.real() * y + cfg.P_E.real();
    return as_disk(x, y);
}

Disk deriv_piece1(const CrescentConfig& cfg, const Iv& T, const Iv& Tp) {
    Iv xf = cfg.join_point.real();
    Iv F = cfg.join_point.mag();
    Iv x = xf / F * T;
    Iv dx = xf / F * Tp;
    Iv dy = (2.0 * cfg.P_A.real() * x + cfg.P_B.real()) * dx;
    return as_disk(dx, dy);
}

Disk deriv_piece2(const CrescentConfig& cfg, const Iv& T, const Iv& Tp) {
    Iv yf = cfg.join_point.imag();
    Iv ya = cfg.far_anchor.imag();
    Iv F = cfg.join_point.mag();
    Iv G = (cfg.far_anchor - cfg.join_point).mag();
    Iv y = (yf * ((F + G) - T) + ya * (T - F)) / G;
    Iv dy = (ya - yf) / G * Tp;
    Iv dx = (2.0 * cfg.P_C.real() * y + cfg.P_D.real()) * dy;
    return as_disk(dx, dy);
}

}  // namespace

CrescentConfig make_crescent_config(double r_inner, double r_outer) {
    if (!(r_inner > 0.0) || !(r_outer > r_inner) || !std::isfinite(r_outer))
        throw domain_error("crescent_config",
                           "cutoffs must satisfy 0 < r_inner < r_outer");

    GoldenQuadratic gq = golden_quadratic();
    CrescentConfig cfg;
    cfg.r_inner = r_inner;
    cfg.r_outer = r_outer;
    cfg.map = gq.map(2, 8.0);

    Disk one(1.0);
    cfg.strip_origin = orbit(cfg.map, one, 8);
    cfg.join_point = orbit(cfg.map, one, 11);

    // Far anchor: the repelling period-3 point the second parabola ends on.
    cdouble guess(1.3447303722039041, -0.9061799675483893);
    cdouble seed = newton_seed(cfg.map, 3, guess);
    cfg.far_anchor = periodic_point(cfg.map, 3, Disk(seed, 1e-5)).point;

    // Parabola constants by elimination from the five linear conditions:
    // piece one passes through 0 (built in) and the join point with tangent
    // slope m there; piece two passes through the join point and the far
    // anchor with matching tangent (dx/dy = 1/m) at the join.
    Iv xf = cfg.join_point.real(), yf = cfg.join_point.imag();
    Iv xa = cfg.far_anchor.real(), ya = cfg.far_anchor.imag();
    Iv m(cfg.slope);
    Iv m_inv = 1.0 / m;

    Iv pa = (m * xf - yf) / sqr(xf);
    Iv pb = 2.0 * yf / xf - m;
    Iv S = (xa - xf) / (ya - yf);
    Iv pc = (S - m_inv) / (ya - yf);
    Iv pd = m_inv - 2.0 * yf * pc;
    Iv pe = xf - pc * sqr(yf) - pd * yf;

    if (!contains_zero(pa * sqr(xf) + pb * xf - yf) ||
        !contains_zero(2.0 * pa * xf + pb - m) ||
        !contains_zero(pc * sqr(yf) + pd * yf + pe - xf) ||
        !contains_zero(pc * sqr(ya) + pd * ya + pe - xa) ||
        !contains_zero(2.0 * pc * yf + pd - m_inv))
        throw verify_error("crescent_config",
                           "parabola incidence/tangency residual is nonzero");

    cfg.P_A = as_disk(pa);
    cfg.P_B = as_disk(pb);
    cfg.P_C = as_disk(pc);
    cfg.P_D = as_disk(pd);
    cfg.P_E = as_disk(pe);

    // Strip normalization: tau_b places the strip origin, tau_a (real > 0)
    // scales the join point to modulus one.
    Disk w8 = one - cfg.far_anchor / cfg.strip_origin;
    Disk w11 = one - cfg.far_anchor / cfg.join_point;
    cfg.tau_b = log_plus(w8);
    Iv a_iv = (log_plus(w11) - cfg.tau_b).mag();
    if (!(a_iv.lo > 0.0))
        throw verify_error("crescent_config",
                           "degenerate strip normalization");
    cfg.tau_a = as_disk(a_iv);

    if (!tau_inv(cfg, cfg.strip_origin).contains(cdouble(0.0, 0.0)))
        throw verify_error("crescent_config",
                           "strip origin does not map to zero");
    Iv jm = tau_inv(cfg, cfg.join_point).mag();
    if (!(jm.lo <= 1.0 && jm.hi >= 1.0))
        throw verify_error("crescent_config",
                           "join point does not map to modulus one");
    return cfg;
}

Iv crescent_span(const CrescentConfig& cfg) {
    return cfg.join_point.mag() + (cfg.far_anchor - cfg.join_point).mag();
}

Iv crescent_r_tilde(const CrescentConfig& cfg) {
    Iv F = cfg.join_point.mag();
    Iv G = (cfg.far_anchor - cfg.join_point).mag();
    return sqr(F / G);
}

Iv crescent_T(const CrescentConfig& cfg, const Iv& r) {
    if (!(r.lo >= 0.0))
        throw domain_error("crescent_T", "parameter must be non-negative");
    Iv sq = sqrt(r);
    return crescent_span(cfg) * sq / (sq + 1.0);
}

Disk lambda_n(const CrescentConfig& cfg, const Iv& r) {
    if (!(r.lo >= 0.0))
        throw domain_error("lambda_n", "parameter must be non-negative");
    Iv rt = crescent_r_tilde(cfg);
    if (r.hi <= rt.lo) return lambda_piece1(cfg, crescent_T(cfg, r));
    if (r.lo >= rt.hi) return lambda_piece2(cfg, crescent_T(cfg, r));
    Disk d1 =
        lambda_piece1(cfg, crescent_T(cfg, Iv(r.lo, std::min(r.hi, rt.hi))));
    Disk d2 =
        lambda_piece2(cfg, crescent_T(cfg, Iv(std::max(r.lo, rt.lo), r.hi)));
    return hull(d1, d2);
}

Disk lambda_n_deriv(const CrescentConfig& cfg, const Iv& r) {
    if (!(r.lo > 0.0))
        throw domain_error("lambda_n_deriv", "parameter must be positive");
    Iv rt = crescent_r_tilde(cfg);
    Iv L = crescent_span(cfg);
    auto tprime = [&](const Iv& rr) {
        Iv sq = sqrt(rr);
        return L / (2.0 * sq * sqr(sq + 1.0));
    };
    if (r.hi <= rt.lo)
        return deriv_piece1(cfg, crescent_T(cfg, r), tprime(r));
    if (r.lo >= rt.hi)
        return deriv_piece2(cfg, crescent_T(cfg, r), tprime(r));
    Iv rlo(r.lo, std::min(r.hi, rt.hi));
    Iv rhi(std::max(r.lo, rt.lo), r.hi);
    return hull(deriv_piece1(cfg, crescent_T(cfg, rlo), tprime(rlo)),
                deriv_piece2(cfg, crescent_T(cfg, rhi), tprime(rhi)));
}

Disk tau_fwd(const CrescentConfig& cfg, const Disk& u) {
    Disk e = exp(i_times(cfg.tau_a * u) + cfg.tau_b);
    return cfg.far_anchor / (Disk(1.0) - e);
}

Disk tau_inv(const CrescentConfig& cfg, const Disk& z) {
    Disk w;
    try {
        w = Disk(1.0) - cfg.far_anchor / z;
    } catch (const rigor_error&) {
        throw domain_error("tau_inv", "argument enclosure meets zero");
    }
    Disk lp;
    try {
        lp = log_plus(w);
    } catch (const rigor_error&) {
        throw domain_error("tau_inv",
                           "argument meets the far anchor or the "
                           "normalization branch cut");
    }
    return (lp - cfg.tau_b) / i_times(cfg.tau_a);
}

Disk tau_inv_deriv(const CrescentConfig& cfg, const Disk& z) {
    try {
        return cfg.far_anchor /
               (i_times(cfg.tau_a) * z * (z - cfg.far_anchor));
    } catch (const rigor_error&) {
        throw domain_error("tau_inv_deriv",
                           "argument enclosure meets zero or the far anchor");
    }
}

namespace {

// Branch enclosure over a parameter interval, given the float seed at its
// geometric midpoint.  The inverse orbit passes near the critical point for
// part of the curve, where the per-step interval Newton only contracts on
// small disks; bisect the parameter range (in log r) until every piece
// certifies, and hull the pieces.
Disk pullback_enclosure(const CrescentConfig& cfg, const Iv& r, cdouble seed,
                        int depth) {
    Disk B = lambda_n(cfg, r);
    try {
        return inverse_branch(cfg.map, 3, B, Disk(seed));
    } catch (const rigor_error&) {
        double rm = std::sqrt(r.lo) * std::sqrt(r.hi);
        if (depth <= 0 || !(rm > r.lo) || !(rm < r.hi)) throw;
        cdouble sa =
            continue_seed(cfg, rm, seed, std::sqrt(r.lo) * std::sqrt(rm));
        cdouble sb =
            continue_seed(cfg, rm, seed, std::sqrt(rm) * std::sqrt(r.hi));
        return hull(pullback_enclosure(cfg, Iv(r.lo, rm), sa, depth - 1),
                    pullback_enclosure(cfg, Iv(rm, r.hi), sb, depth - 1));
    }
}

}  // namespace

Disk lambda_n_preimage(const CrescentConfig& cfg, const Iv& r) {
    if (!(r.lo > 0.0))
        throw domain_error("lambda_n_preimage", "parameter must be positive");
    double rt = mid(crescent_r_tilde(cfg));
    double rm = std::sqrt(r.lo) * std::sqrt(r.hi);
    cdouble seed = continue_seed(cfg, rt, cfg.strip_origin.c, rm);
    return pullback_enclosure(cfg, r, seed, 16);
}

Disk g_n_eval(const CrescentConfig& cfg, const Iv& r, const Iv& phi) {
    if (!(r.lo > 0.0))
        throw domain_error("g_n_eval", "radius must be positive");
    double pi_hi = iv_pi().hi;
    if (!(phi.lo > -pi_hi) || !(phi.hi <= pi_hi))
        throw domain_error("g_n_eval", "angle must lie in (-pi, pi]");
    Iv W;
    if (phi.lo > 0.0)
        W = phi / iv_two_pi();
    else if (phi.hi <= 0.0)
        W = 1.0 + phi / iv_two_pi();
    else
        // The weight jumps at phi = 0 (the step takes value one there);
        // hull both branches over their parts of the enclosure.
        W = hull(Iv(0.0, (Iv(0.0, phi.hi) / iv_two_pi()).hi),
                 1.0 + Iv(phi.lo, 0.0) / iv_two_pi());
    Disk U = tau_inv(cfg, lambda_n_preimage(cfg, r));
    Disk V = tau_inv(cfg, lambda_n(cfg, r));
    Disk Wd = as_disk(W);
    return U * Wd + V * (Disk(1.0) - Wd);
}

EmptyIntersectionReport verify_empty_intersection(const CrescentConfig& cfg,
                                                  int n_balls, int threads,
                                                  const std::string& csv_path) {
    if (n_balls < 8)
        throw domain_error("empty_intersection",
                           "needs at least 8 cover balls");
    threads = std::clamp(threads, 1, n_balls);

    // Parameter breakpoints equidistributed in sampled arclength.
    const int M = std::max(4 * n_balls, 4096);
    const double l0 = std::log(cfg.r_inner), l1 = std::log(cfg.r_outer);
    std::vector<double> lr(M + 1), cum(M + 1);
    cdouble prev(0.0, 0.0);
    for (int i = 0; i <= M; ++i) {
        lr[i] = l0 + (l1 - l0) * i / M;
        cdouble p = lambda_n(cfg, Iv(std::exp(lr[i]))).c;
        cum[i] = i ? cum[i - 1] + std::abs(p - prev) : 0.0;
        prev = p;
    }
    std::vector<double> bp(n_balls + 1);
    bp[0] = cfg.r_inner;
    bp[n_balls] = cfg.r_outer;
    int j = 0;
    for (int k = 1; k < n_balls; ++k) {
        double target = cum[M] * k / n_balls;
        while (j + 1 < M && cum[j + 1] < target) ++j;
        double seg = std::max(cum[j + 1] - cum[j], 1e-300);
        bp[k] = std::exp(lr[j] + (lr[j + 1] - lr[j]) * (target - cum[j]) / seg);
    }
    for (int k = 1; k <= n_balls; ++k)
        if (!(bp[k] > bp[k - 1]))
            throw verify_error("empty_intersection",
                               "degenerate arclength partition");

    // Cover disks; each encloses its whole sub-arc, so consecutive disks
    // share the breakpoint image and the chain is connected by construction.
    std::vector<Disk> cover(n_balls), pre(n_balls);
    double max_cov = 0.0;
    for (int k = 0; k < n_balls; ++k) {
        cover[k] = lambda_n(cfg, Iv(bp[k], bp[k + 1]));
        max_cov = std::max(max_cov, cover[k].r);
    }
    for (int k = 0; k + 1 < n_balls; ++k) {
        Iv dist = center_dist(cover[k], cover[k + 1]);
        if (dist.lo > cover[k].r + cover[k + 1].r)
            throw verify_error("empty_intersection",
                               "cover chain gap after slab " +
                                   std::to_string(k));
    }

    // Seeds by sequential continuation along slab midpoints, then the
    // verified pullbacks in parallel.
    std::vector<cdouble> seeds(n_balls);
    double prev_r = mid(crescent_r_tilde(cfg));
    cdouble prev_u = cfg.strip_origin.c;
    for (int k = 0; k < n_balls; ++k) {
        double rm = std::sqrt(bp[k]) * std::sqrt(bp[k + 1]);
        seeds[k] = continue_seed(cfg, prev_r, prev_u, rm);
        prev_r = rm;
        prev_u = seeds[k];
    }

    std::vector<std::string> fail(n_balls);
    std::atomic<bool> any_fail{false};
    auto pull_chunk = [&](int kb, int ke) {
        for (int k = kb; k < ke; ++k) {
            try {
                pre[k] = pullback_enclosure(cfg, Iv(bp[k], bp[k + 1]),
                                            seeds[k], 16);
            } catch (const rigor_error& e) {
                fail[k] = e.what();
                any_fail = true;
            }
        }
    };
    int chunk = (n_balls + threads - 1) / threads;
    {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            int kb = t * chunk, ke = std::min(n_balls, kb + chunk);
            if (kb < ke) pool.emplace_back(pull_chunk, kb, ke);
        }
        for (auto& th : pool) th.join();
    }
    if (any_fail)
        for (int k = 0; k < n_balls; ++k)
            if (!fail[k].empty())
                throw verify_error("empty_intersection",
                                   "pullback failed at slab " +
                                       std::to_string(k) + ": " + fail[k]);

    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out)
            throw domain_error("empty_intersection",
                               "cannot open csv path " + csv_path);
        out.precision(17);
        out << "index,center_re,center_im,radius,kind\n";
        for (int k = 0; k < n_balls; ++k)
            out << k << ',' << cover[k].c.real() << ',' << cover[k].c.imag()
                << ',' << cover[k].r << ",boundary\n";
        for (int k = 0; k < n_balls; ++k)
            out << k << ',' << pre[k].c.real() << ',' << pre[k].c.imag()
                << ',' << pre[k].r << ",preimage\n";
    }

    // All-pairs disjointness; the separation of a pair is a certified lower
    // bound for the gap between the two closed disks.
    std::vector<double> tmin(threads, std::numeric_limits<double>::infinity());
    std::vector<long long> tbad(threads, -1);
    auto pair_chunk = [&](int t, int kb, int ke) {
        double mn = std::numeric_limits<double>::infinity();
        long long bad = -1;
        for (int k = kb; k < ke; ++k)
            for (int i = 0; i < n_balls; ++i) {
                Iv dist = center_dist(pre[k], cover[i]);
                double gap = dist.lo - pre[k].r - cover[i].r;
                if (!(gap > 0.0)) {
                    long long code =
                        static_cast<long long>(k) * n_balls + i;
                    if (bad < 0 || code < bad) bad = code;
                }
                mn = std::min(mn, gap);
            }
        tmin[t] = mn;
        tbad[t] = bad;
    };
    {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            int kb = t * chunk, ke = std::min(n_balls, kb + chunk);
            if (kb < ke) pool.emplace_back(pair_chunk, t, kb, ke);
        }
        for (auto& th : pool) th.join();
    }
    double min_sep = std::numeric_limits<double>::infinity();
    long long bad = -1;
    for (int t = 0; t < threads; ++t) {
        min_sep = std::min(min_sep, tmin[t]);
        if (tbad[t] >= 0 && (bad < 0 || tbad[t] < bad)) bad = tbad[t];
    }
    if (bad >= 0)
        throw verify_error(
            "empty_intersection",
            "pullback disk " + std::to_string(bad / n_balls) +
                " meets cover disk " + std::to_string(bad % n_balls));

    EmptyIntersectionReport rep;
    rep.balls = n_balls;
    rep.min_separation = min_sep;
    rep.max_cover_radius = max_cov;
    return rep;
}

// ---------------------------------------------------------------------------
// Completions.

namespace {

Disk tail_disk(const Iv& t) { return Disk(cdouble(0.0, 0.0), t.hi); }

// sum_{k > K} k q^{k-1} = q^K ((K+1)(1-q) + q) / (1-q)^2 for 0 <= q < 1.
Iv tail_linear(const Iv& q, int K) {
    Iv one_m = 1.0 - q;
    if (!(one_m.lo > 0.0))
        throw domain_error("tail_linear", "ratio must stay below one");
    return pow_int(q, K) * ((static_cast<double>(K) + 1.0) * one_m + q) /
           sqr(one_m);
}

// sum_{k > K} k^2 q^{k-1} <= (K+1)^2 q^K / (1 - rr q), rr = ((K+2)/(K+1))^2,
// since k^2 <= (K+1)^2 rr^{k-K-1} for k > K.
Iv tail_quadratic(const Iv& q, int K) {
    Iv rr = sqr(Iv(static_cast<double>(K) + 2.0) /
                Iv(static_cast<double>(K) + 1.0));
    Iv rq = rr * q;
    if (!(rq.hi < 1.0))
        throw domain_error("tail_quadratic", "ratio must stay below one");
    return sqr(Iv(static_cast<double>(K) + 1.0)) * pow_int(q, K) / (1.0 - rq);
}

// Horner sum of sum_{k=2..K} w_k c_k u^{k-1} with w_k = 1, k, or k-1.
Disk series_part(const std::vector<Disk>& c, const Disk& u, int weight) {
    int K = static_cast<int>(c.size()) - 1;
    Disk acc;
    for (int k = K; k >= 2; --k) {
        double wk = weight == 0 ? 1.0
                                : (weight == 1 ? static_cast<double>(k)
                                               : static_cast<double>(k - 1));
        acc = acc * u + c[k] * wk;
    }
    return acc * u;
}

// gamma = phi(u)/u - 1, beta = phi'(u) - 1, and their difference as its own
// series (the direct sum avoids the cancellation of beta - gamma).
struct SeriesEval {
    Disk gamma, beta, bmg;
};

// Inner side: coefficient tails from the growth bound |c_k| <= k s^{1-k}
// of normalized univalent maps on the disk of radius s.
SeriesEval eval_inner_series(const SiegelCompletion& sc, const Disk& u) {
    Iv q = u.mag() / sc.s;
    if (!(q.hi < 1.0))
        throw domain_error("inner_series",
                           "argument leaves the assumed linearization disk");
    int K = static_cast<int>(sc.coeffs.size()) - 1;
    SeriesEval out;
    out.gamma = series_part(sc.coeffs, u, 0) + tail_disk(tail_linear(q, K));
    out.beta = series_part(sc.coeffs, u, 1) + tail_disk(tail_quadratic(q, K));
    out.bmg = series_part(sc.coeffs, u, 2) + tail_disk(tail_quadratic(q, K));
    return out;
}

// Outer side: the linearizer is entire with |coeffs[k]| <= majorant
// (reference radius one), so the tails are geometric.
SeriesEval eval_outer_series(const KoenigsCompletion& kc, const Disk& u) {
    Iv q = u.mag();
    if (!(q.hi < 1.0))
        throw domain_error("outer_series",
                           "argument leaves the majorant disk");
    int K = static_cast<int>(kc.coeffs.size()) - 1;
    SeriesEval out;
    Iv geo = kc.majorant * pow_int(q, K) / (1.0 - q);
    Iv lin = kc.majorant * tail_linear(q, K);
    out.gamma = series_part(kc.coeffs, u, 0) + tail_disk(geo);
    out.beta = series_part(kc.coeffs, u, 1) + tail_disk(lin);
    out.bmg = series_part(kc.coeffs, u, 2) + tail_disk(lin);
    return out;
}

// Linearizer coefficients at the indifferent fixed point from the conjugacy
// with the rotation: c_1 = 1, c_k = -(lambda/2) sum_{i+j=k} c_i c_j /
// (lambda^k - lambda).
std::vector<Disk> inner_coeffs(const Disk& lambda, int K) {
    std::vector<Disk> c(K + 1);
    c[1] = Disk(1.0);
    Disk lam_pow = lambda;
    for (int k = 2; k <= K; ++k) {
        lam_pow = lam_pow * lambda;
        Disk conv;
        for (int i = 1; i <= k - 1; ++i) conv = conv + c[i] * c[k - i];
        Disk den = lam_pow - lambda;
        if (!(den.mag().lo > 0.0))
            throw verify_error("inner_coeffs",
                               "vanishing divisor at order " +
                                   std::to_string(k));
        c[k] = Disk(-0.5) * lambda * conv / den;
    }
    return c;
}

// Interval Newton for phi(X) = target on the inner linearizer series with
// its tails; the float seed comes from Newton on the coefficient centers.
Disk inner_preimage(const std::vector<Disk>& c, const Iv& s,
                    const Disk& target) {
    int K = static_cast<int>(c.size()) - 1;
    cdouble z = target.c;
    for (int it = 0; it < 80; ++it) {
        cdouble ratio(0.0, 0.0), dphi(0.0, 0.0);
        for (int k = K; k >= 2; --k) {
            ratio = ratio * z + c[k].c;
            dphi = dphi * z + static_cast<double>(k) * c[k].c;
        }
        cdouble val = z * (1.0 + ratio * z) - target.c;
        if (std::abs(val) < 1e-15) break;
        z -= val / (1.0 + dphi * z);
    }
    auto phi_val = [&](const Disk& X) {
        Iv q = X.mag() / s;
        return X * (Disk(1.0) + series_part(c, X, 0) +
                    tail_disk(tail_linear(q, K))) -
               target;
    };
    auto phi_deriv = [&](const Disk& X) {
        Iv q = X.mag() / s;
        return Disk(1.0) + series_part(c, X, 1) +
               tail_disk(tail_quadratic(q, K));
    };
    double rad = 1e-11;
    for (int attempt = 0; attempt < 10; ++attempt, rad *= 8.0) {
        Disk X(z, rad);
        Disk N = Disk(z) - phi_val(Disk(z)) / phi_deriv(X);
        if (!disk_inside(N, X)) continue;
        for (int it = 0; it < 4; ++it) {
            Disk mid_d(N.c);
            N = mid_d - phi_val(mid_d) / phi_deriv(N);
        }
        return N;
    }
    throw verify_error("inner_preimage",
                       "interval Newton failed to contract");
}

// Taylor coefficients of w -> f^3(anchor + w) - anchor, degree 8.  The
// composed coefficient disks hold for every center drawn from the anchor
// disk; for the true fixed point the constant term is exactly zero, so the
// recentered polynomial with constant zero and these higher coefficients
// encloses the true expansion.
std::vector<Disk> shifted_iterate_coeffs(const CrescentConfig& cfg) {
    const Disk& a = cfg.far_anchor;
    const Disk& c1 = cfg.map.poly_coeffs[0];
    const Disk& c2 = cfg.map.poly_coeffs[1];
    std::vector<Disk> p{a, Disk(1.0)};
    for (int step = 0; step < 3; ++step) {
        int n = static_cast<int>(p.size());
        std::vector<Disk> sq(2 * n - 1);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) sq[i + k] = sq[i + k] + p[i] * p[k];
        std::vector<Disk> np(2 * n - 1);
        for (int k = 0; k < 2 * n - 1; ++k)
            np[k] = (k < n ? c1 * p[k] : Disk()) + c2 * sq[k];
        p = std::move(np);
    }
    if (!(p[0] - a).contains(cdouble(0.0, 0.0)))
        throw verify_error("shifted_iterate",
                           "constant term does not vanish at the anchor");
    p[0] = Disk();
    return p;
}

// Linearizer coefficients at the repelling anchor: psi_1 = 1,
// psi_k = [ft(psi(u))]_k / (xi^k - xi), with the bracket built from full
// convolution powers of the known prefix.
std::vector<Disk> outer_coeffs(const std::vector<Disk>& ft, int K) {
    const Disk& xi = ft[1];
    std::vector<Disk> psi(K + 1);
    psi[1] = Disk(1.0);
    Disk xi_pow = xi;
    for (int k = 2; k <= K; ++k) {
        xi_pow = xi_pow * xi;
        std::vector<Disk> pw(k + 1);
        for (int i = 1; i < k; ++i) pw[i] = psi[i];
        Disk rhs;
        for (int jdeg = 2; jdeg <= 8; ++jdeg) {
            std::vector<Disk> nx(k + 1);
            for (int i = 1; i <= k; ++i)
                for (int j2 = 1; i + j2 <= k; ++j2)
                    nx[i + j2] = nx[i + j2] + pw[i] * psi[j2];
            pw = std::move(nx);
            rhs = rhs + ft[jdeg] * pw[k];
        }
        Disk den = xi_pow - xi;
        if (!(den.mag().lo > 0.0))
            throw verify_error("outer_coeffs",
                               "vanishing divisor at order " +
                                   std::to_string(k));
        psi[k] = rhs / den;
    }
    return psi;
}

// |psi_k| <= 1 for every k: directly for k <= K, by induction beyond.  If
// all previous coefficients are bounded by one, the k-th convolution bracket
// is at most sum_j |ft_j| C(k-1, j-1), so it suffices that this stays below
// |xi|^k - |xi|.  Checked numerically up to 4K and by a log comparison plus
// a monotone ratio step beyond.
Iv verify_outer_majorant(const std::vector<Disk>& ft,
                         const std::vector<Disk>& psi) {
    int K = static_cast<int>(psi.size()) - 1;
    double worst = 1.0;
    for (int k = 2; k <= K; ++k)
        worst = std::max(worst, psi[k].mag().hi);
    if (!(worst <= 1.0))
        throw verify_error("outer_majorant",
                           "computed coefficients exceed the unit bound");
    Iv xm = ft[1].mag();
    Iv S(0.0);
    for (int j = 2; j <= 8; ++j) S = S + ft[j].mag();
    Iv xpow = pow_int(xm, K);
    for (int k = K + 1; k <= 4 * K; ++k) {
        xpow = xpow * xm;
        Iv lhs(0.0);
        Iv binom(1.0);
        for (int j = 2; j <= 8; ++j) {
            binom = binom * Iv(static_cast<double>(k - j + 1)) /
                    Iv(static_cast<double>(j - 1));
            lhs = lhs + ft[j].mag() * binom;
        }
        if (!(lhs.hi <= (xpow - xm).lo))
            throw verify_error("outer_majorant",
                               "induction step fails at order " +
                                   std::to_string(k));
    }
    // Beyond 4K: sum_j |ft_j| C(k-1, j-1) <= S k^7, and S k^7 + |xi| <=
    // |xi|^k at k = 4K+1 (log comparison); the gap only widens since
    // (1 + 1/k)^7 < |xi| multiplies the left side slower than the right.
    int k1 = 4 * K + 1;
    Iv lhs_log = Iv(static_cast<double>(k1)) * log(Iv(xm.lo));
    Iv rhs_log = log(S * pow_int(Iv(static_cast<double>(k1)), 7) + xm);
    Iv step = pow_int(Iv(1.0) + 1.0 / Iv(static_cast<double>(k1)), 7);
    if (!(lhs_log.lo > rhs_log.hi) || !(step.hi < xm.lo))
        throw verify_error("outer_majorant", "asymptotic comparison fails");
    return Iv(1.0);
}

// Univalence radius by the derivative test: |psi'(u) - 1| < 1 on |u| < r
// forces Re psi' > 0, hence injectivity on the convex disk.
Iv certify_outer_radius(const std::vector<Disk>& psi, const Iv& majorant) {
    int K = static_cast<int>(psi.size()) - 1;
    for (double cand : {0.70, 0.65, 0.60, 0.50, 0.40, 0.30, 0.20}) {
        Iv r(cand);
        Iv ssum = majorant * tail_linear(r, K);
        for (int k = 2; k <= K; ++k)
            ssum = ssum + static_cast<double>(k) * psi[k].mag() *
                              pow_int(r, k - 1);
        if (ssum.hi < 1.0) return Iv(cand);
    }
    throw verify_error("outer_radius",
                       "no candidate passes the derivative test");
}

// Inverse linearizer value psi^{-1}(w0) = lim xi^k ft^{-k}(w0), evaluated at
// finite k with a geometric tail.  Each inverse step is a Banach fixed point
// of G(u) = (w - sum_{j>=2} ft_j u^j) / ft_1 on the disk of radius cbar |w|.
Disk outer_inverse(const std::vector<Disk>& ft, double cbar,
                   const Disk& w0) {
    const Disk& xi = ft[1];
    const double sK = 0.05;
    Iv xm = xi.mag();
    Iv cb(cbar);
    if (!((sqr(cb)).hi < (1.0 / xm).lo) || !((1.0 / xm).hi < cb.lo))
        throw verify_error("outer_inverse",
                           "contraction window violated");
    Iv prem(1.0), gp(0.0), C2(0.0);
    for (int j2 = 2; j2 <= 8; ++j2) {
        prem = prem + ft[j2].mag() * pow_int(cb, j2) * pow_int(Iv(sK), j2 - 1);
        gp = gp + static_cast<double>(j2) * ft[j2].mag() *
                      pow_int(cb * Iv(sK), j2 - 1);
        C2 = C2 + ft[j2].mag() * pow_int(cb, j2) * pow_int(Iv(sK), j2 - 2);
    }
    if (!((prem / xm).hi <= cbar))
        throw verify_error("outer_inverse", "step stays in cbar|w| fails");
    if (!((gp / xm).hi < 1.0))
        throw verify_error("outer_inverse", "step map is not a contraction");
    C2 = C2 / xm;
    Iv qrat = xm * sqr(cb);
    if (!(qrat.hi < 1.0))
        throw verify_error("outer_inverse", "geometric tail ratio >= 1");

    // Successive approximants differ by at most |xi| C2 |w0|^2 q^k, so k
    // steps leave a tail of |xi| C2 |w0|^2 q^k / (1 - q); pick k for 1e-10.
    Iv tail = xm * C2 * sqr(w0.mag()) / (1.0 - qrat);
    int k = 0;
    while (tail.hi > 1e-10 && k < 300) {
        tail = tail * qrat;
        ++k;
    }
    if (k >= 300)
        throw verify_error("outer_inverse", "tail does not reach tolerance");

    Disk w = w0;
    for (int step = 0; step < k; ++step) {
        Iv wm = w.mag();
        if (!(wm.hi <= sK))
            throw verify_error("outer_inverse",
                               "argument left the contraction region");
        double cap = cbar * wm.hi;
        Disk U(cdouble(0.0, 0.0), cap);
        // The premises make G a contraction of the cap disk into itself,
        // so the disk image of any enclosure of the fixed point is again
        // an enclosure; iterate to shrink it toward rounding size.
        for (int it = 0; it < 8; ++it) {
            Disk num = w;
            Disk upow = U;
            for (int j2 = 2; j2 <= 8; ++j2) {
                upow = upow * U;
                num = num - ft[j2] * upow;
            }
            U = num / xi;
        }
        w = U;
    }
    return power(xi, k) * w + tail_disk(tail);
}

Iv koebe_constant(const Iv& s, double rho) {
    Iv g = 1.0 - Iv(rho) / s;
    if (!(g.lo > 0.0))
        throw domain_error("koebe_constant", "needs rho < s");
    return 1.0 / (s * pow_int(g, 3));
}

}  // namespace

CompletionData make_completion_data(const CrescentConfig& cfg, double s_inner,
                                    int inner_terms, int outer_terms) {
    if (!(s_inner > 0.0) || !(s_inner < 1.0))
        throw domain_error("completion_data",
                           "inner radius bound must lie in (0, 1)");
    if (inner_terms < 8 || outer_terms < 8)
        throw domain_error("completion_data", "needs at least 8 terms");

    GoldenQuadratic gq = golden_quadratic();
    CompletionData cd;
    cd.far_anchor = cfg.far_anchor;

    SiegelCompletion& sc = cd.siegel;
    sc.coeffs = inner_coeffs(gq.lambda, inner_terms);
    sc.s = Iv(s_inner);
    sc.nu_exp = 2.0 - 3.0 * gq.theta;
    if (!(sc.nu_exp.lo > 0.0 && sc.nu_exp.hi < 1.0))
        throw verify_error("completion_data",
                           "inner exponent outside the unit interval");
    sc.lam_inv_q = reciprocal(power(gq.lambda, 3));
    sc.d = inner_preimage(sc.coeffs, sc.s, lambda_n(cfg, Iv(cfg.r_inner)));
    sc.rho_small = sc.d.mag().hi;
    if (!(sc.rho_small < sc.s.lo))
        throw domain_error("completion_data",
                           "inner target leaves the assumed disk");
    sc.koebe_c = koebe_constant(sc.s, sc.rho_small);

    KoenigsCompletion& kc = cd.koenigs;
    std::vector<Disk> ft = shifted_iterate_coeffs(cfg);
    kc.xi = ft[1];
    if (!(kc.xi.mag().lo > 1.0))
        throw verify_error("completion_data",
                           "anchor multiplier is not repelling");
    kc.coeffs = outer_coeffs(ft, outer_terms);
    kc.majorant = verify_outer_majorant(ft, kc.coeffs);
    kc.s = certify_outer_radius(kc.coeffs, kc.majorant);
    kc.cbar = 0.4;
    Disk rel = outer_inverse(ft, kc.cbar,
                             lambda_n(cfg, Iv(cfg.r_outer)) - cfg.far_anchor);
    kc.d = cfg.far_anchor + rel;
    kc.rho_large = rel.mag().hi;
    if (!(kc.rho_large < kc.s.lo))
        throw domain_error("completion_data",
                           "outer target leaves the certified disk");
    kc.c1 = koebe_constant(kc.s, kc.rho_large);
    kc.c2 = kc.c1;
    kc.nu_exp = i_times(log(kc.xi));
    if (!(kc.nu_exp.real().hi < 0.0))
        throw verify_error("completion_data",
                           "outer exponent has non-negative real part");
    return cd;
}

namespace {

// One inner piece: the dilatation modulus bound over t in the given
// subinterval and every weight in [0, 1].  The numerator and denominator
// are affine in the weight, so endpoint enclosures bound the modulus over
// the whole segment.
Iv inner_piece_bound(const CompletionData& cd, const Iv& m_frac,
                     const Disk& r2pi, const Iv& tlo_thi) {
    const SiegelCompletion& sc = cd.siegel;
    Disk one(1.0);
    Disk nu = as_disk(sc.nu_exp);
    Disk Td = as_disk(tlo_thi);
    Disk u = sc.d * Td;
    Disk ul = sc.lam_inv_q * sc.d * Td;
    SeriesEval et = eval_inner_series(sc, u);
    SeriesEval e = eval_inner_series(sc, ul);

    Disk gt1 = one + et.gamma;
    Disk g1 = one + e.gamma;
    Disk At = Td - cd.far_anchor / (sc.d * gt1);
    Disk A = sc.lam_inv_q * Td - cd.far_anchor / (sc.d * g1);
    if (!(At.real().hi < 0.0) || !(A.real().hi < 0.0))
        throw verify_error("inner_sup",
                           "strip log argument reaches the cut");
    Disk dsig = log(-A) - log(-At);

    Disk rst = (sc.d * gt1 / (sc.d * Td * gt1 - cd.far_anchor)) * nu *
               (Td + cd.far_anchor * et.bmg / (sc.d * power(gt1, 2)));
    Disk rs = (sc.d * g1 / (sc.d * sc.lam_inv_q * Td * g1 - cd.far_anchor)) *
              nu *
              (sc.lam_inv_q * Td +
               cd.far_anchor * e.bmg / (sc.d * power(g1, 2)));

    Disk ids = i_times(dsig) * r2pi;
    Disk dm = as_disk(sc.nu_exp - m_frac);
    double num_hi = std::max((dm - rst - ids).mag().hi,
                             (dm - rs - ids).mag().hi);
    double den_lo =
        (sc.nu_exp + m_frac).lo -
        std::max((rst - ids).mag().hi, (rs - ids).mag().hi);
    if (!(den_lo > 0.0))
        throw verify_error("inner_sup",
                           "dilatation denominator reaches zero");
    return Iv(num_hi) / Iv(den_lo);
}

// One outer piece over the given spiral-argument enclosure.
Iv outer_piece_bound(const CompletionData& cd, const Disk& sp) {
    const KoenigsCompletion& kc = cd.koenigs;
    Disk one(1.0);
    Disk nu = kc.nu_exp;
    Disk spx = sp * reciprocal(kc.xi);
    SeriesEval et = eval_outer_series(kc, sp);
    SeriesEval e = eval_outer_series(kc, spx);
    Disk gt1 = one + et.gamma;
    Disk g1 = one + e.gamma;
    Disk den_t = sp * gt1 + cd.far_anchor;
    Disk den_p = spx * g1 + cd.far_anchor;
    Disk At = nu * (et.bmg / gt1 - sp * (one + et.beta) / den_t);
    Disk A = nu * (e.bmg / g1 - spx * (one + e.beta) / den_p);
    Disk sig = log((g1 / gt1) * (den_t / den_p));
    Disk isig = i_times(sig);
    double num_hi =
        std::max((At + isig).mag().hi, (A + isig).mag().hi);
    double den_lo = (nu + nu).mag().lo -
                    std::max((At - isig).mag().hi, (A - isig).mag().hi);
    if (!(den_lo > 0.0))
        throw verify_error("outer_sup",
                           "dilatation denominator reaches zero");
    return Iv(num_hi) / Iv(den_lo);
}

}  // namespace

Iv completion_small_r_sup(const CompletionData& cd, int pieces) {
    const SiegelCompletion& sc = cd.siegel;
    if (!(sc.rho_small < sc.s.lo))
        throw domain_error("completion_small_r_sup", "needs rho < s");
    if (pieces < 1)
        throw domain_error("completion_small_r_sup", "needs pieces >= 1");
    Iv m_frac = 2.0 - 3.0 * golden_quadratic().theta;
    Disk r2pi = as_disk(1.0 / iv_two_pi());
    double hi = 0.0;
    for (int p = 0; p < pieces; ++p) {
        Iv t(static_cast<double>(p) / pieces,
             static_cast<double>(p + 1) / pieces);
        hi = std::max(hi, inner_piece_bound(cd, m_frac, r2pi, t).hi);
    }
    // Genuine lower estimate: the piece formula at the point t = 1 with the
    // pulled endpoint weight is itself an enclosure of one sample of |mu|.
    Disk one(1.0);
    Disk nu = as_disk(sc.nu_exp);
    Disk u = sc.d * one;
    Disk ul = sc.lam_inv_q * sc.d;
    SeriesEval et = eval_inner_series(sc, u);
    SeriesEval e = eval_inner_series(sc, ul);
    Disk gt1 = one + et.gamma, g1 = one + e.gamma;
    Disk At = one - cd.far_anchor / (sc.d * gt1);
    Disk A = sc.lam_inv_q - cd.far_anchor / (sc.d * g1);
    Disk dsig = log(-A) - log(-At);
    Disk rs = (sc.d * g1 / (sc.d * sc.lam_inv_q * g1 - cd.far_anchor)) * nu *
              (sc.lam_inv_q +
               cd.far_anchor * e.bmg / (sc.d * power(g1, 2)));
    Disk ids = i_times(dsig) * r2pi;
    Disk dm = as_disk(sc.nu_exp - m_frac);
    Disk pm = as_disk(sc.nu_exp + m_frac);
    Iv sample = (dm - rs - ids).mag() / (pm - rs + ids).mag();
    return Iv(std::min(sample.lo, hi), hi);
}

Iv completion_large_r_sup(const CompletionData& cd, int pieces) {
    const KoenigsCompletion& kc = cd.koenigs;
    if (!(kc.rho_large < kc.s.lo))
        throw domain_error("completion_large_r_sup", "needs rho < s");
    if (pieces < 1)
        throw domain_error("completion_large_r_sup", "needs pieces >= 1");
    Disk base = kc.d - cd.far_anchor;
    Disk nu = kc.nu_exp;
    if (!(nu.real().hi < 0.0))
        throw domain_error("completion_large_r_sup",
                           "spiral exponent must have negative real part");
    Disk r2pi = as_disk(1.0 / iv_two_pi());
    const double xmax = 12.0;
    double hi = 0.0;
    for (int p = 0; p < pieces; ++p) {
        Iv X(xmax * p / pieces, xmax * (p + 1) / pieces);
        Disk sp = base * exp(nu * as_disk(X) * r2pi);
        hi = std::max(hi, outer_piece_bound(cd, sp).hi);
    }
    // Closing piece: past xmax the spiral modulus is below its value at
    // xmax, so a zero-centered disk covers the rest of the range.
    Iv tail_mag = base.mag() * exp(nu.real() / iv_two_pi() * xmax);
    Disk sp_tail(cdouble(0.0, 0.0), tail_mag.hi);
    hi = std::max(hi, outer_piece_bound(cd, sp_tail).hi);

    // Lower estimate: the spiral start with the unpulled endpoint weight.
    Disk one(1.0);
    Disk spx = base * reciprocal(kc.xi);
    SeriesEval et = eval_outer_series(kc, base);
    SeriesEval e = eval_outer_series(kc, spx);
    Disk gt1 = one + et.gamma, g1 = one + e.gamma;
    Disk At = nu * (et.bmg / gt1 -
                    base * (one + et.beta) / (base * gt1 + cd.far_anchor));
    Disk sig = log((g1 / gt1) * ((base * gt1 + cd.far_anchor) /
                                 (spx * g1 + cd.far_anchor)));
    Disk isig = i_times(sig);
    Iv sample = (At + isig).mag() / (nu + nu + At - isig).mag();
    return Iv(std::min(sample.lo, hi), hi);
}

}  // namespace bcert
