#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "beltrami/crescent_geom.hpp"
#include "beltrami/errors.hpp"

using bcert::cdouble;
using bcert::CompletionData;
using bcert::CrescentConfig;
using bcert::Disk;
using bcert::Iv;
using cld = std::complex<long double>;

namespace {

constexpr double kPi = std::numbers::pi;

bool holds(const Disk& d, cld v, long double slack) {
    long double dx = static_cast<long double>(d.c.real()) - v.real();
    long double dy = static_cast<long double>(d.c.imag()) - v.imag();
    long double dist = sqrtl(dx * dx + dy * dy);
    return dist <= static_cast<long double>(d.r) * (1.0L + 1e-15L) + slack;
}

bool disks_meet(const Disk& a, const Disk& b, double slack = 1e-15) {
    long double dx = static_cast<long double>(a.c.real()) - b.c.real();
    long double dy = static_cast<long double>(a.c.imag()) - b.c.imag();
    long double dist = sqrtl(dx * dx + dy * dy);
    return dist <= static_cast<long double>(a.r) + b.r + slack;
}

bool close(double x, double v, double tol) { return std::fabs(x - v) <= tol; }

bool iv_holds(const Iv& a, double v) { return a.lo <= v && v <= a.hi; }

const CrescentConfig& config() {
    static CrescentConfig cfg = bcert::make_crescent_config();
    return cfg;
}

const CompletionData& completion() {
    static CompletionData cd = bcert::make_completion_data(config());
    return cd;
}

// Frozen reference values for the period-3 configuration.
const cld kA3(1.3447303722039040534836253211884L,
              -0.9061799675483893277997660969099L);
const cld kJoinInv(0.924846083414808990919719227508L,
                   -0.380341585935969102696626704399L);
const cld kTauB(0.127014253341586196730624928454L,
                2.96747713360832603274033882989L);
const cld kLambdaOne(0.22816744989647565536190714429L,
                     -0.695373825035740352093932659376L);
const cld kLambdaOneInv(0.867457609432795914167926887171L,
                        -0.218694122038996964273815614702L);
const cld kLambdaInner(0.0194853419745133493369396370654L,
                       -0.152388101751248574274099725488L);
const cld kLambdaOuter(1.31058646946819220534266200691L,
                       -0.901963631746451699950906475583L);
const cld kPreOne(0.825993519112117351338915311374L,
                  -0.399928925210404241019327782505L);
const cld kUOne(-0.103563779797060228933367198833L,
                0.25366256147730144070761911523L);
const cld kDeckJump(-0.9710213892298561431012941L,
                    0.4723566835162984049814347L);
const cld kC2(0.25L, -0.0972001833900516098662570856477L);
const cld kC3(0.178052124348940335130970153141L,
              0.0878505879710019484473713924317L);
const cld kC4(0.16668996575415255309583783782L,
              -0.175540249228059849093162357262L);
const cld kDSiegel(0.0264157035372483341431898553581L,
                   -0.152958594336568237706956451043L);
const cld kXi(1.6130019813592689782182331019497L,
              2.5317698589824022091038736550708L);
const cld kNuOuter(-1.00353996246731745615336078465L,
                   1.09925820520914702085919863008L);
const cld kPsi2(0.4334200966202237224857413L, 0.05758199810060697530189617L);
const cld kPsi3(0.1478431276544049066140462L, 0.02439126336234810686850303L);
const cld kPsi4(0.04593003439979338160525504L, 0.006513912867390279093808538L);
const cld kPsi5(0.01345097873360840386787368L,
                0.0002079898976103183833423017L);
const cld kDKoenigs(1.3100626034747718026780117224346L,
                    -0.90190457711956525907647746834665L);

// Dilatation samples by an independent route: differentiate the completed
// interpolant itself (series centers, double precision, centered
// differences) instead of evaluating the algebraic coefficient formula the
// library bounds.
cdouble lp(cdouble w) { return std::log(-w) + cdouble(0.0, kPi); }

double weight(double phi) {
    return phi > 0.0 ? phi / (2.0 * kPi) : 1.0 + phi / (2.0 * kPi);
}

struct InnerOracle {
    std::vector<cdouble> c;
    cdouble d, lam3, b, a3;
    double nu = 0.0, m = 0.0, a = 0.0, rho_in = 0.0;

    cdouble ratio(cdouble u) const {
        cdouble acc(0.0, 0.0);
        for (int k = static_cast<int>(c.size()) - 1; k >= 2; --k)
            acc = acc * u + c[k];
        return 1.0 + acc * u;
    }

    cdouble G(double lr, double phi) const {
        double x = lr - std::log(rho_in);
        double t = std::exp(nu * x);
        double W = weight(phi);
        cdouble g1t = ratio(d * t);
        cdouble g1p = ratio(lam3 * d * t);
        cdouble sig_t = lp(t - a3 / (d * g1t)) - b;
        cdouble sig_p = lp(lam3 * t - a3 / (d * g1p)) - b;
        cdouble ia(0.0, a);
        return (W * (sig_p - cdouble(0.0, 2.0 * kPi * m)) +
                (1.0 - W) * sig_t - nu * x) /
               ia;
    }
};

struct OuterOracle {
    std::vector<cdouble> psi;
    cdouble xi, base, b, a3, nuc;
    double a = 0.0, r_out = 0.0;

    cdouble ratio(cdouble u) const {
        cdouble acc(0.0, 0.0);
        for (int k = static_cast<int>(psi.size()) - 1; k >= 2; --k)
            acc = acc * u + psi[k];
        return 1.0 + acc * u;
    }

    // The tau term alone carries the radial winding: differentiating it in
    // log r yields (nu + A_unpulled)/(2 pi i a), so no explicit winding
    // term appears.
    cdouble G(double lr, double phi) const {
        double x = lr - std::log(r_out);
        cdouble sp = base * std::exp(nuc * x / (2.0 * kPi));
        double W = weight(phi);
        cdouble rt = ratio(sp);
        cdouble rp = ratio(sp / xi);
        cdouble sig =
            std::log((rp / rt) * (sp * rt + a3) / ((sp / xi) * rp + a3));
        cdouble ia(0.0, a);
        cdouble tinv = (lp(1.0 - a3 / (sp * rt + a3)) - b) / ia;
        return tinv + W * (sig - std::log(xi)) / ia;
    }
};

template <typename Map>
double mu_abs_fd(const Map& map, double lr, double phi) {
    const double h = 1e-6;
    cdouble dlr = (map.G(lr + h, phi) - map.G(lr - h, phi)) / (2.0 * h);
    cdouble dph = (map.G(lr, phi + h) - map.G(lr, phi - h)) / (2.0 * h);
    cdouble i(0.0, 1.0);
    return std::abs((dlr + i * dph) / (dlr - i * dph));
}

std::vector<double> fd_phi_grid() {
    std::vector<double> phis;
    for (int i = 0; i < 12; ++i) {
        double s = static_cast<double>(i) / 11.0;
        phis.push_back(-kPi + 0.01 + s * (kPi - 0.011));
        phis.push_back(0.001 + s * (kPi - 0.011));
    }
    return phis;
}

}  // namespace

TEST_CASE("crescent configuration constants and anchors") {
    const CrescentConfig& cfg = config();

    CHECK(holds(cfg.far_anchor, kA3, 1e-12L));
    CHECK(cfg.far_anchor.r <= 1e-9);
    CHECK(close(cfg.join_point.mag().lo, 0.639490917608297876690237378872,
                1e-10));
    CHECK(cfg.join_point.r <= 1e-9);
    CHECK(cfg.strip_origin.r <= 1e-9);

    CHECK(close(cfg.P_A.c.real(), 26.5624692402924850965039325561, 1e-9));
    CHECK(close(cfg.P_B.c.real(), -8.33823198067764736245503032012, 1e-9));
    CHECK(close(cfg.P_C.c.real(), 13.560058853969323017203101977, 1e-9));
    CHECK(close(cfg.P_D.c.real(), 16.4205299676492921421237515081, 1e-9));
    CHECK(close(cfg.P_E.c.real(), 5.0896788253385156498568355553, 1e-9));
    CHECK(cfg.P_C.r <= 1e-9);

    CHECK(close(cfg.tau_a.c.real(), 1.43091270009150269778171202479, 1e-10));
    CHECK(cfg.tau_a.c.imag() == 0.0);
    CHECK(holds(cfg.tau_b, kTauB, 1e-10L));

    // Second parabola passes through the far anchor.
    Iv ya = cfg.far_anchor.imag(), xa = cfg.far_anchor.real();
    Iv res = cfg.P_C.real() * bcert::sqr(ya) + cfg.P_D.real() * ya +
             cfg.P_E.real() - xa;
    CHECK(iv_holds(res, 0.0));

    // Geometry scalars.
    CHECK(close(bcert::crescent_span(cfg).lo, 1.89077088163369601036462206865,
                1e-10));
    CHECK(close(bcert::crescent_r_tilde(cfg).lo,
                0.261191945635411548034029133684, 1e-10));

    // T is zero at zero, strictly increasing, and approaches the span.
    Iv t0 = bcert::crescent_T(cfg, Iv(0.0));
    CHECK(iv_holds(t0, 0.0));
    CHECK(t0.hi <= 1e-15);
    double samples[] = {0.1, 0.5, 1.0, 5.0, 100.0};
    for (int i = 0; i + 1 < 5; ++i)
        CHECK(bcert::crescent_T(cfg, Iv(samples[i])).hi <
              bcert::crescent_T(cfg, Iv(samples[i + 1])).lo);
    Iv gap = bcert::crescent_span(cfg) - bcert::crescent_T(cfg, Iv(1e12));
    CHECK(gap.lo > 0.0);
    CHECK(gap.hi < 1e-5);

    // The curve starts at the origin and joins the pieces at r_tilde.
    CHECK(bcert::lambda_n(cfg, Iv(0.0)).contains(cdouble(0.0, 0.0)));
    Disk at_join = bcert::lambda_n(cfg, bcert::crescent_r_tilde(cfg));
    CHECK(disks_meet(at_join, cfg.join_point));

    // The far end sinks into the anchor monotonically.
    Iv m6 = (bcert::lambda_n(cfg, Iv(1e6)) - cfg.far_anchor).mag();
    Iv m8 = (bcert::lambda_n(cfg, Iv(1e8)) - cfg.far_anchor).mag();
    Iv m10 = (bcert::lambda_n(cfg, Iv(1e10)) - cfg.far_anchor).mag();
    CHECK(m6.lo > m8.hi);
    CHECK(m8.lo > m10.hi);
    CHECK(m10.hi < 1e-4);
    CHECK(close(0.5 * (m10.lo + m10.hi), 3.464e-5, 1e-8));

    CHECK_THROWS_AS(bcert::make_crescent_config(0.0, 1.0),
                    bcert::domain_error);
    CHECK_THROWS_AS(bcert::make_crescent_config(1.0, 0.5),
                    bcert::domain_error);
}

TEST_CASE("boundary curve frozen values") {
    const CrescentConfig& cfg = config();

    CHECK(holds(bcert::lambda_n(cfg, Iv(1.0)), kLambdaOne, 1e-11L));
    Disk inner = bcert::lambda_n(cfg, Iv(cfg.r_inner));
    Disk outer = bcert::lambda_n(cfg, Iv(cfg.r_outer));
    CHECK(holds(inner, kLambdaInner, 1e-11L));
    CHECK(holds(outer, kLambdaOuter, 1e-11L));
    CHECK(close(inner.mag().lo, 0.15362881275077478311, 1e-10));
    CHECK(close((outer - cfg.far_anchor).mag().lo, 0.034403249579370435497,
                1e-10));

    // Continuity across the join parameter.
    double rt = 0.5 * (bcert::crescent_r_tilde(cfg).lo +
                       bcert::crescent_r_tilde(cfg).hi);
    Disk straddle = bcert::lambda_n(cfg, Iv(rt * (1.0 - 1e-9),
                                            rt * (1.0 + 1e-9)));
    CHECK(straddle.r < 1e-6);

    // Interval evaluation contains point evaluations.
    Disk wide = bcert::lambda_n(cfg, Iv(0.5, 2.0));
    CHECK(wide.contains(bcert::lambda_n(cfg, Iv(1.0)).c));
    CHECK(wide.contains(bcert::lambda_n(cfg, Iv(0.5)).c));

    CHECK_THROWS_AS(bcert::lambda_n(cfg, Iv(-1.0, 1.0)),
                    bcert::domain_error);
}

TEST_CASE("boundary derivative against finite differences") {
    const CrescentConfig& cfg = config();
    double radii[] = {0.01, 0.05, 0.2, 0.5, 1.0, 2.0, 5.0, 20.0, 100.0,
                      1000.0};
    for (double r : radii) {
        double h = 1e-6 * r;
        cdouble fd = (bcert::lambda_n(cfg, Iv(r + h)).c -
                      bcert::lambda_n(cfg, Iv(r - h)).c) /
                     (2.0 * h);
        Disk dv = bcert::lambda_n_deriv(cfg, Iv(r));
        CAPTURE(r);
        CHECK(holds(dv, cld(fd), 1e-4L * (1.0L + std::abs(fd))));
    }

    // A straddling enclosure hulls both one-sided derivatives.
    double rt = 0.5 * (bcert::crescent_r_tilde(cfg).lo +
                       bcert::crescent_r_tilde(cfg).hi);
    Disk hullv = bcert::lambda_n_deriv(cfg, Iv(rt - 1e-6, rt + 1e-6));
    Disk left = bcert::lambda_n_deriv(cfg, Iv(rt - 1e-6));
    Disk right = bcert::lambda_n_deriv(cfg, Iv(rt + 1e-6));
    CHECK(hullv.contains(left.c));
    CHECK(hullv.contains(right.c));
    // The speed genuinely jumps at the join.
    CHECK(left.mag().lo > right.mag().hi);

    CHECK_THROWS_AS(bcert::lambda_n_deriv(cfg, Iv(0.0, 1.0)),
                    bcert::domain_error);
}

TEST_CASE("strip coordinate normalization and round trips") {
    const CrescentConfig& cfg = config();

    CHECK(bcert::tau_inv(cfg, cfg.strip_origin).contains(cdouble(0.0, 0.0)));
    Disk jinv = bcert::tau_inv(cfg, cfg.join_point);
    CHECK(iv_holds(jinv.mag(), 1.0));
    CHECK(holds(jinv, kJoinInv, 1e-10L));
    CHECK(holds(bcert::tau_inv(cfg, bcert::lambda_n(cfg, Iv(1.0))),
                kLambdaOneInv, 1e-10L));

    // Forward map undoes the inverse on inflated curve disks.
    for (int k = 0; k < 20; ++k) {
        double r = cfg.r_inner *
                   std::pow(cfg.r_outer / cfg.r_inner, k / 19.0);
        Disk z = bcert::lambda_n(cfg, Iv(r));
        Disk zi(z.c, z.r + 1e-3);
        Disk back = bcert::tau_fwd(cfg, bcert::tau_inv(cfg, zi));
        CAPTURE(r);
        CHECK(back.contains(z.c));
    }

    // Derivative of the inverse against finite differences of the formula.
    cdouble a3 = cfg.far_anchor.c, b = cfg.tau_b.c;
    double a = cfg.tau_a.c.real();
    auto tinv_pt = [&](cdouble z) {
        return (lp(1.0 - a3 / z) - b) / cdouble(0.0, a);
    };
    cdouble z0 = bcert::lambda_n(cfg, Iv(1.0)).c;
    cdouble h(1e-7, 0.0);
    cdouble fd = (tinv_pt(z0 + h) - tinv_pt(z0 - h)) / (2.0 * h);
    CHECK(holds(bcert::tau_inv_deriv(cfg, Disk(z0)), cld(fd), 1e-6L));

    CHECK_THROWS_AS(bcert::tau_inv(cfg, Disk(2.0 * a3)), bcert::domain_error);
    CHECK_THROWS_AS(bcert::tau_inv(cfg, Disk(-a3)), bcert::domain_error);
    CHECK_THROWS_AS(bcert::tau_inv(cfg, Disk(cdouble(0.0, 0.0), 0.1)),
                    bcert::domain_error);
    CHECK_THROWS_AS(bcert::tau_inv(cfg, Disk(a3, 1e-3)), bcert::domain_error);
    CHECK_THROWS_AS(bcert::tau_inv_deriv(cfg, Disk(cdouble(0.0, 0.0), 0.1)),
                    bcert::domain_error);
}

TEST_CASE("pullback branch frozen values") {
    const CrescentConfig& cfg = config();

    Disk p1 = bcert::lambda_n_preimage(cfg, Iv(1.0));
    CHECK(holds(p1, kPreOne, 1e-11L));

    double rt = 0.5 * (bcert::crescent_r_tilde(cfg).lo +
                       bcert::crescent_r_tilde(cfg).hi);
    Disk pj = bcert::lambda_n_preimage(cfg, Iv(rt));
    CHECK(disks_meet(pj, cfg.strip_origin, 1e-9));

    // The pullback disk really is a branch of f^{-3}: pushing forward lands
    // back inside the curve enclosure.
    Disk fwd = bcert::orbit(cfg.map, p1, 3);
    CHECK(disks_meet(fwd, bcert::lambda_n(cfg, Iv(1.0)), 1e-12));

    CHECK_THROWS_AS(bcert::lambda_n_preimage(cfg, Iv(0.0, 1.0)),
                    bcert::domain_error);
}

TEST_CASE("interpolant weights and seam") {
    const CrescentConfig& cfg = config();
    Disk U = bcert::tau_inv(cfg, bcert::lambda_n_preimage(cfg, Iv(1.0)));
    Disk V = bcert::tau_inv(cfg, bcert::lambda_n(cfg, Iv(1.0)));
    CHECK(holds(U, kUOne, 1e-10L));

    // Weight one exactly at phi = 0, weight sliding towards the boundary
    // side just above.
    Disk g0 = bcert::g_n_eval(cfg, Iv(1.0), Iv(0.0));
    CHECK(std::abs(g0.c - U.c) <= 1e-12);
    CHECK(std::fabs(g0.r - U.r) <= 1e-12);
    Disk gp = bcert::g_n_eval(cfg, Iv(1.0), Iv(1e-9));
    CHECK(std::abs(gp.c - V.c) <= 1e-7);

    // Deck jump across the seam.
    Disk gq = bcert::g_n_eval(cfg, Iv(1.0), Iv(1e-12));
    CHECK(holds(g0 - gq, kDeckJump, 1e-6L));

    // Wrap-around consistency: phi = pi and phi -> -pi agree.
    Disk ga = bcert::g_n_eval(cfg, Iv(1.0), Iv(kPi));
    Disk gb = bcert::g_n_eval(cfg, Iv(1.0), Iv(-kPi + 1e-6));
    CHECK(disks_meet(ga, gb, 1e-5));

    // A straddling angle enclosure hulls both weight branches.
    Disk gs = bcert::g_n_eval(cfg, Iv(1.0), Iv(-1e-3, 1e-3));
    Disk gl = bcert::g_n_eval(cfg, Iv(1.0), Iv(-1e-3));
    Disk gr = bcert::g_n_eval(cfg, Iv(1.0), Iv(1e-3));
    CHECK(disks_meet(gs, gl, 1e-12));
    CHECK(disks_meet(gs, gr, 1e-12));
    CHECK(gs.r >= 0.4 * std::abs(U.c - V.c));

    CHECK_THROWS_AS(bcert::g_n_eval(cfg, Iv(0.0), Iv(0.1)),
                    bcert::domain_error);
    CHECK_THROWS_AS(bcert::g_n_eval(cfg, Iv(1.0), Iv(4.0)),
                    bcert::domain_error);
    CHECK_THROWS_AS(bcert::g_n_eval(cfg, Iv(1.0), Iv(-kPi - 0.1)),
                    bcert::domain_error);
}

TEST_CASE("disjointness certificate over the working range") {
    const CrescentConfig& cfg = config();
    auto rep2 =
        bcert::verify_empty_intersection(cfg, 1200, 2, "crescent_balls.csv");
    CHECK(rep2.balls == 1200);
    CHECK(rep2.min_separation > 0.01);
    CHECK(rep2.min_separation < 0.0291);
    CHECK(rep2.max_cover_radius < 0.006);

    // Identical report without threads and without the csv side effect.
    auto rep1 = bcert::verify_empty_intersection(cfg, 1200, 1);
    CHECK(rep1.min_separation == rep2.min_separation);
    CHECK(rep1.max_cover_radius == rep2.max_cover_radius);

    // The csv lists every disk of both families.
    std::ifstream in("crescent_balls.csv");
    REQUIRE(in.good());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "index,center_re,center_im,radius,kind");
    int boundary = 0, preimage = 0;
    bool radii_ok = true;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string idx, re, im, rad, kind;
        REQUIRE(std::getline(row, idx, ','));
        REQUIRE(std::getline(row, re, ','));
        REQUIRE(std::getline(row, im, ','));
        REQUIRE(std::getline(row, rad, ','));
        REQUIRE(std::getline(row, kind));
        if (!(std::stod(rad) > 0.0)) radii_ok = false;
        if (kind == "boundary") ++boundary;
        if (kind == "preimage") ++preimage;
    }
    CHECK(boundary == 1200);
    CHECK(preimage == 1200);
    CHECK(radii_ok);
}

TEST_CASE("disjointness failures are detected") {
    CHECK_THROWS_AS(bcert::verify_empty_intersection(config(), 7, 1),
                    bcert::domain_error);

    // Pushing the outer cutoff deep into the anchor spiral brings the
    // pullback within cover radius of the curve: the certificate must
    // refuse, naming the contact.
    CrescentConfig crowded = bcert::make_crescent_config(3.1e-3, 1e7);
    bool hit = false;
    std::string msg;
    try {
        bcert::verify_empty_intersection(crowded, 600, 2);
    } catch (const bcert::verify_error& e) {
        msg = e.what();
        hit = msg.find("meets cover") != std::string::npos;
    }
    CAPTURE(msg);
    CHECK(hit);
}

TEST_CASE("disjointness on a reduced range") {
    CrescentConfig small = bcert::make_crescent_config(1e-2, 1e2);
    auto rep = bcert::verify_empty_intersection(small, 200, 2);
    CHECK(rep.balls == 200);
    CHECK(rep.min_separation > 0.2);
    CHECK(rep.min_separation < 0.237);
}

TEST_CASE("completion data frozen values and invariants") {
    const CompletionData& cd = completion();
    const auto& sc = cd.siegel;
    const auto& kc = cd.koenigs;

    // Inner linearizer coefficients; the quadratic one has exact real part
    // -1/(2(lambda - 1)) whose real part is 1/4.
    CHECK(holds(sc.coeffs[2], kC2, 1e-13L));
    CHECK(iv_holds(sc.coeffs[2].real(), 0.25));
    CHECK(holds(sc.coeffs[3], kC3, 1e-12L));
    CHECK(holds(sc.coeffs[4], kC4, 1e-12L));

    CHECK(holds(sc.d, kDSiegel, 1e-9L));
    CHECK(close(sc.rho_small, 0.1552228107424506055651591, 1e-8));
    CHECK(close(sc.s.lo, 0.60, 1e-15));
    CHECK(close(sc.koebe_c.lo, 4.091428657124576940467257, 1e-5));
    CHECK(iv_holds(sc.nu_exp, 0.145898033750315455386239496903));
    CHECK(sc.nu_exp.hi - sc.nu_exp.lo < 1e-14);
    CHECK(close(std::abs(sc.lam_inv_q.c), 1.0, 1e-13));

    // Koebe gate recomputed from its ingredients.
    double kc_check = 1.0 / (0.60 * std::pow(1.0 - sc.rho_small / 0.60, 3));
    CHECK(close(sc.koebe_c.lo, kc_check, 1e-6));

    // Outer multiplier and exponent.
    CHECK(holds(kc.xi, kXi, 1e-10L));
    CHECK(close(kc.xi.mag().lo, 3.00193837557014155908654181004, 1e-10));
    CHECK(holds(kc.nu_exp, kNuOuter, 1e-10L));
    CHECK(kc.nu_exp.real().hi < 0.0);

    // Outer linearizer coefficients.
    CHECK(holds(kc.coeffs[2], kPsi2, 1e-10L));
    CHECK(holds(kc.coeffs[3], kPsi3, 1e-10L));
    CHECK(holds(kc.coeffs[4], kPsi4, 1e-10L));
    CHECK(holds(kc.coeffs[5], kPsi5, 1e-10L));

    CHECK(holds(kc.d, kDKoenigs, 1e-8L));
    CHECK(close(kc.rho_large, 0.034930404406125624047, 1e-8));
    CHECK(close(kc.s.lo, 0.70, 1e-15));
    CHECK(close(kc.majorant.hi, 1.0, 1e-15));
    double c1_check =
        1.0 / (0.70 * std::pow(1.0 - kc.rho_large / 0.70, 3));
    CHECK(close(kc.c1.lo, c1_check, 1e-9));
    CHECK(close(kc.c1.lo, 1.6657, 1e-3));
    CHECK(kc.c1.lo == kc.c2.lo);

    // Contraction window of the inverse steps.
    CHECK(kc.cbar * kc.cbar < 1.0 / kc.xi.mag().hi);
    CHECK(1.0 / kc.xi.mag().lo < kc.cbar);

    CHECK_THROWS_AS(bcert::make_completion_data(config(), 1.2),
                    bcert::domain_error);
    // s below the actual |d| must refuse, not clamp.
    CHECK_THROWS_AS(bcert::make_completion_data(config(), 0.1),
                    bcert::domain_error);
}

TEST_CASE("inner completion bound against finite differences") {
    const CompletionData& cd = completion();
    Iv bound = bcert::completion_small_r_sup(cd);
    CHECK(bound.hi < 0.5);
    CHECK(bound.lo >= 0.025);
    CHECK(bound.lo <= bound.hi);

    InnerOracle in;
    in.c.resize(cd.siegel.coeffs.size());
    for (size_t k = 2; k < in.c.size(); ++k) in.c[k] = cd.siegel.coeffs[k].c;
    in.d = cd.siegel.d.c;
    in.lam3 = cd.siegel.lam_inv_q.c;
    in.b = config().tau_b.c;
    in.a3 = cd.far_anchor.c;
    in.nu = 0.5 * (cd.siegel.nu_exp.lo + cd.siegel.nu_exp.hi);
    in.m = in.nu;
    in.a = config().tau_a.c.real();
    in.rho_in = config().r_inner;

    double max_fd = 0.0;
    int violations = 0;
    for (int j = 1; j <= 50; ++j) {
        double t = static_cast<double>(j) / 50.0;
        double lr = std::log(in.rho_in) + std::log(t) / in.nu;
        for (double phi : fd_phi_grid()) {
            double mu = mu_abs_fd(in, lr, phi);
            max_fd = std::max(max_fd, mu);
            if (!(mu <= bound.hi + 5e-6)) ++violations;
        }
    }
    CAPTURE(max_fd);
    CHECK(violations == 0);
    CHECK(close(max_fd, 0.033078703719324025, 5e-4));

    // Shrinking the junction point toward the fixed point shrinks the
    // dilatation linearly: the interpolation defect is a boundary effect.
    CompletionData tiny = cd;
    tiny.siegel.d = cd.siegel.d * Disk(1e-6);
    tiny.siegel.rho_small = tiny.siegel.d.mag().hi;
    Iv small_bound = bcert::completion_small_r_sup(tiny);
    CHECK(small_bound.hi < 1e-3);
}

TEST_CASE("outer completion bound against finite differences") {
    const CompletionData& cd = completion();
    Iv bound = bcert::completion_large_r_sup(cd);
    CHECK(bound.hi < 0.1);
    CHECK(bound.lo >= 0.002);
    CHECK(bound.lo <= bound.hi);

    OuterOracle out;
    out.psi.resize(cd.koenigs.coeffs.size());
    for (size_t k = 2; k < out.psi.size(); ++k)
        out.psi[k] = cd.koenigs.coeffs[k].c;
    out.xi = cd.koenigs.xi.c;
    out.base = cd.koenigs.d.c - cd.far_anchor.c;
    out.b = config().tau_b.c;
    out.a3 = cd.far_anchor.c;
    out.nuc = cd.koenigs.nu_exp.c;
    out.a = config().tau_a.c.real();
    out.r_out = config().r_outer;

    double max_fd = 0.0;
    int violations = 0;
    for (int j = 0; j < 50; ++j) {
        double lr = std::log(out.r_out) + std::log(10.0) * j / 50.0;
        for (double phi : fd_phi_grid()) {
            double mu = mu_abs_fd(out, lr, phi);
            max_fd = std::max(max_fd, mu);
            if (!(mu <= bound.hi + 5e-6)) ++violations;
        }
    }
    CAPTURE(max_fd);
    CHECK(violations == 0);
    CHECK(close(max_fd, 0.002690923055812956, 2e-5));

    // Shrinking the junction point toward the anchor kills the dilatation.
    CompletionData tiny = cd;
    tiny.koenigs.d =
        cd.far_anchor + (cd.koenigs.d - cd.far_anchor) * Disk(1e-8);
    tiny.koenigs.rho_large = (tiny.koenigs.d - cd.far_anchor).mag().hi;
    Iv small_bound = bcert::completion_large_r_sup(tiny);
    CHECK(small_bound.hi < 1e-5);
}

TEST_CASE("completion junction consistency") {
    const CrescentConfig& cfg = config();
    const CompletionData& cd = completion();

    // Inner linearizer hits the curve at the junction, and the pulled
    // argument hits the verified pullback: two fully independent routes.
    auto inner_phi = [&](cdouble u) {
        cdouble acc(0.0, 0.0);
        for (int k = static_cast<int>(cd.siegel.coeffs.size()) - 1; k >= 2;
             --k)
            acc = acc * u + cd.siegel.coeffs[k].c;
        return u * (1.0 + acc * u);
    };
    Disk lam_in = bcert::lambda_n(cfg, Iv(cfg.r_inner));
    CHECK(holds(lam_in, cld(inner_phi(cd.siegel.d.c)), 1e-9L));
    Disk pre_in = bcert::lambda_n_preimage(cfg, Iv(cfg.r_inner));
    CHECK(holds(pre_in, cld(inner_phi(cd.siegel.lam_inv_q.c * cd.siegel.d.c)),
                1e-7L));

    // Same two routes on the outer side.
    auto outer_psi = [&](cdouble u) {
        cdouble acc(0.0, 0.0);
        for (int k = static_cast<int>(cd.koenigs.coeffs.size()) - 1; k >= 2;
             --k)
            acc = acc * u + cd.koenigs.coeffs[k].c;
        return u * (1.0 + acc * u);
    };
    cdouble rel = cd.koenigs.d.c - cd.far_anchor.c;
    Disk lam_out = bcert::lambda_n(cfg, Iv(cfg.r_outer));
    CHECK(holds(lam_out, cld(outer_psi(rel) + cd.far_anchor.c), 1e-7L));
    Disk pre_out = bcert::lambda_n_preimage(cfg, Iv(cfg.r_outer));
    CHECK(holds(pre_out,
                cld(outer_psi(rel / cd.koenigs.xi.c) + cd.far_anchor.c),
                1e-6L));
}

TEST_CASE("interpolant enclosure over wide parameter intervals") {
    const CrescentConfig& cfg = config();
    Disk gw = bcert::g_n_eval(cfg, Iv(0.9, 1.1), Iv(0.5));
    Disk gp = bcert::g_n_eval(cfg, Iv(1.0), Iv(0.5));
    CHECK(disks_meet(gw, gp, 1e-12));
    CHECK(gw.r >= gp.r);

    Disk gw2 = bcert::g_n_eval(cfg, Iv(5.0, 6.0), Iv(-2.0));
    Disk gp2 = bcert::g_n_eval(cfg, Iv(5.5), Iv(-2.0));
    CHECK(disks_meet(gw2, gp2, 1e-12));
}
