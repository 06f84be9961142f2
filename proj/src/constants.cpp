#include "curvebound/constants.hpp"

#include <algorithm>
#include <cmath>

namespace curvebound {

void BoundsProfile::validate() const {
    if (!(K0 >= 0.0)) fail(ErrorCode::input, "K0 must be >= 0");
    if (!(r0 > 0.0)) fail(ErrorCode::input, "r0 must be > 0");
    if (!(Lambda >= 0.0)) fail(ErrorCode::input, "Lambda must be >= 0");
    if (!(eps > 0.0 && eps <= 1.0)) fail(ErrorCode::input, "eps must lie in (0, 1]");
    if (!(eta_prime > 0.0)) fail(ErrorCode::input, "eta_prime must be > 0");
    if (i0 && !(*i0 > 0.0)) fail(ErrorCode::input, "i0 must be > 0");
    if (!(obstacle_distance > 0.0)) fail(ErrorCode::input, "obstacle_distance must be > 0");
    if (K0 > 0.0) {
        double tau = r0 * std::sqrt(K0);
        if (!(tau < kPi - 1e-9))
            fail(ErrorCode::domain,
                 "r0*sqrt(K0) = " + std::to_string(tau) +
                     " is outside the validity domain [0, pi); shrink r0");
    }
}

double sinh_sin_ratio(double tau) {
    if (tau < 0.0) fail(ErrorCode::domain, "sinh_sin_ratio needs tau >= 0");
    if (tau < 1e-4) {
        double t2 = tau * tau;
        return 1.0 + t2 / 3.0 + t2 * t2 / 18.0;
    }
    return std::sinh(tau) / std::sin(tau);
}

double alpha_of_tau(double tau) {
    if (tau < 0.0) fail(ErrorCode::domain, "alpha_of_tau needs tau >= 0");
    if (tau < 1e-4) {
        double t2 = tau * tau;
        return 1.0 - t2 + (19.0 / 45.0) * t2 * t2;
    }
    double sh = std::sinh(tau);
    return tau * std::sin(2.0 * tau) / (2.0 * sh * sh);
}

IsoConstants iso_constants(const BoundsProfile& p) {
    p.validate();
    double ratio = (p.K0 == 0.0) ? 1.0 : sinh_sin_ratio(p.r0 * std::sqrt(p.K0));
    IsoConstants out;
    out.c_prime = ratio / 2.0;
    out.c = (1.0 + 1.0 / p.eps) * ratio / (2.0 * p.eps);
    return out;
}

MonotonicityConstants monotonicity_constants(const BoundsProfile& p, double C1, double C2) {
    if (!(C1 > 0.0) || !(C2 > 0.0)) fail(ErrorCode::input, "C1, C2 must be > 0");
    IsoConstants iso = iso_constants(p);
    MonotonicityConstants out;
    out.C = 1.0 / (4.0 * C1 * C2 * iso.c);
    out.C_prime = 1.0 / (4.0 * C1 * C2 * iso.c_prime);
    out.C_thm = 1.0 / (36.0 * C1 * C2 * iso.c);
    return out;
}

std::pair<double, double> delta_radii(const BoundsProfile& p, std::optional<double> r_inj_L) {
    p.validate();
    std::optional<double> i0 = p.i0 ? p.i0 : r_inj_L;
    if (!i0)
        fail(ErrorCode::parameter, "delta_radii needs i0 in the profile or a curve injectivity radius");
    double delta = p.eps * std::min({1.0, p.r0 / 2.0, r_inj_L.value_or(*i0) / 2.0});
    double delta0 = p.eps * std::min({1.0, p.r0 / 2.0, *i0 / 2.0});
    return {delta, delta0};
}

DiskConstants disk_constants(const BoundsProfile& p, double slack) {
    p.validate();
    if (!(slack > 0.0 && slack < 1.0)) fail(ErrorCode::input, "slack must lie in (0, 1)");
    DiskConstants out;
    if (p.K0 == 0.0) {
        out.rho1 = slack * p.r0;
        out.alpha = 1.0;
        return out;
    }
    double sq = std::sqrt(p.K0);
    out.rho1 = slack * std::min(p.r0, kPi / (2.0 * sq));
    out.alpha = alpha_of_tau(sq * out.rho1);
    return out;
}

namespace {

// max over admissible rho of min{rho, alpha(sqrt(K0) rho)/Lambda}
double best_disk_term(const BoundsProfile& p, double cap) {
    if (p.Lambda == 0.0) return cap;
    if (p.K0 == 0.0) return std::min(cap, 1.0 / p.Lambda);
    double sq = std::sqrt(p.K0);
    auto curv_term = [&](double rho) { return alpha_of_tau(sq * rho) / p.Lambda; };
    if (curv_term(cap) >= cap) return cap;
    double lo = 0.0, hi = cap;  // curv_term(lo+) > lo, curv_term(hi) < hi
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (curv_term(mid) >= mid)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-15 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double rho0(const BoundsProfile& p, double slack) {
    p.validate();
    if (!(slack > 0.0 && slack < 1.0)) fail(ErrorCode::input, "slack must lie in (0, 1)");
    double t1 = p.r0 / 2.0;
    double t2 = (p.K0 > 0.0) ? kPi / (2.0 * std::sqrt(p.K0)) : kInf;
    double cap = slack * std::min(p.r0, t2);
    double pair = best_disk_term(p, cap);
    double t5 = p.obstacle_distance / 2.0;
    return std::min({t1, t2, pair, t5});
}

double rho0_literal(const BoundsProfile& p, double slack) {
    DiskConstants dc = disk_constants(p, slack);
    double t1 = p.r0 / 2.0;
    double t2 = (p.K0 > 0.0) ? kPi / (2.0 * std::sqrt(p.K0)) : kInf;
    double t4 = (p.Lambda > 0.0) ? dc.alpha / p.Lambda : kInf;
    double t5 = p.obstacle_distance / 2.0;
    return std::min({t1, t2, dc.rho1, t4, t5});
}

EtaThresholds eta_thresholds(const BoundsProfile& p, const MonotonicityConstants& mono,
                             double delta0, double rho0_value, double alpha) {
    EtaThresholds out;
    if (p.Lambda == 0.0) {
        out.eta_pp = kInf;
        out.lambda_zero = true;
    } else {
        out.eta_pp = alpha / p.Lambda;
    }
    out.eta = std::min(p.eta_prime, out.eta_pp);
    double m = std::min(delta0, out.eta);
    out.R = std::isfinite(m) ? mono.C * m * m : kInf;
    out.R_unobstructed = mono.C * delta0 * delta0;
    double mp = std::min(rho0_value, out.eta);
    out.R_prime = std::isfinite(mp) ? mono.C_prime * mp * mp : kInf;
    return out;
}

double convexity_radius_lower(const BoundsProfile& p) {
    p.validate();
    if (p.K0 == 0.0) return p.r0 / 2.0;
    return 0.5 * std::min(p.r0, kPi / std::sqrt(p.K0));
}

ConstantsReport constants_report(const BoundsProfile& p, double slack, double C1, double C2,
                                 std::optional<double> r_inj_L) {
    p.validate();
    IsoConstants iso = iso_constants(p);
    MonotonicityConstants mono = monotonicity_constants(p, C1, C2);
    DiskConstants dc = disk_constants(p, slack);

    ConstantsReport rep{};
    rep.c_prime = iso.c_prime;
    rep.c = iso.c;
    rep.C = mono.C;
    rep.C_prime = mono.C_prime;
    rep.C_thm = mono.C_thm;
    rep.slack = slack;
    rep.C1 = C1;
    rep.C2 = C2;
    rep.i0_supplied = p.i0.has_value() || r_inj_L.has_value();

    if (p.i0 || r_inj_L) {
        auto [delta, delta0] = delta_radii(p, r_inj_L);
        if (r_inj_L) rep.delta = delta;
        rep.delta0 = delta0;
    } else {
        // i0 unknown: report the upper-bound value eps*min{1, r0/2}
        rep.delta0 = p.eps * std::min(1.0, p.r0 / 2.0);
    }

    rep.rho1 = dc.rho1;
    rep.alpha = dc.alpha;
    rep.rho0 = rho0(p, slack);

    EtaThresholds eta = eta_thresholds(p, mono, rep.delta0, rep.rho0, dc.alpha);
    rep.eta_pp = eta.eta_pp;
    rep.eta = eta.eta;
    rep.R = eta.R;
    rep.R_prime = eta.R_prime;
    rep.R_unobstructed = eta.R_unobstructed;
    rep.r_conv_lower = convexity_radius_lower(p);
    return rep;
}

}  // namespace curvebound
