#pragma once

#include <optional>
#include <string>

#include "curvebound/surface.hpp"

namespace curvebound {

// Hypothesis data for the comparison-geometry constants: curvature bound,
// injectivity-radius bound, curvature bound on curves, tameness, obstacle
// separation, and the curve injectivity-radius constant i0 (external input;
// equals length/2 when a concrete closed curve is supplied).
struct BoundsProfile {
    double K0 = 0.0;
    double r0 = kInf;
    double Lambda = 0.0;
    double eps = 1.0;
    double eta_prime = kInf;
    std::optional<double> i0;
    double obstacle_distance = kInf;

    void validate() const;  // throws Error(domain/input)
};

struct IsoConstants {
    double c_prime = 0.0;
    double c = 0.0;
};

struct MonotonicityConstants {
    double C = 0.0;       // 1/(4 C1 C2 c)
    double C_prime = 0.0; // 1/(4 C1 C2 c')
    double C_thm = 0.0;   // 1/(36 C1 C2 c)
};

struct DiskConstants {
    double rho1 = 0.0;
    double alpha = 0.0;
};

struct EtaThresholds {
    double eta_pp = 0.0;         // alpha/Lambda, +inf when Lambda = 0
    double eta = 0.0;            // min{eta', eta''}
    double R = 0.0;              // C * min{delta0, eta}^2
    double R_prime = 0.0;        // C' * min{rho0, eta}^2
    double R_unobstructed = 0.0; // C * delta0^2
    bool lambda_zero = false;
};

struct ConstantsReport {
    double c_prime, c;
    double C, C_prime, C_thm;
    std::optional<double> delta;  // needs a curve's injectivity radius
    double delta0;
    double rho1, alpha, rho0;
    double eta_pp, eta, R, R_prime;
    double R_unobstructed;
    double r_conv_lower;
    // echo of the inputs that shaped the report
    double slack = 0.99, C1 = 1.0, C2 = 1.0;
    bool i0_supplied = false;
};

// sinh(tau)/sin(tau) with the series extension below tau = 1e-4.
double sinh_sin_ratio(double tau);

// alpha(tau) = tau*sin(2 tau)/(2 sinh^2 tau); positive decreasing on
// (0, pi/2), continuously extended to alpha(0) = 1.
double alpha_of_tau(double tau);

IsoConstants iso_constants(const BoundsProfile& p);

MonotonicityConstants monotonicity_constants(const BoundsProfile& p, double C1 = 1.0, double C2 = 1.0);

// (delta, delta0). delta = eps*min{1, r0/2, r_inj_L/2}; delta0 uses i0 from
// the profile, falling back to r_inj_L; throws Error(parameter) when
// neither is available.
std::pair<double, double> delta_radii(const BoundsProfile& p, std::optional<double> r_inj_L);

// Literal slack recipe: rho1 = slack*min{r0, pi/(2 sqrt K0)}, alpha at
// tau = sqrt(K0)*rho1.
DiskConstants disk_constants(const BoundsProfile& p, double slack = 0.99);

// Five-term inscribed-disk radius. The free choice of rho1 is optimized:
// every admissible rho1 yields a valid bound min{rho1, alpha(rho1)/Lambda},
// and the report takes the best one (this recovers rho0 -> 1/Lambda in the
// Euclidean limit). The literal fixed-slack value is also available.
double rho0(const BoundsProfile& p, double slack = 0.99);
double rho0_literal(const BoundsProfile& p, double slack = 0.99);

EtaThresholds eta_thresholds(const BoundsProfile& p, const MonotonicityConstants& mono,
                             double delta0, double rho0_value, double alpha);

// Berger: r_conv >= min{r_inj, pi/sqrt(K0)}/2.
double convexity_radius_lower(const BoundsProfile& p);

ConstantsReport constants_report(const BoundsProfile& p, double slack = 0.99, double C1 = 1.0,
                                 double C2 = 1.0, std::optional<double> r_inj_L = std::nullopt);

}  // namespace curvebound
