#pragma once

#include <string>
#include <vector>

#include "curvebound/verify.hpp"

namespace curvebound {

// H(x,y) = A sin(n x) on the 2*pi torus; time-t flow (x, y + t*A*n*cos(n x)).
struct GraphHamiltonian {
    double amplitude = 0.0;
    int frequency = 1;

    double oscillation() const { return 2.0 * amplitude; }

    // H_n = (1/n) sin(n x) and G_n = n^{-1/2} H_n
    static GraphHamiltonian H(int n);
    static GraphHamiltonian G(int n);
};

SurfacePoint hamiltonian_flow(const GraphHamiltonian& h, double t, const SurfaceModel& m,
                              const SurfacePoint& p);

enum class FamilyKind { L, K };

FamilyKind family_kind_from_name(const std::string& name);
const char* family_kind_name(FamilyKind k);

// curve amplitude of the time-1 flow image of L0: 1 for L_n, n^{-1/2} for K_n
double family_amplitude(FamilyKind kind, int n);

DiscreteCurve base_circle(std::size_t samples);

// arclength-resampled graph curve y = amplitude * cos(n x) on torus(2*pi)
DiscreteCurve family_curve(FamilyKind kind, int n, std::size_t samples);

// equal-x graph sampling; denser in arclength near the curvature spikes, so
// the finite-difference curvature oracle resolves the crests
DiscreteCurve family_curve_graph_sampled(FamilyKind kind, int n, std::size_t samples);

// Areas of the connected components of the region between two transverse
// graph-like curves, between consecutive crossings; a single annular band
// when the curves do not intersect.
std::vector<double> lobe_areas(const DiscreteCurve& a, const DiscreteCurve& b);

struct FamilyReport {
    FamilyKind kind = FamilyKind::L;
    int n = 0;
    double hofer_lower = 0.0;   // min lobe area against L0
    double hofer_upper = 0.0;   // Hamiltonian oscillation
    double hausdorff = 0.0;
    double hausdorff_margin = 0.0;
    double kappa_oracle = 0.0;  // finite-difference curvature maximum
    double kappa_paper = 0.0;   // the stated n (resp. sqrt(n)); see report docs
    double tameness = 0.0;
    double R_prime = 0.0;
    Verdict implication;
};

FamilyReport family_report(FamilyKind kind, int n);

}  // namespace curvebound
