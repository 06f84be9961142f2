#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "curvebound/surface.hpp"

namespace curvebound {

// Ordered samples on a surface with geodesic interpolation between
// consecutive points. Immutable after construction; the arclength table is
// built once. Consecutive samples must stay within inj_radius/4 so the
// interpolating geodesics are unambiguous.
class DiscreteCurve {
public:
    DiscreteCurve(SurfaceModel m, std::vector<SurfacePoint> pts, bool closed);

    const SurfaceModel& surface() const { return surface_; }
    const std::vector<SurfacePoint>& points() const { return pts_; }
    bool closed() const { return closed_; }
    std::size_t size() const { return pts_.size(); }
    double length() const { return length_; }
    double arclength_at(std::size_t i) const { return cum_[i]; }
    double segment_length(std::size_t i) const;
    double max_spacing() const { return max_spacing_; }
    SurfacePoint point_at_arclength(double s) const;

    // Pairwise non-adjacent segment sweep with tolerance 1e-9, in the local
    // normal chart near candidate pairs. Pure (no caching), so curves stay
    // safe for unrestricted concurrent use.
    bool embedded() const;
    std::optional<std::pair<std::size_t, std::size_t>> self_intersection() const;

private:
    SurfaceModel surface_;
    std::vector<SurfacePoint> pts_;
    bool closed_;
    std::vector<double> cum_;
    double length_ = 0.0;
    double max_spacing_ = 0.0;
};

// n equally spaced arclength samples on the interpolated curve.
DiscreteCurve resample_arclength(const DiscreteCurve& c, std::size_t n);

struct CurvatureProfile {
    std::vector<double> kappa;
    double max_curvature = 0.0;
    std::size_t argmax = 0;
};

// Per-sample geodesic curvature |D/ds gamma'| by second-order differences in
// the normal chart at each sample; handles non-uniform spacing.
CurvatureProfile curvature_profile(const DiscreteCurve& c);

double intrinsic_distance(const DiscreteCurve& c, std::size_t i, std::size_t j);

struct TamenessResult {
    double epsilon_star = 1.0;
    double cutoff = 0.0;      // near-diagonal arclength cutoff h*
    double resolution = 0.0;  // max sample spacing
    std::size_t witness_i = 0, witness_j = 0;
    bool self_intersecting = false;
};

// inf over sample pairs of d_M / min{1, d_L}, pairs below the cutoff
// replaced by the analytic near-diagonal limit (ratio -> 1), so the result
// is capped at 1. Self-intersecting input yields epsilon_star = 0 with the
// witness pair.
TamenessResult tameness_constant(const DiscreteCurve& c);

struct HausdorffValue {
    double value = 0.0;
    double margin = 0.0;  // half the max sample spacing of each curve
};

HausdorffValue one_sided_hausdorff(const DiscreteCurve& a, const DiscreteCurve& b);
HausdorffValue hausdorff_distance(const DiscreteCurve& a, const DiscreteCurve& b);

// Unit normal at sample i on the side of region_hint.
TangentVec inward_normal(const DiscreteCurve& c, std::size_t i, const SurfacePoint& region_hint);

struct CurveMetrics {
    double length = 0.0;
    double max_curvature = 0.0;
    double tameness = 0.0;     // NaN for arcs
    double inj_radius_L = 0.0; // length/2 for closed curves, NaN for arcs
};

CurveMetrics curve_metrics(const DiscreteCurve& c);

}  // namespace curvebound
