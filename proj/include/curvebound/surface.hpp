#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "curvebound/errors.hpp"

namespace curvebound {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Four homogeneous 2-D models with closed-form distance, exp/log and areas.
enum class SurfaceKind {
    euclidean_plane,
    flat_torus,
    round_sphere,
    hyperbolic_plane,
};

const char* surface_kind_name(SurfaceKind k);
SurfaceKind surface_kind_from_name(const std::string& name);

// Point storage is chart-dependent:
//   plane/torus      -> (x, y, 0), torus reduced into [0, period)^2
//   round_sphere     -> extrinsic 3-vector of norm 1/sqrt(K0)
//   hyperbolic_plane -> Poincare-disk coordinates (x, y, 0), |z| < 1
struct SurfacePoint {
    std::array<double, 3> c{0.0, 0.0, 0.0};

    SurfacePoint() = default;
    SurfacePoint(double x, double y) : c{x, y, 0.0} {}
    SurfacePoint(double x, double y, double z) : c{x, y, z} {}

    double x() const { return c[0]; }
    double y() const { return c[1]; }
    double z() const { return c[2]; }
};

using Vec2 = std::array<double, 2>;

double norm2(const Vec2& v);

class SurfaceModel;

// Tangent vector in the orthonormal frame the model installs at `base`.
// `norm` caches the metric norm (equals the Euclidean norm of components
// because the frame is orthonormal).
struct TangentVec {
    SurfacePoint base;
    Vec2 components{0.0, 0.0};
    double norm = 0.0;

    static TangentVec make(const SurfaceModel& m, const SurfacePoint& base, const Vec2& comp);
};

class SurfaceModel {
public:
    static SurfaceModel plane();
    static SurfaceModel torus(double period = 2.0 * kPi);
    static SurfaceModel sphere(double curvature);
    static SurfaceModel hyperbolic(double curvature);

    SurfaceKind kind() const { return kind_; }
    // |K| bound; identically 0 for the flat kinds.
    double curvature_bound() const { return K0_; }
    double period() const { return period_; }
    double inj_radius() const { return inj_radius_; }
    // Largest r0 usable in a BoundsProfile for this model (respects the
    // validity domain r0*sqrt(K0) < pi of the comparison constants).
    double profile_r0() const;

    bool operator==(const SurfaceModel& o) const {
        return kind_ == o.kind_ && K0_ == o.K0_ && period_ == o.period_;
    }

    // Throws Error(input) for coordinates invalid for the kind.
    void validate_point(const SurfacePoint& p) const;
    // Torus: reduce mod period. Sphere: renormalize to exact radius.
    SurfacePoint normalize_point(const SurfacePoint& p) const;

    double distance(const SurfacePoint& p, const SurfacePoint& q) const;

    // Riemannian exponential in the frame at p. Sets *beyond_inj when the
    // requested length reaches the injectivity radius (sphere/torus); the
    // result is still the geodesic flow image.
    SurfacePoint exp_map(const SurfacePoint& p, const Vec2& v, bool* beyond_inj = nullptr) const;
    SurfacePoint exp_map(const TangentVec& v, bool* beyond_inj = nullptr) const;

    // Inverse of exp_map for d(p,q) < inj_radius; throws Error(ambiguity)
    // at or beyond the cut locus.
    Vec2 log_map(const SurfacePoint& p, const SurfacePoint& q) const;

    std::vector<SurfacePoint> geodesic_between(const SurfacePoint& p, const SurfacePoint& q,
                                               std::size_t samples) const;

    // Area of the metric ball of radius r (0 < r < inj_radius).
    double ball_area(double r) const;

    // Minimal planar representative of q - p on the flat kinds.
    Vec2 flat_delta(const SurfacePoint& p, const SurfacePoint& q) const;

    // Incremental planar lift of a loop on the flat kinds; throws
    // Error(scope) when the increments do not close up (essential loop).
    std::vector<Vec2> lift_loop(std::span<const SurfacePoint> pts) const;

private:
    SurfaceModel(SurfaceKind k, double K0, double period, double inj);

    SurfaceKind kind_;
    double K0_;
    double period_;
    double inj_radius_;
};

// Karcher mean of a point cloud contained in a small ball; used as fan
// center for areas and as the seed for enclosing-ball searches.
SurfacePoint karcher_centroid(const SurfaceModel& m, std::span<const SurfacePoint> pts);

// Signed omega-area of the disk extension of a closed sample loop that fits
// in a metric ball of radius < inj_radius. Counterclockwise in the chart is
// positive. Flat kinds: lift + shoelace; curved kinds: geodesic fan from the
// Karcher centroid with angle excess/defect per triangle.
double loop_area(const SurfaceModel& m, std::span<const SurfacePoint> pts);

// Fan construction made available separately so tests can compare the two
// disk extensions on the flat kinds.
double loop_area_fan(const SurfaceModel& m, std::span<const SurfacePoint> pts);

}  // namespace curvebound
