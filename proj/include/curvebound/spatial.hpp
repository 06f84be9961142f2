#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "curvebound/surface.hpp"

namespace curvebound {

// Uniform-grid nearest-sample index over a point cloud on one surface.
// Plane/torus bucket the chart (torus cells wrap); the sphere buckets the
// embedding, where chord order equals geodesic order. The hyperbolic chart
// is not distance-monotone, so that kind falls back to a linear scan.
class NearestIndex {
public:
    NearestIndex(const SurfaceModel& m, std::span<const SurfacePoint> pts);

    // (geodesic distance, index of the nearest stored sample)
    std::pair<double, std::size_t> nearest(const SurfacePoint& q) const;

    std::size_t size() const { return pts_.size(); }

private:
    enum class Mode { grid2, grid2_wrap, grid3, brute };

    std::pair<double, std::size_t> nearest_brute(const SurfacePoint& q) const;
    std::pair<double, std::size_t> nearest_grid2(const SurfacePoint& q) const;
    std::pair<double, std::size_t> nearest_grid3(const SurfacePoint& q) const;

    SurfaceModel surface_;
    std::vector<SurfacePoint> pts_;
    Mode mode_;

    // grid data
    int nx_ = 0, ny_ = 0, nz_ = 0;
    double x0_ = 0, y0_ = 0, z0_ = 0;
    double cell_ = 1.0;
    std::vector<std::vector<std::size_t>> cells_;
};

}  // namespace curvebound
