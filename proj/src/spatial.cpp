#include "curvebound/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace curvebound {

NearestIndex::NearestIndex(const SurfaceModel& m, std::span<const SurfacePoint> pts)
    : surface_(m), pts_(pts.begin(), pts.end()) {
    if (pts_.empty()) fail(ErrorCode::input, "NearestIndex over an empty point set");
    switch (m.kind()) {
        case SurfaceKind::hyperbolic_plane:
            mode_ = Mode::brute;
            return;
        case SurfaceKind::flat_torus: {
            mode_ = Mode::grid2_wrap;
            double period = m.period();
            int n = static_cast<int>(std::clamp(std::sqrt(static_cast<double>(pts_.size())), 1.0, 1024.0));
            nx_ = ny_ = std::max(1, n);
            x0_ = y0_ = 0.0;
            cell_ = period / nx_;
            cells_.assign(static_cast<std::size_t>(nx_) * ny_, {});
            for (std::size_t i = 0; i < pts_.size(); ++i) {
                int ix = std::min(nx_ - 1, static_cast<int>(pts_[i].x() / cell_));
                int iy = std::min(ny_ - 1, static_cast<int>(pts_[i].y() / cell_));
                cells_[static_cast<std::size_t>(iy) * nx_ + ix].push_back(i);
            }
            return;
        }
        case SurfaceKind::euclidean_plane: {
            mode_ = Mode::grid2;
            double xmin = pts_[0].x(), xmax = xmin, ymin = pts_[0].y(), ymax = ymin;
            for (const auto& p : pts_) {
                xmin = std::min(xmin, p.x());
                xmax = std::max(xmax, p.x());
                ymin = std::min(ymin, p.y());
                ymax = std::max(ymax, p.y());
            }
            double ext = std::max({xmax - xmin, ymax - ymin, 1e-12});
            int n = static_cast<int>(std::clamp(std::sqrt(static_cast<double>(pts_.size())), 1.0, 1024.0));
            nx_ = ny_ = std::max(1, n);
            cell_ = ext / nx_ * (1.0 + 1e-12);
            x0_ = xmin;
            y0_ = ymin;
            cells_.assign(static_cast<std::size_t>(nx_) * ny_, {});
            for (std::size_t i = 0; i < pts_.size(); ++i) {
                int ix = std::clamp(static_cast<int>((pts_[i].x() - x0_) / cell_), 0, nx_ - 1);
                int iy = std::clamp(static_cast<int>((pts_[i].y() - y0_) / cell_), 0, ny_ - 1);
                cells_[static_cast<std::size_t>(iy) * nx_ + ix].push_back(i);
            }
            return;
        }
        case SurfaceKind::round_sphere: {
            mode_ = Mode::grid3;
            double radius = 1.0 / std::sqrt(m.curvature_bound());
            int n = static_cast<int>(std::clamp(std::sqrt(static_cast<double>(pts_.size())), 2.0, 128.0));
            nx_ = ny_ = nz_ = std::max(2, n);
            cell_ = 2.0 * radius / nx_ * (1.0 + 1e-12);
            x0_ = y0_ = z0_ = -radius;
            cells_.assign(static_cast<std::size_t>(nx_) * ny_ * nz_, {});
            for (std::size_t i = 0; i < pts_.size(); ++i) {
                int ix = std::clamp(static_cast<int>((pts_[i].x() - x0_) / cell_), 0, nx_ - 1);
                int iy = std::clamp(static_cast<int>((pts_[i].y() - y0_) / cell_), 0, ny_ - 1);
                int iz = std::clamp(static_cast<int>((pts_[i].z() - z0_) / cell_), 0, nz_ - 1);
                cells_[(static_cast<std::size_t>(iz) * ny_ + iy) * nx_ + ix].push_back(i);
            }
            return;
        }
    }
    mode_ = Mode::brute;
}

std::pair<double, std::size_t> NearestIndex::nearest(const SurfacePoint& q) const {
    switch (mode_) {
        case Mode::brute: return nearest_brute(q);
        case Mode::grid2:
        case Mode::grid2_wrap: return nearest_grid2(q);
        case Mode::grid3: return nearest_grid3(q);
    }
    return nearest_brute(q);
}

std::pair<double, std::size_t> NearestIndex::nearest_brute(const SurfacePoint& q) const {
    double best = std::numeric_limits<double>::infinity();
    std::size_t besti = 0;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
        double d = surface_.distance(q, pts_[i]);
        if (d < best) {
            best = d;
            besti = i;
        }
    }
    return {best, besti};
}

std::pair<double, std::size_t> NearestIndex::nearest_grid2(const SurfacePoint& q) const {
    const bool wrap = (mode_ == Mode::grid2_wrap);
    const double period = surface_.period();
    double qx = q.x(), qy = q.y();
    int cx, cy;
    double clamp_off = 0.0;
    if (wrap) {
        cx = std::min(nx_ - 1, static_cast<int>(qx / cell_));
        cy = std::min(ny_ - 1, static_cast<int>(qy / cell_));
    } else {
        double gx = std::clamp(qx, x0_, x0_ + nx_ * cell_);
        double gy = std::clamp(qy, y0_, y0_ + ny_ * cell_);
        clamp_off = std::hypot(qx - gx, qy - gy);
        cx = std::clamp(static_cast<int>((gx - x0_) / cell_), 0, nx_ - 1);
        cy = std::clamp(static_cast<int>((gy - y0_) / cell_), 0, ny_ - 1);
    }

    auto chord = [&](std::size_t i) {
        double dx = pts_[i].x() - qx;
        double dy = pts_[i].y() - qy;
        if (wrap) {
            dx = std::abs(dx);
            dy = std::abs(dy);
            dx = std::min(dx, period - dx);
            dy = std::min(dy, period - dy);
        }
        return std::hypot(dx, dy);
    };

    double best = std::numeric_limits<double>::infinity();
    std::size_t besti = 0;
    int maxring = std::max(nx_, ny_);
    if (wrap) maxring = maxring / 2 + 1;
    for (int r = 0; r <= maxring; ++r) {
        if (static_cast<double>(r - 1) * cell_ - clamp_off > best) break;
        for (int dy = -r; dy <= r; ++dy) {
            for (int dx = -r; dx <= r; ++dx) {
                if (std::max(std::abs(dx), std::abs(dy)) != r) continue;
                int ix = cx + dx, iy = cy + dy;
                if (wrap) {
                    ix = ((ix % nx_) + nx_) % nx_;
                    iy = ((iy % ny_) + ny_) % ny_;
                } else if (ix < 0 || ix >= nx_ || iy < 0 || iy >= ny_) {
                    continue;
                }
                for (std::size_t i : cells_[static_cast<std::size_t>(iy) * nx_ + ix]) {
                    double d = chord(i);
                    if (d < best) {
                        best = d;
                        besti = i;
                    }
                }
            }
        }
    }
    return {best, besti};
}

std::pair<double, std::size_t> NearestIndex::nearest_grid3(const SurfacePoint& q) const {
    double radius = 1.0 / std::sqrt(surface_.curvature_bound());
    double gx = std::clamp(q.x(), x0_, x0_ + nx_ * cell_);
    double gy = std::clamp(q.y(), y0_, y0_ + ny_ * cell_);
    double gz = std::clamp(q.z(), z0_, z0_ + nz_ * cell_);
    int cx = std::clamp(static_cast<int>((gx - x0_) / cell_), 0, nx_ - 1);
    int cy = std::clamp(static_cast<int>((gy - y0_) / cell_), 0, ny_ - 1);
    int cz = std::clamp(static_cast<int>((gz - z0_) / cell_), 0, nz_ - 1);

    auto chord = [&](std::size_t i) {
        double dx = pts_[i].x() - q.x();
        double dy = pts_[i].y() - q.y();
        double dz = pts_[i].z() - q.z();
        return std::sqrt(dx * dx + dy * dy + dz * dz);
    };

    double best = std::numeric_limits<double>::infinity();
    std::size_t besti = 0;
    int maxring = std::max({nx_, ny_, nz_});
    for (int r = 0; r <= maxring; ++r) {
        if (static_cast<double>(r - 1) * cell_ > best) break;
        for (int dz = -r; dz <= r; ++dz) {
            for (int dy = -r; dy <= r; ++dy) {
                for (int dx = -r; dx <= r; ++dx) {
                    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) != r) continue;
                    int ix = cx + dx, iy = cy + dy, iz = cz + dz;
                    if (ix < 0 || ix >= nx_ || iy < 0 || iy >= ny_ || iz < 0 || iz >= nz_) continue;
                    for (std::size_t i : cells_[(static_cast<std::size_t>(iz) * ny_ + iy) * nx_ + ix]) {
                        double d = chord(i);
                        if (d < best) {
                            best = d;
                            besti = i;
                        }
                    }
                }
            }
        }
    }
    double geo = 2.0 * radius * std::asin(std::min(best / (2.0 * radius), 1.0));
    return {geo, besti};
}

}  // namespace curvebound
