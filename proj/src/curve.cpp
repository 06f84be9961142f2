#include "curvebound/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curvebound/spatial.hpp"

namespace curvebound {

namespace {

constexpr double kIntersectTol = 1e-9;

// min distance between 2-D segments [a0,a1] and [b0,b1]
double segment_distance_2d(const Vec2& a0, const Vec2& a1, const Vec2& b0, const Vec2& b1) {
    auto sub = [](const Vec2& u, const Vec2& v) { return Vec2{u[0] - v[0], u[1] - v[1]}; };
    auto crossv = [](const Vec2& u, const Vec2& v) { return u[0] * v[1] - u[1] * v[0]; };
    auto dotv = [](const Vec2& u, const Vec2& v) { return u[0] * v[0] + u[1] * v[1]; };

    Vec2 d1 = sub(a1, a0), d2 = sub(b1, b0), r = sub(b0, a0);
    double denom = crossv(d1, d2);
    if (std::abs(denom) > 1e-300) {
        double t = crossv(r, d2) / denom;
        double s = crossv(r, d1) / denom;
        if (t >= 0.0 && t <= 1.0 && s >= 0.0 && s <= 1.0) return 0.0;
    }
    auto point_seg = [&](const Vec2& p, const Vec2& s0, const Vec2& s1) {
        Vec2 d = sub(s1, s0);
        double len2 = dotv(d, d);
        double t = len2 > 0.0 ? std::clamp(dotv(sub(p, s0), d) / len2, 0.0, 1.0) : 0.0;
        Vec2 proj{s0[0] + t * d[0], s0[1] + t * d[1]};
        return std::hypot(p[0] - proj[0], p[1] - proj[1]);
    };
    return std::min(std::min(point_seg(a0, b0, b1), point_seg(a1, b0, b1)),
                    std::min(point_seg(b0, a0, a1), point_seg(b1, a0, a1)));
}

}  // namespace

DiscreteCurve::DiscreteCurve(SurfaceModel m, std::vector<SurfacePoint> pts, bool closed)
    : surface_(m), pts_(std::move(pts)), closed_(closed) {
    if (pts_.size() < 8) fail(ErrorCode::input, "a DiscreteCurve needs at least 8 points");
    for (auto& p : pts_) {
        surface_.validate_point(p);
        p = surface_.normalize_point(p);
    }
    double max_step = surface_.inj_radius() / 4.0 * (1.0 + 1e-9);
    cum_.resize(pts_.size());
    cum_[0] = 0.0;
    for (std::size_t i = 1; i < pts_.size(); ++i) {
        double d = surface_.distance(pts_[i - 1], pts_[i]);
        if (d <= 1e-14)
            fail(ErrorCode::input, "duplicate consecutive point at index " + std::to_string(i));
        if (d > max_step)
            fail(ErrorCode::input, "consecutive samples too far apart at index " + std::to_string(i));
        cum_[i] = cum_[i - 1] + d;
        max_spacing_ = std::max(max_spacing_, d);
    }
    length_ = cum_.back();
    if (closed_) {
        double d = surface_.distance(pts_.back(), pts_.front());
        if (d <= 1e-14)
            fail(ErrorCode::input, "duplicate closing point at index " + std::to_string(pts_.size() - 1));
        if (d > max_step) fail(ErrorCode::input, "closing segment too long");
        length_ += d;
        max_spacing_ = std::max(max_spacing_, d);
    }
}

double DiscreteCurve::segment_length(std::size_t i) const {
    if (i + 1 < pts_.size()) return cum_[i + 1] - cum_[i];
    if (closed_ && i + 1 == pts_.size()) return length_ - cum_[i];
    fail(ErrorCode::input, "segment index out of range");
}

SurfacePoint DiscreteCurve::point_at_arclength(double s) const {
    if (closed_) {
        s = std::fmod(s, length_);
        if (s < 0.0) s += length_;
    } else {
        s = std::clamp(s, 0.0, length_);
    }
    auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    std::size_t i = (it == cum_.begin()) ? 0 : static_cast<std::size_t>(it - cum_.begin() - 1);
    if (i >= pts_.size() - 1 && !closed_) i = pts_.size() - 2;
    std::size_t j = (i + 1) % pts_.size();
    double seg = segment_length(i);
    double f = seg > 0.0 ? (s - cum_[i]) / seg : 0.0;
    if (f <= 0.0) return pts_[i];
    if (f >= 1.0) return pts_[j];
    Vec2 u = surface_.log_map(pts_[i], pts_[j]);
    return surface_.exp_map(pts_[i], Vec2{f * u[0], f * u[1]});
}

std::optional<std::pair<std::size_t, std::size_t>> DiscreteCurve::self_intersection() const {
    const std::size_t n = pts_.size();
    const std::size_t nseg = closed_ ? n : n - 1;
    auto seg_start = [&](std::size_t s) { return pts_[s]; };
    auto seg_end = [&](std::size_t s) { return pts_[(s + 1) % n]; };

    for (std::size_t i = 0; i < nseg; ++i) {
        double li = segment_length(i);
        for (std::size_t j = i + 2; j < nseg; ++j) {
            if (closed_ && i == 0 && j == nseg - 1) continue;  // cyclically adjacent
            double lj = segment_length(j);
            double d = surface_.distance(seg_start(i), seg_start(j));
            if (d > li + lj + kIntersectTol) continue;
            // local chart at the i-th segment start
            const SurfacePoint& base = seg_start(i);
            Vec2 a0{0.0, 0.0};
            Vec2 a1 = surface_.log_map(base, seg_end(i));
            Vec2 b0 = surface_.log_map(base, seg_start(j));
            Vec2 b1 = surface_.log_map(base, seg_end(j));
            if (segment_distance_2d(a0, a1, b0, b1) < kIntersectTol)
                return std::make_pair(i, j);
        }
    }
    return std::nullopt;
}

bool DiscreteCurve::embedded() const { return !self_intersection().has_value(); }

DiscreteCurve resample_arclength(const DiscreteCurve& c, std::size_t n) {
    if (n < 8) fail(ErrorCode::input, "resample_arclength needs n >= 8");
    if (!(c.length() > 0.0)) fail(ErrorCode::input, "cannot resample a degenerate curve");
    std::vector<SurfacePoint> out;
    out.reserve(n);
    if (c.closed()) {
        double step = c.length() / static_cast<double>(n);
        for (std::size_t k = 0; k < n; ++k) out.push_back(c.point_at_arclength(step * k));
    } else {
        double step = c.length() / static_cast<double>(n - 1);
        for (std::size_t k = 0; k < n; ++k) out.push_back(c.point_at_arclength(step * k));
    }
    return DiscreteCurve(c.surface(), std::move(out), c.closed());
}

CurvatureProfile curvature_profile(const DiscreteCurve& c) {
    const std::size_t n = c.size();
    if (n < 64) fail(ErrorCode::resolution, "curvature_profile needs at least 64 samples");
    const auto& pts = c.points();
    const SurfaceModel& m = c.surface();

    CurvatureProfile out;
    out.kappa.assign(n, 0.0);
    std::size_t first = c.closed() ? 0 : 1;
    std::size_t last = c.closed() ? n : n - 1;  // exclusive
    for (std::size_t i = first; i < last; ++i) {
        std::size_t ip = (i == 0) ? n - 1 : i - 1;
        std::size_t in = (i + 1) % n;
        Vec2 a = m.log_map(pts[i], pts[ip]);
        Vec2 b = m.log_map(pts[i], pts[in]);
        double h1 = norm2(a), h2 = norm2(b);
        double denom = h1 * h2 * (h1 + h2);
        if (denom <= 0.0) continue;
        Vec2 v{(h1 * h1 * b[0] - h2 * h2 * a[0]) / denom, (h1 * h1 * b[1] - h2 * h2 * a[1]) / denom};
        Vec2 w{2.0 * (h1 * b[0] + h2 * a[0]) / denom, 2.0 * (h1 * b[1] + h2 * a[1]) / denom};
        double speed = norm2(v);
        if (speed <= 0.0) continue;
        out.kappa[i] = std::abs(v[0] * w[1] - v[1] * w[0]) / (speed * speed * speed);
    }
    if (!c.closed()) {
        out.kappa[0] = out.kappa[1];
        out.kappa[n - 1] = out.kappa[n - 2];
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (out.kappa[i] > out.max_curvature) {
            out.max_curvature = out.kappa[i];
            out.argmax = i;
        }
    }
    return out;
}

double intrinsic_distance(const DiscreteCurve& c, std::size_t i, std::size_t j) {
    if (i >= c.size() || j >= c.size()) fail(ErrorCode::input, "sample index out of range");
    double t = std::abs(c.arclength_at(i) - c.arclength_at(j));
    if (c.closed()) t = std::min(t, c.length() - t);
    return t;
}

TamenessResult tameness_constant(const DiscreteCurve& c) {
    if (!c.closed()) fail(ErrorCode::input, "tameness_constant requires a closed curve");
    if (c.size() < 256) fail(ErrorCode::resolution, "tameness_constant needs at least 256 samples");

    TamenessResult r;
    r.resolution = c.max_spacing();
    r.cutoff = 4.0 * c.max_spacing();

    if (auto w = c.self_intersection()) {
        r.epsilon_star = 0.0;
        r.self_intersecting = true;
        r.witness_i = w->first;
        r.witness_j = w->second;
        return r;
    }

    const auto& pts = c.points();
    const SurfaceModel& m = c.surface();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            double dl = intrinsic_distance(c, i, j);
            if (dl < r.cutoff) continue;
            double dm = m.distance(pts[i], pts[j]);
            double ratio = dm / std::min(1.0, dl);
            if (ratio < best) {
                best = ratio;
                r.witness_i = i;
                r.witness_j = j;
            }
        }
    }
    // pairs below the cutoff contribute ratio -> 1, capping the infimum
    r.epsilon_star = std::min(best, 1.0);
    return r;
}

HausdorffValue one_sided_hausdorff(const DiscreteCurve& a, const DiscreteCurve& b) {
    if (!(a.surface() == b.surface()))
        fail(ErrorCode::input, "hausdorff distances need curves on the same surface");
    NearestIndex idx(b.surface(), b.points());
    const auto& pts = a.points();
    const std::size_t n = pts.size();
    double margin = 0.5 * (a.max_spacing() + b.max_spacing());

    const std::size_t stride = 16;
    if (n < 4 * stride) {
        double sup = 0.0;
        for (const auto& p : pts) sup = std::max(sup, idx.nearest(p).first);
        return {sup, margin};
    }

    // exact sup via branch and bound: the distance-to-b function is
    // 1-Lipschitz in arclength along a, so a whole span can be skipped when
    // (d_lo + d_hi + gap)/2 cannot beat the current maximum
    std::vector<std::size_t> anchors;
    for (std::size_t i = 0; i < n; i += stride) anchors.push_back(i);
    if (!a.closed() && anchors.back() != n - 1) anchors.push_back(n - 1);

    std::vector<double> anchor_d(anchors.size());
    double sup = 0.0;
    for (std::size_t k = 0; k < anchors.size(); ++k) {
        anchor_d[k] = idx.nearest(pts[anchors[k]]).first;
        sup = std::max(sup, anchor_d[k]);
    }
    const std::size_t nspan = a.closed() ? anchors.size() : anchors.size() - 1;
    for (std::size_t k = 0; k < nspan; ++k) {
        std::size_t i0 = anchors[k];
        std::size_t i1 = anchors[(k + 1) % anchors.size()];
        double gap = (i1 > i0) ? a.arclength_at(i1) - a.arclength_at(i0)
                               : a.length() - a.arclength_at(i0) + a.arclength_at(i1);
        double bound = 0.5 * (anchor_d[k] + anchor_d[(k + 1) % anchors.size()] + gap);
        if (bound <= sup) continue;
        for (std::size_t j = (i0 + 1) % n; j != i1; j = (j + 1) % n)
            sup = std::max(sup, idx.nearest(pts[j]).first);
    }
    return {sup, margin};
}

HausdorffValue hausdorff_distance(const DiscreteCurve& a, const DiscreteCurve& b) {
    HausdorffValue ab = one_sided_hausdorff(a, b);
    HausdorffValue ba = one_sided_hausdorff(b, a);
    return {std::max(ab.value, ba.value), std::max(ab.margin, ba.margin)};
}

TangentVec inward_normal(const DiscreteCurve& c, std::size_t i, const SurfacePoint& region_hint) {
    const auto& pts = c.points();
    const std::size_t n = pts.size();
    if (i >= n) fail(ErrorCode::input, "sample index out of range");
    const SurfaceModel& m = c.surface();

    Vec2 t;
    if (c.closed()) {
        Vec2 a = m.log_map(pts[i], pts[(i + n - 1) % n]);
        Vec2 b = m.log_map(pts[i], pts[(i + 1) % n]);
        t = {b[0] - a[0], b[1] - a[1]};
    } else if (i == 0) {
        t = m.log_map(pts[0], pts[1]);
    } else if (i == n - 1) {
        Vec2 a = m.log_map(pts[n - 1], pts[n - 2]);
        t = {-a[0], -a[1]};
    } else {
        Vec2 a = m.log_map(pts[i], pts[i - 1]);
        Vec2 b = m.log_map(pts[i], pts[i + 1]);
        t = {b[0] - a[0], b[1] - a[1]};
    }
    double tn = norm2(t);
    if (tn <= 0.0) fail(ErrorCode::input, "degenerate tangent");
    Vec2 nvec{-t[1] / tn, t[0] / tn};

    Vec2 w = m.log_map(pts[i], region_hint);
    double wn = norm2(w);
    if (wn <= 1e-14) fail(ErrorCode::input, "region hint coincides with the curve point");
    double side = w[0] * nvec[0] + w[1] * nvec[1];
    if (std::abs(side) <= 1e-12 * wn)
        fail(ErrorCode::ambiguity, "region hint lies on the curve's tangent line");
    if (side < 0.0) nvec = {-nvec[0], -nvec[1]};
    return TangentVec{pts[i], nvec, 1.0};
}

CurveMetrics curve_metrics(const DiscreteCurve& c) {
    CurveMetrics met;
    met.length = c.length();
    met.max_curvature = (c.size() >= 64) ? curvature_profile(c).max_curvature
                                         : std::numeric_limits<double>::quiet_NaN();
    if (c.closed()) {
        met.inj_radius_L = c.length() / 2.0;
        met.tameness = (c.size() >= 256) ? tameness_constant(c).epsilon_star
                                         : std::numeric_limits<double>::quiet_NaN();
    } else {
        met.inj_radius_L = std::numeric_limits<double>::quiet_NaN();
        met.tameness = std::numeric_limits<double>::quiet_NaN();
    }
    return met;
}

}  // namespace curvebound
