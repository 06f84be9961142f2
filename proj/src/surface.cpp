#include "curvebound/surface.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace curvebound {

namespace {

using Vec3 = std::array<double, 3>;
using cplx = std::complex<double>;

Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 scale(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double norm3(const Vec3& a) { return std::sqrt(dot(a, a)); }
Vec3 normalized(const Vec3& a) {
    double n = norm3(a);
    return {a[0] / n, a[1] / n, a[2] / n};
}

double wrap_mod(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0.0) r += period;
    if (r >= period) r -= period;  // fmod rounding at the seam
    return r;
}

// Orthonormal tangent frame on the round sphere: deterministic in p.
struct SphereFrame {
    Vec3 e1, e2;
};

SphereFrame sphere_frame(const Vec3& p, double radius) {
    Vec3 phat = scale(p, 1.0 / radius);
    Vec3 zaxis{0.0, 0.0, 1.0};
    Vec3 c = cross(zaxis, phat);
    SphereFrame f;
    if (dot(c, c) < 1e-18) {
        Vec3 xaxis{1.0, 0.0, 0.0};
        Vec3 t = add(xaxis, scale(phat, -dot(xaxis, phat)));
        f.e1 = normalized(t);
    } else {
        f.e1 = normalized(c);
    }
    f.e2 = cross(phat, f.e1);
    return f;
}

cplx to_cplx(const SurfacePoint& p) { return {p.c[0], p.c[1]}; }

cplx mobius_to_origin(const cplx& z, const cplx& w) {
    return (w - z) / (1.0 - std::conj(z) * w);
}

cplx mobius_from_origin(const cplx& z, const cplx& w) {
    return (w + z) / (1.0 + std::conj(z) * w);
}

}  // namespace

double norm2(const Vec2& v) { return std::hypot(v[0], v[1]); }

const char* surface_kind_name(SurfaceKind k) {
    switch (k) {
        case SurfaceKind::euclidean_plane: return "euclidean_plane";
        case SurfaceKind::flat_torus: return "flat_torus";
        case SurfaceKind::round_sphere: return "round_sphere";
        case SurfaceKind::hyperbolic_plane: return "hyperbolic_plane";
    }
    return "unknown";
}

SurfaceKind surface_kind_from_name(const std::string& name) {
    if (name == "euclidean_plane" || name == "plane") return SurfaceKind::euclidean_plane;
    if (name == "flat_torus" || name == "torus") return SurfaceKind::flat_torus;
    if (name == "round_sphere" || name == "sphere") return SurfaceKind::round_sphere;
    if (name == "hyperbolic_plane" || name == "hyperbolic") return SurfaceKind::hyperbolic_plane;
    fail(ErrorCode::input, "unknown surface kind '" + name + "'");
}

SurfaceModel::SurfaceModel(SurfaceKind k, double K0, double period, double inj)
    : kind_(k), K0_(K0), period_(period), inj_radius_(inj) {}

SurfaceModel SurfaceModel::plane() {
    return SurfaceModel(SurfaceKind::euclidean_plane, 0.0, 0.0, kInf);
}

SurfaceModel SurfaceModel::torus(double period) {
    if (!(period > 0.0)) fail(ErrorCode::input, "flat_torus requires period > 0");
    return SurfaceModel(SurfaceKind::flat_torus, 0.0, period, period / 2.0);
}

SurfaceModel SurfaceModel::sphere(double curvature) {
    if (!(curvature > 0.0)) fail(ErrorCode::input, "round_sphere requires curvature > 0");
    return SurfaceModel(SurfaceKind::round_sphere, curvature, 0.0, kPi / std::sqrt(curvature));
}

SurfaceModel SurfaceModel::hyperbolic(double curvature) {
    if (!(curvature > 0.0)) fail(ErrorCode::input, "hyperbolic_plane requires curvature > 0");
    return SurfaceModel(SurfaceKind::hyperbolic_plane, curvature, 0.0, kInf);
}

double SurfaceModel::profile_r0() const {
    if (K0_ == 0.0) return inj_radius_;
    // stay strictly inside the sin validity domain r0*sqrt(K0) < pi
    return std::min(inj_radius_, 0.999 * kPi / std::sqrt(K0_));
}

void SurfaceModel::validate_point(const SurfacePoint& p) const {
    for (double v : p.c) {
        if (!std::isfinite(v)) fail(ErrorCode::input, "non-finite point coordinate");
    }
    switch (kind_) {
        case SurfaceKind::euclidean_plane:
        case SurfaceKind::flat_torus:
            break;
        case SurfaceKind::round_sphere: {
            double radius = 1.0 / std::sqrt(K0_);
            double n = norm3(p.c);
            if (std::abs(n - radius) > 1e-9 * radius)
                fail(ErrorCode::input, "sphere point norm " + std::to_string(n) +
                                           " differs from radius " + std::to_string(radius));
            break;
        }
        case SurfaceKind::hyperbolic_plane: {
            double n = std::hypot(p.c[0], p.c[1]);
            if (n >= 1.0 - 1e-12)
                fail(ErrorCode::input, "hyperbolic point must satisfy |z| < 1, got " + std::to_string(n));
            break;
        }
    }
}

SurfacePoint SurfaceModel::normalize_point(const SurfacePoint& p) const {
    SurfacePoint q = p;
    switch (kind_) {
        case SurfaceKind::euclidean_plane:
        case SurfaceKind::hyperbolic_plane:
            q.c[2] = 0.0;
            break;
        case SurfaceKind::flat_torus:
            q.c[0] = wrap_mod(p.c[0], period_);
            q.c[1] = wrap_mod(p.c[1], period_);
            q.c[2] = 0.0;
            break;
        case SurfaceKind::round_sphere: {
            double radius = 1.0 / std::sqrt(K0_);
            double n = norm3(p.c);
            q.c = scale(p.c, radius / n);
            break;
        }
    }
    return q;
}

double SurfaceModel::distance(const SurfacePoint& p, const SurfacePoint& q) const {
    switch (kind_) {
        case SurfaceKind::euclidean_plane:
            return std::hypot(q.c[0] - p.c[0], q.c[1] - p.c[1]);
        case SurfaceKind::flat_torus: {
            double best = kInf;
            for (int i = -1; i <= 1; ++i) {
                for (int j = -1; j <= 1; ++j) {
                    double dx = q.c[0] - p.c[0] + i * period_;
                    double dy = q.c[1] - p.c[1] + j * period_;
                    best = std::min(best, std::hypot(dx, dy));
                }
            }
            return best;
        }
        case SurfaceKind::round_sphere: {
            double radius = 1.0 / std::sqrt(K0_);
            Vec3 cr = cross(p.c, q.c);
            double theta = std::atan2(norm3(cr), dot(p.c, q.c));
            return radius * theta;
        }
        case SurfaceKind::hyperbolic_plane: {
            cplx w = mobius_to_origin(to_cplx(p), to_cplx(q));
            return 2.0 * std::atanh(std::min(std::abs(w), 1.0 - 1e-17)) / std::sqrt(K0_);
        }
    }
    return 0.0;
}

SurfacePoint SurfaceModel::exp_map(const SurfacePoint& p, const Vec2& v, bool* beyond_inj) const {
    double len = norm2(v);
    if (beyond_inj) *beyond_inj = (len >= inj_radius_);
    switch (kind_) {
        case SurfaceKind::euclidean_plane:
            return SurfacePoint(p.c[0] + v[0], p.c[1] + v[1]);
        case SurfaceKind::flat_torus:
            return normalize_point(SurfacePoint(p.c[0] + v[0], p.c[1] + v[1]));
        case SurfaceKind::round_sphere: {
            if (len == 0.0) return p;
            double radius = 1.0 / std::sqrt(K0_);
            SphereFrame f = sphere_frame(p.c, radius);
            Vec3 dir = normalized(add(scale(f.e1, v[0]), scale(f.e2, v[1])));
            double theta = len / radius;
            Vec3 out = add(scale(p.c, std::cos(theta)), scale(dir, radius * std::sin(theta)));
            return normalize_point(SurfacePoint(out[0], out[1], out[2]));
        }
        case SurfaceKind::hyperbolic_plane: {
            if (len == 0.0) return p;
            cplx z = to_cplx(p);
            // frame is conformal: chart direction equals frame direction
            cplx dir(v[0] / len, v[1] / len);
            double rhat = len * std::sqrt(K0_);
            cplx w = std::tanh(rhat / 2.0) * dir;
            cplx out = mobius_from_origin(z, w);
            return SurfacePoint(out.real(), out.imag());
        }
    }
    return p;
}

SurfacePoint SurfaceModel::exp_map(const TangentVec& v, bool* beyond_inj) const {
    return exp_map(v.base, v.components, beyond_inj);
}

Vec2 SurfaceModel::log_map(const SurfacePoint& p, const SurfacePoint& q) const {
    switch (kind_) {
        case SurfaceKind::euclidean_plane:
            return {q.c[0] - p.c[0], q.c[1] - p.c[1]};
        case SurfaceKind::flat_torus: {
            double d = distance(p, q);
            if (d >= inj_radius_ * (1.0 - 1e-12))
                fail(ErrorCode::ambiguity, "log_map at or beyond the torus cut locus");
            return flat_delta(p, q);
        }
        case SurfaceKind::round_sphere: {
            double radius = 1.0 / std::sqrt(K0_);
            Vec3 phat = scale(p.c, 1.0 / radius);
            Vec3 cr = cross(p.c, q.c);
            double theta = std::atan2(norm3(cr), dot(p.c, q.c));
            if (theta >= kPi * (1.0 - 1e-12))
                fail(ErrorCode::ambiguity, "log_map of nearly antipodal sphere points");
            if (theta == 0.0) return {0.0, 0.0};
            Vec3 w = add(q.c, scale(phat, -dot(q.c, phat)));
            double wn = norm3(w);
            if (wn == 0.0) return {0.0, 0.0};
            Vec3 dir = scale(w, 1.0 / wn);
            SphereFrame f = sphere_frame(p.c, radius);
            double len = theta * radius;
            return {len * dot(dir, f.e1), len * dot(dir, f.e2)};
        }
        case SurfaceKind::hyperbolic_plane: {
            cplx w = mobius_to_origin(to_cplx(p), to_cplx(q));
            double aw = std::abs(w);
            if (aw == 0.0) return {0.0, 0.0};
            double d = 2.0 * std::atanh(std::min(aw, 1.0 - 1e-17)) / std::sqrt(K0_);
            cplx dir = w / aw;
            return {d * dir.real(), d * dir.imag()};
        }
    }
    return {0.0, 0.0};
}

std::vector<SurfacePoint> SurfaceModel::geodesic_between(const SurfacePoint& p, const SurfacePoint& q,
                                                         std::size_t samples) const {
    if (samples < 2) fail(ErrorCode::input, "geodesic_between needs at least 2 samples");
    double d = distance(p, q);
    if (d >= inj_radius_)
        fail(ErrorCode::ambiguity, "geodesic_between beyond the injectivity radius");
    Vec2 u = log_map(p, q);
    std::vector<SurfacePoint> out;
    out.reserve(samples);
    out.push_back(p);
    for (std::size_t i = 1; i + 1 < samples; ++i) {
        double f = static_cast<double>(i) / static_cast<double>(samples - 1);
        out.push_back(exp_map(p, Vec2{f * u[0], f * u[1]}));
    }
    out.push_back(q);
    return out;
}

double SurfaceModel::ball_area(double r) const {
    if (!(r > 0.0)) fail(ErrorCode::domain, "ball_area requires r > 0");
    if (r >= inj_radius_) fail(ErrorCode::domain, "ball_area requires r < inj_radius");
    switch (kind_) {
        case SurfaceKind::euclidean_plane:
        case SurfaceKind::flat_torus:
            return kPi * r * r;
        case SurfaceKind::round_sphere:
            return (2.0 * kPi / K0_) * (1.0 - std::cos(std::sqrt(K0_) * r));
        case SurfaceKind::hyperbolic_plane:
            return (2.0 * kPi / K0_) * (std::cosh(std::sqrt(K0_) * r) - 1.0);
    }
    return 0.0;
}

Vec2 SurfaceModel::flat_delta(const SurfacePoint& p, const SurfacePoint& q) const {
    if (kind_ == SurfaceKind::euclidean_plane)
        return {q.c[0] - p.c[0], q.c[1] - p.c[1]};
    if (kind_ != SurfaceKind::flat_torus)
        fail(ErrorCode::scope, "flat_delta is defined on the flat kinds only");
    Vec2 best{0.0, 0.0};
    double bestn = kInf;
    for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
            double dx = q.c[0] - p.c[0] + i * period_;
            double dy = q.c[1] - p.c[1] + j * period_;
            double n = std::hypot(dx, dy);
            if (n < bestn) {
                bestn = n;
                best = {dx, dy};
            }
        }
    }
    return best;
}

std::vector<Vec2> SurfaceModel::lift_loop(std::span<const SurfacePoint> pts) const {
    if (kind_ != SurfaceKind::euclidean_plane && kind_ != SurfaceKind::flat_torus)
        fail(ErrorCode::scope, "lift_loop is defined on the flat kinds only");
    if (pts.size() < 3) fail(ErrorCode::input, "lift_loop needs at least 3 points");
    std::vector<Vec2> lift(pts.size());
    lift[0] = {pts[0].c[0], pts[0].c[1]};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        Vec2 d = flat_delta(pts[i - 1], pts[i]);
        lift[i] = {lift[i - 1][0] + d[0], lift[i - 1][1] + d[1]};
    }
    Vec2 closing = flat_delta(pts.back(), pts.front());
    double gapx = lift.back()[0] + closing[0] - lift[0][0];
    double gapy = lift.back()[1] + closing[1] - lift[0][1];
    if (std::hypot(gapx, gapy) > 1e-9)
        fail(ErrorCode::scope, "loop does not lift to a closed planar curve (essential loop)");
    return lift;
}

TangentVec TangentVec::make(const SurfaceModel&, const SurfacePoint& base, const Vec2& comp) {
    return TangentVec{base, comp, norm2(comp)};
}

SurfacePoint karcher_centroid(const SurfaceModel& m, std::span<const SurfacePoint> pts) {
    if (pts.empty()) fail(ErrorCode::input, "centroid of empty point set");
    switch (m.kind()) {
        case SurfaceKind::euclidean_plane:
        case SurfaceKind::flat_torus: {
            // incremental lift so clouds straddling the seam average correctly
            double lx = pts[0].c[0], ly = pts[0].c[1];
            double sx = lx, sy = ly;
            double px = lx, py = ly;
            SurfacePoint prev = pts[0];
            for (std::size_t i = 1; i < pts.size(); ++i) {
                Vec2 d = m.flat_delta(prev, pts[i]);
                px += d[0];
                py += d[1];
                sx += px;
                sy += py;
                prev = pts[i];
            }
            double n = static_cast<double>(pts.size());
            return m.normalize_point(SurfacePoint(sx / n, sy / n));
        }
        case SurfaceKind::round_sphere: {
            double radius = 1.0 / std::sqrt(m.curvature_bound());
            Vec3 mean{0, 0, 0};
            for (const auto& p : pts) mean = add(mean, p.c);
            mean = scale(mean, 1.0 / static_cast<double>(pts.size()));
            SurfacePoint seed;
            if (norm3(mean) > 0.05 * radius) {
                seed = m.normalize_point(SurfacePoint(mean[0], mean[1], mean[2]));
            } else {
                // spread-out loop: seed at the pole of the mean bivector
                Vec3 axis{0, 0, 0};
                for (std::size_t i = 0; i + 1 < pts.size(); ++i)
                    axis = add(axis, cross(pts[i].c, pts[i + 1].c));
                if (norm3(axis) == 0.0) axis = {0.0, 0.0, 1.0};
                SurfacePoint a = m.normalize_point(SurfacePoint(axis[0], axis[1], axis[2]));
                SurfacePoint b = m.normalize_point(SurfacePoint(-axis[0], -axis[1], -axis[2]));
                auto maxdist = [&](const SurfacePoint& x) {
                    double md = 0.0;
                    for (const auto& p : pts) md = std::max(md, m.distance(x, p));
                    return md;
                };
                seed = (maxdist(a) <= maxdist(b)) ? a : b;
            }
            SurfacePoint x = seed;
            for (int it = 0; it < 12; ++it) {
                double ux = 0.0, uy = 0.0;
                for (const auto& p : pts) {
                    Vec2 l = m.log_map(x, p);
                    ux += l[0];
                    uy += l[1];
                }
                ux /= static_cast<double>(pts.size());
                uy /= static_cast<double>(pts.size());
                x = m.exp_map(x, Vec2{ux, uy});
                if (std::hypot(ux, uy) < 1e-14) break;
            }
            return x;
        }
        case SurfaceKind::hyperbolic_plane: {
            double sx = 0.0, sy = 0.0;
            for (const auto& p : pts) {
                sx += p.c[0];
                sy += p.c[1];
            }
            SurfacePoint x(sx / pts.size(), sy / pts.size());
            for (int it = 0; it < 12; ++it) {
                double ux = 0.0, uy = 0.0;
                for (const auto& p : pts) {
                    Vec2 l = m.log_map(x, p);
                    ux += l[0];
                    uy += l[1];
                }
                ux /= static_cast<double>(pts.size());
                uy /= static_cast<double>(pts.size());
                x = m.exp_map(x, Vec2{ux, uy});
                if (std::hypot(ux, uy) < 1e-14) break;
            }
            return x;
        }
    }
    return pts[0];
}

namespace {

double shoelace(const std::vector<Vec2>& poly) {
    double a = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % poly.size()];
        a += p[0] * q[1] - q[0] * p[1];
    }
    return 0.5 * a;
}

// Signed geodesic triangle area on the sphere (Van Oosterom-Strackee).
double sphere_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c, double radius) {
    Vec3 ah = scale(a, 1.0 / radius), bh = scale(b, 1.0 / radius), ch = scale(c, 1.0 / radius);
    double num = dot(ah, cross(bh, ch));
    double den = 1.0 + dot(ah, bh) + dot(bh, ch) + dot(ch, ah);
    double excess = 2.0 * std::atan2(num, den);
    return excess * radius * radius;
}

// Signed geodesic triangle area in the Poincare model: angle defect with
// the chart orientation (the model is conformal, so chart angles are true).
double hyperbolic_triangle_area(const SurfaceModel& m, const SurfacePoint& a, const SurfacePoint& b,
                                const SurfacePoint& c) {
    auto corner = [&](const SurfacePoint& v, const SurfacePoint& p, const SurfacePoint& q) {
        cplx wp = mobius_to_origin(to_cplx(v), to_cplx(p));
        cplx wq = mobius_to_origin(to_cplx(v), to_cplx(q));
        if (std::abs(wp) == 0.0 || std::abs(wq) == 0.0) return 0.0;
        double ang = std::arg(wq / wp);
        return std::abs(ang);
    };
    double A = corner(a, b, c);
    double B = corner(b, c, a);
    double C = corner(c, a, b);
    double defect = kPi - A - B - C;
    if (defect < 0.0) defect = 0.0;  // thin-triangle roundoff
    cplx ab = to_cplx(b) - to_cplx(a);
    cplx ac = to_cplx(c) - to_cplx(a);
    double orient = ab.real() * ac.imag() - ab.imag() * ac.real();
    double sgn = (orient >= 0.0) ? 1.0 : -1.0;
    return sgn * defect / m.curvature_bound();
}

void check_fan_containment(const SurfaceModel& m, const SurfacePoint& center,
                           std::span<const SurfacePoint> pts) {
    double rmax = 0.0;
    for (const auto& p : pts) rmax = std::max(rmax, m.distance(center, p));
    if (rmax >= m.inj_radius() * (1.0 - 1e-9))
        fail(ErrorCode::scope, "loop is not contained in a metric ball of radius < inj_radius");
}

}  // namespace

double loop_area_fan(const SurfaceModel& m, std::span<const SurfacePoint> pts) {
    if (pts.size() < 3) fail(ErrorCode::input, "loop_area needs at least 3 points");
    SurfacePoint c = karcher_centroid(m, pts);
    check_fan_containment(m, c, pts);
    double area = 0.0;
    switch (m.kind()) {
        case SurfaceKind::euclidean_plane:
        case SurfaceKind::flat_torus: {
            std::vector<Vec2> lift = m.lift_loop(pts);
            Vec2 cl = m.flat_delta(pts[0], c);
            Vec2 cc{lift[0][0] + cl[0], lift[0][1] + cl[1]};
            for (std::size_t i = 0; i < lift.size(); ++i) {
                const Vec2& p = lift[i];
                const Vec2& q = lift[(i + 1) % lift.size()];
                area += 0.5 * ((p[0] - cc[0]) * (q[1] - cc[1]) - (q[0] - cc[0]) * (p[1] - cc[1]));
            }
            break;
        }
        case SurfaceKind::round_sphere: {
            double radius = 1.0 / std::sqrt(m.curvature_bound());
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const SurfacePoint& p = pts[i];
                const SurfacePoint& q = pts[(i + 1) % pts.size()];
                area += sphere_triangle_area(c.c, p.c, q.c, radius);
            }
            break;
        }
        case SurfaceKind::hyperbolic_plane: {
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const SurfacePoint& p = pts[i];
                const SurfacePoint& q = pts[(i + 1) % pts.size()];
                area += hyperbolic_triangle_area(m, c, p, q);
            }
            break;
        }
    }
    return area;
}

double loop_area(const SurfaceModel& m, std::span<const SurfacePoint> pts) {
    if (pts.size() < 3) fail(ErrorCode::input, "loop_area needs at least 3 points");
    switch (m.kind()) {
        case SurfaceKind::euclidean_plane:
        case SurfaceKind::flat_torus: {
            SurfacePoint c = karcher_centroid(m, pts);
            check_fan_containment(m, c, pts);
            return shoelace(m.lift_loop(pts));
        }
        case SurfaceKind::round_sphere:
        case SurfaceKind::hyperbolic_plane:
            return loop_area_fan(m, pts);
    }
    return 0.0;
}

}  // namespace curvebound
