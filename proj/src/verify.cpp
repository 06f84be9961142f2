#include "curvebound/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curvebound/spatial.hpp"

namespace curvebound {

std::uint64_t Rng::next() {
    s_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = s_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = std::max(uniform(), 1e-300);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
}

EnclosingBall circumscribed_ball(const SurfaceModel& m, std::span<const SurfacePoint> pts) {
    if (pts.empty()) fail(ErrorCode::input, "circumscribed_ball of empty set");
    auto max_dist = [&](const SurfacePoint& x) {
        double md = 0.0;
        std::size_t arg = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            double d = m.distance(x, pts[i]);
            if (d > md) {
                md = d;
                arg = i;
            }
        }
        return std::pair<double, std::size_t>{md, arg};
    };

    SurfacePoint x = karcher_centroid(m, pts);
    auto [r, far] = max_dist(x);
    EnclosingBall best{x, r};
    for (int k = 0; k < 48; ++k) {
        Vec2 u = m.log_map(x, pts[far]);
        double t = 1.0 / static_cast<double>(k + 2);
        x = m.exp_map(x, Vec2{t * u[0], t * u[1]});
        std::tie(r, far) = max_dist(x);
        if (r < best.radius) best = EnclosingBall{x, r};
    }
    return best;
}

BoundsProfile surface_profile(const SurfaceModel& m) {
    BoundsProfile p;
    p.K0 = m.curvature_bound();
    p.r0 = m.profile_r0();
    return p;
}

// ---------------------------------------------------------------------------
// Region chart: chained boundary polygons in the normal chart at the
// boundary's Karcher centroid, with even-odd interior test.
// ---------------------------------------------------------------------------

namespace {

struct RegionChart {
    SurfaceModel surf = SurfaceModel::plane();
    SurfacePoint center;
    std::vector<std::vector<Vec2>> polys;
    std::vector<SurfacePoint> all_samples;

    Vec2 to_chart(const SurfacePoint& p) const {
        if (surf.kind() == SurfaceKind::euclidean_plane || surf.kind() == SurfaceKind::flat_torus)
            return surf.flat_delta(center, p);
        return surf.log_map(center, p);
    }
    SurfacePoint from_chart(const Vec2& v) const { return surf.exp_map(center, v); }

    bool inside(const Vec2& v) const {
        bool in = false;
        for (const auto& poly : polys) {
            for (std::size_t i = 0; i < poly.size(); ++i) {
                const Vec2& p = poly[i];
                const Vec2& q = poly[(i + 1) % poly.size()];
                if ((p[1] > v[1]) != (q[1] > v[1])) {
                    double xint = p[0] + (v[1] - p[1]) * (q[0] - p[0]) / (q[1] - p[1]);
                    if (xint > v[0]) in = !in;
                }
            }
        }
        return in;
    }
};

RegionChart build_region_chart(const Region2D& region) {
    RegionChart ch;
    ch.surf = region.boundary.front().surface();
    for (const auto& comp : region.boundary)
        ch.all_samples.insert(ch.all_samples.end(), comp.points().begin(), comp.points().end());
    ch.center = karcher_centroid(ch.surf, ch.all_samples);

    double extent = 0.0;
    std::vector<std::vector<Vec2>> charts;
    for (const auto& comp : region.boundary) {
        std::vector<Vec2> cpts;
        cpts.reserve(comp.size());
        for (const auto& p : comp.points()) {
            Vec2 v = ch.to_chart(p);
            extent = std::max({extent, std::abs(v[0]), std::abs(v[1])});
            cpts.push_back(v);
        }
        charts.push_back(std::move(cpts));
    }
    double tol = 1e-6 * std::max(1.0, extent);

    std::vector<bool> used(region.boundary.size(), false);
    for (std::size_t i = 0; i < region.boundary.size(); ++i) {
        if (region.boundary[i].closed()) {
            ch.polys.push_back(charts[i]);
            used[i] = true;
        }
    }
    auto close2 = [](const Vec2& a, const Vec2& b, double t) {
        return std::hypot(a[0] - b[0], a[1] - b[1]) <= t;
    };
    // components must cross transversally at the corners they share
    auto check_corner = [](const Vec2& in_from, const Vec2& corner, const Vec2& out_to) {
        Vec2 din{corner[0] - in_from[0], corner[1] - in_from[1]};
        Vec2 dout{out_to[0] - corner[0], out_to[1] - corner[1]};
        double cr = din[0] * dout[1] - din[1] * dout[0];
        double ni = std::hypot(din[0], din[1]), no = std::hypot(dout[0], dout[1]);
        if (ni > 0.0 && no > 0.0 && std::abs(cr) / (ni * no) <= 1e-6)
            fail(ErrorCode::input, "boundary components meet tangentially (crossing angle <= 1e-6)");
    };
    for (std::size_t i = 0; i < region.boundary.size(); ++i) {
        if (used[i]) continue;
        std::vector<Vec2> poly = charts[i];
        used[i] = true;
        while (!close2(poly.back(), poly.front(), tol)) {
            bool extended = false;
            for (std::size_t j = 0; j < region.boundary.size(); ++j) {
                if (used[j]) continue;
                const auto& cj = charts[j];
                if (close2(cj.front(), poly.back(), tol)) {
                    check_corner(poly[poly.size() - 2], poly.back(), cj[1]);
                    poly.insert(poly.end(), cj.begin() + 1, cj.end());
                    used[j] = true;
                    extended = true;
                    break;
                }
                if (close2(cj.back(), poly.back(), tol)) {
                    check_corner(poly[poly.size() - 2], poly.back(), cj[cj.size() - 2]);
                    poly.insert(poly.end(), cj.rbegin() + 1, cj.rend());
                    used[j] = true;
                    extended = true;
                    break;
                }
            }
            if (!extended)
                fail(ErrorCode::input, "region boundary arcs do not chain into closed loops");
        }
        if (region.boundary.size() > 1)
            check_corner(poly[poly.size() - 2], poly.front(), poly[1]);  // closing junction
        ch.polys.push_back(std::move(poly));
    }
    return ch;
}

}  // namespace

Region2D Region2D::make(std::vector<DiscreteCurve> components, std::size_t marked_index) {
    if (components.empty()) fail(ErrorCode::input, "region needs at least one boundary component");
    const SurfaceModel& m = components.front().surface();
    for (const auto& c : components)
        if (!(c.surface() == m)) fail(ErrorCode::input, "region components live on different surfaces");
    if (marked_index >= components.front().size())
        fail(ErrorCode::input, "marked point index out of range on component 0");
    Region2D r{std::move(components), marked_index};
    build_region_chart(r);  // validates that arcs chain into closed loops
    return r;
}

// ---------------------------------------------------------------------------
// Engines
// ---------------------------------------------------------------------------

Verdict check_isoperimetric_loop(const DiscreteCurve& loop, const BoundsProfile& p) {
    if (!loop.closed()) fail(ErrorCode::input, "isoperimetric loop check needs a closed curve");
    p.validate();

    EnclosingBall ball = circumscribed_ball(loop.surface(), loop.points());
    if (!(ball.radius <= p.r0 / 2.0 * (1.0 + 1e-9)))
        fail(ErrorCode::precondition, "loop circumscribed radius " + std::to_string(ball.radius) +
                                          " exceeds r0/2 = " + std::to_string(p.r0 / 2.0));

    double area = std::abs(loop_area(loop.surface(), loop.points()));
    double len = loop.length();
    IsoConstants iso = iso_constants(p);

    Verdict v;
    v.engine = "isoperimetric-loop";
    v.lhs = area;
    v.rhs = iso.c_prime * len * len;
    v.margin = v.rhs - v.lhs;
    v.passed = v.lhs <= v.rhs * (1.0 + 1e-9) + 1e-15;
    v.counterexample = !v.passed;
    v.witness_point = ball.center;
    v.resolution["samples"] = static_cast<double>(loop.size());
    v.resolution["ball_radius"] = ball.radius;
    return v;
}

namespace {

std::size_t nearest_sample_on(const DiscreteCurve& L, const SurfacePoint& q) {
    double best = kInf;
    std::size_t besti = 0;
    for (std::size_t i = 0; i < L.size(); ++i) {
        double d = L.surface().distance(q, L.points()[i]);
        if (d < best) {
            best = d;
            besti = i;
        }
    }
    return besti;
}

}  // namespace

Verdict check_isoperimetric_arc(const DiscreteCurve& arc, const DiscreteCurve& L,
                                const BoundsProfile& p) {
    if (arc.closed()) fail(ErrorCode::input, "isoperimetric arc check needs an open arc");
    if (!(arc.surface() == L.surface())) fail(ErrorCode::input, "arc and base curve on different surfaces");
    p.validate();
    const SurfaceModel& m = L.surface();

    std::size_t i0 = nearest_sample_on(L, arc.points().front());
    std::size_t i1 = nearest_sample_on(L, arc.points().back());
    double tol_endpoint = std::max(1e-9, 1e-6 * L.max_spacing());
    if (m.distance(arc.points().front(), L.points()[i0]) > tol_endpoint ||
        m.distance(arc.points().back(), L.points()[i1]) > tol_endpoint)
        fail(ErrorCode::input, "arc endpoints do not lie on the base curve");

    double r_inj_L;
    if (L.closed()) {
        r_inj_L = L.length() / 2.0;
    } else {
        double s0 = L.arclength_at(i0), s1 = L.arclength_at(i1);
        r_inj_L = std::min({s0, s1, L.length() - s0, L.length() - s1});
        if (!(r_inj_L > 0.0)) fail(ErrorCode::precondition, "arc endpoints at the base curve's ends");
    }
    auto [delta, delta0] = delta_radii(p, r_inj_L);
    (void)delta0;

    // find x in L with the whole arc inside B_delta(x)
    auto arc_inside = [&](const SurfacePoint& x) {
        double md = 0.0;
        for (const auto& q : arc.points()) md = std::max(md, m.distance(x, q));
        return md <= delta * (1.0 + 1e-9);
    };
    std::optional<SurfacePoint> ball_center;
    SurfacePoint cen = karcher_centroid(m, arc.points());
    std::size_t icen = nearest_sample_on(L, cen);
    if (arc_inside(L.points()[icen])) {
        ball_center = L.points()[icen];
    } else {
        for (std::size_t i = 0; i < L.size() && !ball_center; ++i) {
            if (m.distance(L.points()[i], arc.points().front()) > delta) continue;
            if (arc_inside(L.points()[i])) ball_center = L.points()[i];
        }
    }
    if (!ball_center)
        fail(ErrorCode::precondition,
             "arc is not contained in any B_delta(x) with x on the base curve (delta = " +
                 std::to_string(delta) + ")");

    // assemble the loop gamma # reversed(alpha), alpha the shorter sub-arc of L
    std::vector<SurfacePoint> pts = arc.points();
    if (i0 != i1) {
        const long n = static_cast<long>(L.size());
        long step;
        long count;
        if (L.closed()) {
            long fwd = (static_cast<long>(i0) + n - static_cast<long>(i1)) % n;  // i1 -> i0, +1
            double fwd_len = std::fmod(L.arclength_at(i0) - L.arclength_at(i1) + 2.0 * L.length(),
                                       L.length());
            step = (fwd_len <= L.length() - fwd_len) ? +1 : -1;
            count = (step > 0) ? fwd : (n - fwd);
        } else {
            step = (i0 > i1) ? +1 : -1;
            count = std::abs(static_cast<long>(i0) - static_cast<long>(i1));
        }
        long idx = static_cast<long>(i1);
        for (long k = 0; k + 1 < count; ++k) {  // interior samples of alpha only
            idx = (idx + step + n) % n;
            pts.push_back(L.points()[static_cast<std::size_t>(idx)]);
        }
    }

    double area = (pts.size() >= 3) ? std::abs(loop_area(m, pts)) : 0.0;
    double len = arc.length();
    IsoConstants iso = iso_constants(p);

    Verdict v;
    v.engine = "isoperimetric-arc";
    v.lhs = area;
    v.rhs = iso.c * len * len;
    v.margin = v.rhs - v.lhs;
    v.passed = v.lhs <= v.rhs * (1.0 + 1e-9) + 1e-15;
    v.counterexample = !v.passed;
    v.witness_point = *ball_center;
    v.resolution["samples"] = static_cast<double>(arc.size());
    v.resolution["delta"] = delta;
    return v;
}

Verdict check_farthest_point_curvature(const DiscreteCurve& curve, const SurfacePoint& x,
                                       const BoundsProfile& p) {
    p.validate();
    const SurfaceModel& m = curve.surface();
    double rho = 0.0;
    std::size_t s0 = 0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        double d = m.distance(x, curve.points()[i]);
        if (d > rho) {
            rho = d;
            s0 = i;
        }
    }
    if (!curve.closed() && (s0 == 0 || s0 + 1 == curve.size()))
        fail(ErrorCode::precondition, "distance maximizer must be interior for arcs");

    DiskConstants dc = disk_constants(p);
    if (rho > dc.rho1 * (1.0 + 1e-12))
        fail(ErrorCode::domain, "curve reaches distance " + std::to_string(rho) +
                                    " > rho1 = " + std::to_string(dc.rho1));

    CurvatureProfile prof = curvature_profile(curve);
    Verdict v;
    v.engine = "farthest-point";
    v.lhs = prof.kappa[s0];
    v.rhs = dc.alpha / rho;
    v.margin = v.lhs - v.rhs;
    v.passed = v.lhs >= v.rhs * (1.0 - 1e-6);
    v.counterexample = !v.passed;
    v.witness_index = s0;
    v.witness_point = curve.points()[s0];
    v.resolution["samples"] = static_cast<double>(curve.size());
    v.resolution["rho"] = rho;
    return v;
}

Verdict check_small_ball_curvature(const DiscreteCurve& L, const BoundsProfile& p) {
    if (!L.closed()) fail(ErrorCode::input, "small-ball check needs a closed curve");
    p.validate();

    EnclosingBall ball = circumscribed_ball(L.surface(), L.points());
    DiskConstants dc = disk_constants(p);

    Verdict v;
    v.engine = "small-ball";
    v.resolution["samples"] = static_cast<double>(L.size());
    v.resolution["rho"] = ball.radius;
    v.witness_point = ball.center;
    if (ball.radius > dc.rho1) {
        v.applicable = false;
        v.passed = true;
        v.note = "not-applicable: no enclosing ball of radius <= rho1 found";
        return v;
    }
    CurvatureProfile prof = curvature_profile(L);
    v.lhs = prof.max_curvature;
    v.rhs = dc.alpha / ball.radius;
    v.margin = v.lhs - v.rhs;
    v.passed = v.lhs >= v.rhs * (1.0 - 1e-6);
    v.counterexample = !v.passed;
    v.witness_index = prof.argmax;
    return v;
}

OsculatingSearch find_osculating_free_disk(const Region2D& region, double rho) {
    const DiscreteCurve& gamma = region.boundary.front();
    const SurfaceModel& m = gamma.surface();
    RegionChart chart = build_region_chart(region);

    double lambda = 0.0;
    for (const auto& comp : region.boundary)
        lambda = std::max(lambda, curvature_profile(comp).max_curvature);
    double obstacle = kInf;
    for (std::size_t ci = 1; ci < region.boundary.size(); ++ci)
        for (const auto& q : region.boundary[ci].points())
            obstacle = std::min(obstacle, m.distance(region.marked(), q));

    BoundsProfile p = surface_profile(m);
    p.Lambda = lambda;
    p.obstacle_distance = obstacle;
    double rho0_bound = rho0(p);

    OsculatingSearch out;
    Verdict& v = out.verdict;
    v.engine = "osculating-disk";
    v.rhs = rho;
    v.resolution["rho0"] = rho0_bound;
    v.resolution["lambda_oracle"] = lambda;
    if (rho >= rho0_bound) v.note = "warning: rho >= rho0, existence not guaranteed; ";

    NearestIndex boundary_index(m, chart.all_samples);
    double h_b = 0.0;
    for (const auto& comp : region.boundary) h_b = std::max(h_b, comp.max_spacing());
    double tol_free = std::max(1e-12, h_b * h_b * std::max(lambda, 1.0 / rho));

    // orientation of the inward side at the marked station
    double s_marked = gamma.arclength_at(region.marked_index);
    double ds = 0.25 * gamma.max_spacing();
    auto station_normal_raw = [&](double s) {
        SurfacePoint g = gamma.point_at_arclength(s);
        Vec2 a = m.log_map(g, gamma.point_at_arclength(s - ds));
        Vec2 b = m.log_map(g, gamma.point_at_arclength(s + ds));
        Vec2 t{b[0] - a[0], b[1] - a[1]};
        double tn = norm2(t);
        return std::pair<SurfacePoint, Vec2>{g, Vec2{-t[1] / tn, t[0] / tn}};
    };
    double sigma = 0.0;
    {
        auto [g, nvec] = station_normal_raw(s_marked);
        for (double h = 0.5 * gamma.max_spacing(); h > 1e-9 && sigma == 0.0; h *= 0.5) {
            bool plus = chart.inside(chart.to_chart(m.exp_map(g, Vec2{h * nvec[0], h * nvec[1]})));
            bool minus = chart.inside(chart.to_chart(m.exp_map(g, Vec2{-h * nvec[0], -h * nvec[1]})));
            if (plus != minus) sigma = plus ? 1.0 : -1.0;
        }
        if (sigma == 0.0) fail(ErrorCode::input, "cannot determine the region's interior side");
    }

    auto min_clearance = [&](double s, SurfacePoint* center_out) {
        auto [g, nvec] = station_normal_raw(s);
        SurfacePoint center = m.exp_map(g, Vec2{sigma * rho * nvec[0], sigma * rho * nvec[1]});
        if (center_out) *center_out = center;
        return boundary_index.nearest(center).first;
    };

    double lo_station = gamma.closed() ? 0.0 : ds;
    double hi_station = gamma.closed() ? gamma.length() : gamma.length() - ds;
    for (std::size_t level_n : {512u, 2048u, 8192u, 32768u}) {
        std::vector<double> stations;
        stations.reserve(level_n);
        for (std::size_t k = 0; k < level_n; ++k) {
            double f = (static_cast<double>(k) + 0.5) / static_cast<double>(level_n);
            double s = lo_station + f * (hi_station - lo_station);
            if (gamma.closed()) s = std::fmod(s_marked + f * gamma.length(), gamma.length());
            stations.push_back(s);
        }
        if (!gamma.closed()) {
            std::sort(stations.begin(), stations.end(), [&](double a, double b) {
                return std::abs(a - s_marked) < std::abs(b - s_marked);
            });
        }
        bool all_conclusive = true;
        for (double s : stations) {
            SurfacePoint center;
            double clear = min_clearance(s, &center);
            if (clear >= rho - tol_free) {
                // golden-section polish of the clearance around the hit
                double span = gamma.length() / static_cast<double>(level_n);
                double a = s - span, b = s + span;
                const double gr = 0.61803398874989484;
                double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
                double f1 = min_clearance(x1, nullptr), f2 = min_clearance(x2, nullptr);
                for (int it = 0; it < 40; ++it) {
                    if (f1 < f2) {
                        a = x1;
                        x1 = x2;
                        f1 = f2;
                        x2 = a + gr * (b - a);
                        f2 = min_clearance(x2, nullptr);
                    } else {
                        b = x2;
                        x2 = x1;
                        f2 = f1;
                        x1 = b - gr * (b - a);
                        f1 = min_clearance(x1, nullptr);
                    }
                }
                double sbest = 0.5 * (a + b);
                double cbest = min_clearance(sbest, &center);
                if (cbest < clear) {  // polish must not lose the hit
                    cbest = min_clearance(s, &center);
                    sbest = s;
                }
                v.passed = true;
                v.lhs = cbest;
                v.margin = cbest - rho;
                v.witness_point = center;
                v.resolution["stations"] = static_cast<double>(level_n);
                v.resolution["tol_free"] = tol_free;
                out.center = center;
                out.station_arclength = sbest;
                v.note += "free disk found";
                return out;
            }
            if (clear >= rho - h_b / 2.0) all_conclusive = false;
        }
        if (level_n == 32768u) {
            v.passed = false;
            v.resolution["stations"] = static_cast<double>(level_n);
            v.resolution["tol_free"] = tol_free;
            if (all_conclusive) {
                // only a counterexample when the hypothesis rho < rho0 held
                v.counterexample = (rho < rho0_bound);
                v.note += "obstructed with conclusive margin at every station";
            } else {
                v.note += "inconclusive at resolution";
            }
        }
    }
    return out;
}

InscribedDisk inscribed_disk_oracle(const Region2D& region, int grid) {
    if (grid < 8) fail(ErrorCode::input, "inscribed_disk_oracle needs grid >= 8");
    RegionChart chart = build_region_chart(region);
    const SurfaceModel& m = region.boundary.front().surface();
    NearestIndex boundary_index(m, chart.all_samples);

    double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
    for (const auto& poly : chart.polys) {
        for (const auto& v : poly) {
            xmin = std::min(xmin, v[0]);
            xmax = std::max(xmax, v[0]);
            ymin = std::min(ymin, v[1]);
            ymax = std::max(ymax, v[1]);
        }
    }
    double step = std::max(xmax - xmin, ymax - ymin) / static_cast<double>(grid);
    if (!(step > 0.0)) fail(ErrorCode::input, "degenerate region bounding box");

    double best = -kInf;
    Vec2 best_v{0.0, 0.0};
    bool found = false;
    for (int i = 0; i <= grid; ++i) {
        for (int j = 0; j <= grid; ++j) {
            Vec2 v{xmin + step * i, ymin + step * j};
            if (v[0] > xmax || v[1] > ymax) continue;
            if (!chart.inside(v)) continue;
            double d = boundary_index.nearest(chart.from_chart(v)).first;
            if (d > best) {
                best = d;
                best_v = v;
                found = true;
            }
        }
    }
    if (!found) fail(ErrorCode::input, "region has empty interior at this grid resolution");

    // local ascent: walk away from the nearest boundary sample
    double walk = step;
    for (int it = 0; it < 200 && walk > 1e-12 * std::max(1.0, step); ++it) {
        auto [d, idx] = boundary_index.nearest(chart.from_chart(best_v));
        Vec2 bchart = chart.to_chart(chart.all_samples[idx]);
        Vec2 dir{best_v[0] - bchart[0], best_v[1] - bchart[1]};
        double n = norm2(dir);
        if (n <= 0.0) break;
        Vec2 cand{best_v[0] + walk * dir[0] / n, best_v[1] + walk * dir[1] / n};
        if (chart.inside(cand)) {
            double dc = boundary_index.nearest(chart.from_chart(cand)).first;
            if (dc > best) {
                best = dc;
                best_v = cand;
                continue;
            }
        }
        walk *= 0.6;
    }

    InscribedDisk out;
    out.radius = best;
    out.center = chart.from_chart(best_v);
    out.grid_step = step;
    return out;
}

Verdict check_ball_monotonicity(const SurfaceModel& m, const BoundsProfile& p,
                                std::span<const double> r_grid) {
    p.validate();
    MonotonicityConstants mono = monotonicity_constants(p);

    Verdict v;
    v.engine = "ball-area";
    v.passed = true;
    v.margin = kInf;
    v.resolution["grid"] = static_cast<double>(r_grid.size());
    for (double r : r_grid) {
        if (!(r > 0.0) || r > p.r0 / 2.0 * (1.0 + 1e-12))
            fail(ErrorCode::domain, "ball-area grid value " + std::to_string(r) +
                                        " outside (0, r0/2]");
        double area = m.ball_area(r);
        double rhs = mono.C_prime * r * r;
        double margin = area - rhs;
        if (margin < v.margin) {
            v.margin = margin;
            v.lhs = area;
            v.rhs = rhs;
            v.resolution["worst_r"] = r;
        }
        if (area < rhs * (1.0 - 1e-12)) {
            v.passed = false;
            v.counterexample = true;
        }
    }
    return v;
}

Verdict check_main_inequality(const DiscreteCurve& L, const DiscreteCurve& Lp, const DBracket& d,
                              const BoundsProfile& p) {
    if (!(d.lower >= 0.0) || !(d.upper >= d.lower))
        fail(ErrorCode::parameter, "main-inequality needs a bracket 0 <= lower <= upper");
    if (!(L.surface() == Lp.surface()))
        fail(ErrorCode::input, "main-inequality curves on different surfaces");

    BoundsProfile prof = p;
    double kL = curvature_profile(L).max_curvature;
    double kLp = curvature_profile(Lp).max_curvature;
    prof.Lambda = std::max(kL, kLp);
    prof.validate();

    MonotonicityConstants mono = monotonicity_constants(prof);
    DiskConstants dc = disk_constants(prof);
    double rho0_value = rho0(prof);
    auto [delta, delta0] = delta_radii(prof, std::min(L.length(), Lp.length()) / 2.0);
    (void)delta;
    EtaThresholds eta = eta_thresholds(prof, mono, delta0, rho0_value, dc.alpha);

    HausdorffValue dh = hausdorff_distance(L, Lp);
    double dh_lo = std::max(0.0, dh.value - dh.margin);
    double dh_hi = dh.value + dh.margin;

    Verdict v;
    v.engine = "main-inequality";
    v.lhs = d.upper;
    v.rhs = mono.C_prime * dh.value * dh.value;
    v.margin = v.lhs - v.rhs;
    v.resolution["R_prime"] = eta.R_prime;
    v.resolution["delta_H"] = dh.value;
    v.resolution["delta_H_margin"] = dh.margin;
    v.resolution["lambda_oracle"] = prof.Lambda;
    v.resolution["d_lower"] = d.lower;
    v.resolution["d_upper"] = d.upper;

    if (d.lower >= eta.R_prime) {
        v.branch = "hypothesis-false";
        v.passed = true;
    } else if (d.upper < eta.R_prime) {
        if (d.lower >= mono.C_prime * dh_hi * dh_hi) {
            v.branch = "conclusion-holds";
            v.passed = true;
        } else if (d.upper < mono.C_prime * dh_lo * dh_lo) {
            v.branch = "counterexample";
            v.passed = false;
            v.counterexample = true;
        } else {
            v.branch = "conclusion-indeterminate";
            v.passed = true;
            v.note = "bracket or Hausdorff margin too wide to decide the conclusion";
        }
    } else {
        v.branch = "hypothesis-indeterminate";
        v.passed = true;
        v.note = "R' lies inside the metric bracket";
    }
    return v;
}

// ---------------------------------------------------------------------------
// Random suites
// ---------------------------------------------------------------------------

namespace {

SurfacePoint random_base_point(const SurfaceModel& m, Rng& rng) {
    switch (m.kind()) {
        case SurfaceKind::euclidean_plane:
            return SurfacePoint(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
        case SurfaceKind::flat_torus:
            return SurfacePoint(rng.uniform(0.0, m.period()), rng.uniform(0.0, m.period()));
        case SurfaceKind::round_sphere: {
            double radius = 1.0 / std::sqrt(m.curvature_bound());
            double x = rng.normal(), y = rng.normal(), z = rng.normal();
            double n = std::sqrt(x * x + y * y + z * z);
            if (n == 0.0) return SurfacePoint(radius, 0.0, 0.0);
            return SurfacePoint(radius * x / n, radius * y / n, radius * z / n);
        }
        case SurfaceKind::hyperbolic_plane: {
            double r = 0.3 * std::sqrt(rng.uniform());
            double t = rng.uniform(0.0, 2.0 * kPi);
            return SurfacePoint(r * std::cos(t), r * std::sin(t));
        }
    }
    return SurfacePoint(0.0, 0.0);
}

// random 8-mode Fourier loop in the chart at a random base point, scaled
// into chart radius <= cap
DiscreteCurve random_fourier_loop(const SurfaceModel& m, Rng& rng, double cap, std::size_t samples) {
    for (int attempt = 0; attempt < 20; ++attempt) {
        SurfacePoint base = random_base_point(m, rng);
        std::array<double, 8> ax{}, bx{}, ay{}, by{};
        for (int k = 0; k < 8; ++k) {
            double decay = 1.0 / ((k + 1) * (k + 1));
            ax[k] = rng.normal() * decay;
            bx[k] = rng.normal() * decay;
            ay[k] = rng.normal() * decay;
            by[k] = rng.normal() * decay;
        }
        std::vector<Vec2> u(samples);
        double cx = 0.0, cy = 0.0;
        for (std::size_t j = 0; j < samples; ++j) {
            double th = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(samples);
            double x = 0.0, y = 0.0;
            for (int k = 0; k < 8; ++k) {
                x += ax[k] * std::cos((k + 1) * th) + bx[k] * std::sin((k + 1) * th);
                y += ay[k] * std::cos((k + 1) * th) + by[k] * std::sin((k + 1) * th);
            }
            u[j] = {x, y};
            cx += x;
            cy += y;
        }
        cx /= static_cast<double>(samples);
        cy /= static_cast<double>(samples);
        double sup = 0.0;
        for (auto& w : u) {
            w[0] -= cx;
            w[1] -= cy;
            sup = std::max(sup, norm2(w));
        }
        if (sup < 1e-9) continue;
        double scale = cap / sup;
        std::vector<SurfacePoint> pts;
        pts.reserve(samples);
        for (const auto& w : u) pts.push_back(m.exp_map(base, Vec2{scale * w[0], scale * w[1]}));
        try {
            return DiscreteCurve(m, std::move(pts), true);
        } catch (const Error&) {
            continue;  // stationary draw produced a duplicate sample
        }
    }
    fail(ErrorCode::resolution, "could not generate an admissible random loop");
}

DiscreteCurve geodesic_base_curve(const SurfaceModel& m, std::size_t samples) {
    std::vector<SurfacePoint> pts;
    pts.reserve(samples);
    switch (m.kind()) {
        case SurfaceKind::flat_torus: {
            for (std::size_t i = 0; i < samples; ++i)
                pts.emplace_back(m.period() * static_cast<double>(i) / static_cast<double>(samples),
                                 m.period() / 2.0);
            return DiscreteCurve(m, std::move(pts), true);
        }
        case SurfaceKind::euclidean_plane: {
            for (std::size_t i = 0; i < samples; ++i)
                pts.emplace_back(-4.0 + 8.0 * static_cast<double>(i) / static_cast<double>(samples - 1),
                                 0.0);
            return DiscreteCurve(m, std::move(pts), false);
        }
        case SurfaceKind::round_sphere: {
            double radius = 1.0 / std::sqrt(m.curvature_bound());
            for (std::size_t i = 0; i < samples; ++i) {
                double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(samples);
                pts.emplace_back(radius * std::cos(t), radius * std::sin(t), 0.0);
            }
            return DiscreteCurve(m, std::move(pts), true);
        }
        case SurfaceKind::hyperbolic_plane: {
            SurfacePoint origin(0.0, 0.0);
            for (std::size_t i = 0; i < samples; ++i) {
                double t = -2.0 + 4.0 * static_cast<double>(i) / static_cast<double>(samples - 1);
                pts.push_back(m.exp_map(origin, Vec2{t, 0.0}));
            }
            return DiscreteCurve(m, std::move(pts), false);
        }
    }
    fail(ErrorCode::scope, "no geodesic base curve for this kind");
}

}  // namespace

std::vector<Verdict> isoperimetric_loop_suite(const SurfaceModel& m, int cases, std::uint64_t seed) {
    Rng rng(seed);
    BoundsProfile p = surface_profile(m);
    double cap = 0.8 * std::min(p.r0 / 2.0, 1.0);
    std::vector<Verdict> out;
    out.reserve(cases);
    for (int i = 0; i < cases; ++i) {
        DiscreteCurve loop = random_fourier_loop(m, rng, cap, 384);
        Verdict v = check_isoperimetric_loop(loop, p);
        v.case_id = i;
        v.seed = seed;
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Verdict> isoperimetric_arc_suite(const SurfaceModel& m, int cases, std::uint64_t seed) {
    Rng rng(seed);
    BoundsProfile p = surface_profile(m);
    DiscreteCurve L = geodesic_base_curve(m, 1024);
    if (m.kind() == SurfaceKind::round_sphere) {
        p.eps = tameness_constant(resample_arclength(L, 512)).epsilon_star;
    } else {
        p.eps = 1.0;  // flat/hyperbolic geodesics realize d_M = d_L
    }

    std::vector<Verdict> out;
    out.reserve(cases);
    const std::size_t n = L.size();
    for (int c = 0; c < cases; ++c) {
        std::size_t ic = L.closed()
                             ? static_cast<std::size_t>(rng.uniform() * n) % n
                             : n / 4 + static_cast<std::size_t>(rng.uniform() * (n / 2)) % (n / 2);
        double r_inj_L = L.closed()
                             ? L.length() / 2.0
                             : std::min(L.arclength_at(ic), L.length() - L.arclength_at(ic));
        auto [delta, d0] = delta_radii(p, r_inj_L);
        (void)d0;
        double spacing = L.length() / static_cast<double>(L.closed() ? n : n - 1);
        std::size_t k = std::max<std::size_t>(2, static_cast<std::size_t>(0.3 * delta / spacing));
        std::size_t ia = L.closed() ? (ic + n - k) % n : ic - std::min(ic, k);
        std::size_t ib = L.closed() ? (ic + k) % n : std::min(n - 1, ic + k);

        const SurfacePoint& x = L.points()[ic];
        Vec2 A = m.log_map(x, L.points()[ia]);
        Vec2 B = m.log_map(x, L.points()[ib]);
        std::array<double, 4> amp{}, phase{};
        double psum = 0.0;
        for (int j = 0; j < 4; ++j) {
            amp[j] = std::abs(rng.normal()) / ((j + 1) * (j + 1));
            phase[j] = rng.uniform(0.0, 2.0 * kPi);
            psum += amp[j];
        }
        double pscale = (psum > 0) ? 0.45 * delta * rng.uniform(0.2, 1.0) / psum : 0.0;
        double ang = rng.uniform(0.0, 2.0 * kPi);
        Vec2 dir{std::cos(ang), std::sin(ang)};

        const std::size_t ns = 128;
        std::vector<SurfacePoint> pts(ns);
        for (std::size_t j = 0; j < ns; ++j) {
            double t = static_cast<double>(j) / static_cast<double>(ns - 1);
            double w = 0.0;
            for (int q = 0; q < 4; ++q) w += amp[q] * std::sin((q + 1) * kPi * t + phase[q] * t * (1 - t));
            Vec2 z{(1 - t) * A[0] + t * B[0] + pscale * w * dir[0],
                   (1 - t) * A[1] + t * B[1] + pscale * w * dir[1]};
            pts[j] = m.exp_map(x, z);
        }
        pts.front() = L.points()[ia];
        pts.back() = L.points()[ib];

        Verdict v = check_isoperimetric_arc(DiscreteCurve(m, std::move(pts), false), L, p);
        v.case_id = c;
        v.seed = seed;
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Verdict> small_ball_suite(const SurfaceModel& m, int cases, std::uint64_t seed) {
    Rng rng(seed);
    BoundsProfile p = surface_profile(m);
    DiskConstants dc = disk_constants(p);
    double rho_gen = 0.8 * std::min({dc.rho1, 0.45 * m.inj_radius(), 1.0});

    std::vector<Verdict> out;
    out.reserve(cases);
    for (int c = 0; c < cases; ++c) {
        SurfacePoint base = random_base_point(m, rng);
        const std::size_t ns = 512;
        std::vector<SurfacePoint> pts(ns);
        if (c == 0) {
            // exact metric circle: the bound is saturated as K0 -> 0
            for (std::size_t j = 0; j < ns; ++j) {
                double th = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(ns);
                pts[j] = m.exp_map(base, Vec2{rho_gen * std::cos(th), rho_gen * std::sin(th)});
            }
        } else {
            std::array<double, 5> a{}, b{};
            for (int q = 0; q < 5; ++q) {
                a[q] = rng.normal() / ((q + 1) * (q + 1));
                b[q] = rng.normal() / ((q + 1) * (q + 1));
            }
            double sup = 1e-12;
            std::vector<double> w(ns);
            for (std::size_t j = 0; j < ns; ++j) {
                double th = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(ns);
                double val = 0.0;
                for (int q = 0; q < 5; ++q)
                    val += a[q] * std::cos((q + 1) * th) + b[q] * std::sin((q + 1) * th);
                w[j] = val;
                sup = std::max(sup, std::abs(val));
            }
            for (std::size_t j = 0; j < ns; ++j) {
                double th = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(ns);
                double r = rho_gen * (0.55 + 0.4 * w[j] / sup);
                pts[j] = m.exp_map(base, Vec2{r * std::cos(th), r * std::sin(th)});
            }
        }
        Verdict v = check_small_ball_curvature(DiscreteCurve(m, std::move(pts), true), p);
        v.case_id = c;
        v.seed = seed;
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Verdict> farthest_point_suite(const SurfaceModel& m, int cases, std::uint64_t seed) {
    Rng rng(seed);
    BoundsProfile p = surface_profile(m);
    DiskConstants dc = disk_constants(p);
    double rho_gen = 0.8 * std::min({dc.rho1, 0.45 * m.inj_radius(), 1.0});

    std::vector<Verdict> out;
    out.reserve(cases);
    for (int c = 0; c < cases; ++c) {
        SurfacePoint base = random_base_point(m, rng);
        const std::size_t ns = 512;
        std::vector<SurfacePoint> pts(ns);
        if (c == 0) {
            for (std::size_t j = 0; j < ns; ++j) {
                double th = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(ns);
                pts[j] = m.exp_map(base, Vec2{rho_gen * std::cos(th), rho_gen * std::sin(th)});
            }
        } else {
            std::array<double, 5> a{}, b{};
            for (int q = 0; q < 5; ++q) {
                a[q] = rng.normal() / ((q + 1) * (q + 1));
                b[q] = rng.normal() / ((q + 1) * (q + 1));
            }
            double sup = 1e-12;
            std::vector<double> w(ns);
            for (std::size_t j = 0; j < ns; ++j) {
                double th = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(ns);
                double val = 0.0;
                for (int q = 0; q < 5; ++q)
                    val += a[q] * std::cos((q + 1) * th) + b[q] * std::sin((q + 1) * th);
                w[j] = val;
                sup = std::max(sup, std::abs(val));
            }
            for (std::size_t j = 0; j < ns; ++j) {
                double th = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(ns);
                double r = rho_gen * (0.55 + 0.4 * w[j] / sup);
                pts[j] = m.exp_map(base, Vec2{r * std::cos(th), r * std::sin(th)});
            }
        }
        Verdict v = check_farthest_point_curvature(DiscreteCurve(m, std::move(pts), true), base, p);
        v.case_id = c;
        v.seed = seed;
        out.push_back(std::move(v));
    }
    return out;
}

DiscreteCurve ellipse_curve(double a, double b, std::size_t samples) {
    SurfaceModel plane = SurfaceModel::plane();
    std::vector<SurfacePoint> pts;
    pts.reserve(samples);
    for (std::size_t j = 0; j < samples; ++j) {
        double t = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(samples);
        pts.emplace_back(a * std::cos(t), b * std::sin(t));
    }
    return DiscreteCurve(plane, std::move(pts), true);
}

std::vector<Verdict> osculating_suite(int grid) {
    std::vector<Verdict> out;
    int case_id = 0;

    auto run_case = [&](const DiscreteCurve& boundary, double a, double b) {
        Region2D region = Region2D::make({boundary}, 0);
        double lambda = curvature_profile(boundary).max_curvature;
        BoundsProfile p = surface_profile(boundary.surface());
        p.Lambda = lambda;
        double rho0_bound = rho0(p);
        double rho = 0.9 * rho0_bound;

        OsculatingSearch search = find_osculating_free_disk(region, rho);
        InscribedDisk oracle = inscribed_disk_oracle(region, grid);

        Verdict v = search.verdict;
        v.case_id = case_id++;
        v.resolution["ellipse_a"] = a;
        v.resolution["ellipse_b"] = b;
        v.resolution["rho"] = rho;
        v.resolution["oracle_radius"] = oracle.radius;
        v.resolution["oracle_grid_step"] = oracle.grid_step;
        // the scanned free radius must be consistent with the oracle
        if (v.passed && !(rho <= oracle.radius + oracle.grid_step)) {
            v.passed = false;
            v.note += "; scan radius exceeds the inscribed-disk oracle";
        }
        out.push_back(std::move(v));
    };

    run_case(ellipse_curve(1.0, 1.0, 1024), 1.0, 1.0);  // circle saturating 1/Lambda
    for (double a : {1.0, 2.0, 3.0, 4.0})
        for (double b : {0.5, 1.0}) run_case(ellipse_curve(a, b, 1024), a, b);
    return out;
}

std::vector<Verdict> main_inequality_random_suite(int cases, std::uint64_t seed) {
    Rng rng(seed);
    SurfaceModel torus = SurfaceModel::torus();
    BoundsProfile p = surface_profile(torus);

    std::vector<Verdict> out;
    out.reserve(cases);
    const std::size_t ns = 1024;
    for (int c = 0; c < cases; ++c) {
        std::array<double, 3> fa{}, fph{}, ga{}, gph{};
        for (int k = 0; k < 3; ++k) {
            double kk = static_cast<double>(k + 1);
            fa[k] = rng.uniform(0.0, 0.1 / (kk * kk * kk));
            fph[k] = rng.uniform(0.0, 2.0 * kPi);
            ga[k] = rng.uniform(0.0, 0.1 / (kk * kk * kk));
            gph[k] = rng.uniform(0.0, 2.0 * kPi);
        }
        auto f = [&](double x) {
            double y = 0.0;
            for (int k = 0; k < 3; ++k) y += fa[k] * std::cos((k + 1) * x + fph[k]);
            return y;
        };
        auto F = [&](double x) {  // Hamiltonian H(x, y) = F(x)
            double y = 0.0;
            for (int k = 0; k < 3; ++k) y += ga[k] * std::sin((k + 1) * x + gph[k]);
            return y;
        };
        auto Fp = [&](double x) {
            double y = 0.0;
            for (int k = 0; k < 3; ++k) y += ga[k] * (k + 1) * std::cos((k + 1) * x + gph[k]);
            return y;
        };

        std::vector<SurfacePoint> aa(ns), bb(ns);
        double fmax = -kInf, fmin = kInf;
        for (std::size_t j = 0; j < ns; ++j) {
            double x = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(ns);
            aa[j] = SurfacePoint(x, kPi + f(x));
            bb[j] = SurfacePoint(x, kPi + f(x) + Fp(x));
        }
        const int osc_grid = 8192;
        for (int j = 0; j < osc_grid; ++j) {
            double x = 2.0 * kPi * j / static_cast<double>(osc_grid);
            double v = F(x);
            fmax = std::max(fmax, v);
            fmin = std::min(fmin, v);
        }
        DiscreteCurve L(torus, std::move(aa), true);
        DiscreteCurve Lp(torus, std::move(bb), true);

        // strip lower bound: lobes between the graphs have area |F(x2)-F(x1)|
        // over consecutive zeros of F', so the min lobe is the smallest jump
        // of F between neighboring critical points
        std::vector<double> zeros;
        for (int j = 0; j < osc_grid; ++j) {
            double x1 = 2.0 * kPi * j / osc_grid;
            double x2 = 2.0 * kPi * (j + 1) / osc_grid;
            if (Fp(x1) == 0.0) {
                zeros.push_back(x1);
                continue;
            }
            if (Fp(x1) * Fp(x2) < 0.0) {
                double lo = x1, hi = x2;
                for (int it = 0; it < 60; ++it) {
                    double mid = 0.5 * (lo + hi);
                    if (Fp(lo) * Fp(mid) <= 0.0)
                        hi = mid;
                    else
                        lo = mid;
                }
                zeros.push_back(0.5 * (lo + hi));
            }
        }
        double lower = 0.0;
        if (zeros.size() >= 2) {
            lower = kInf;
            for (std::size_t z = 0; z < zeros.size(); ++z) {
                double x1 = zeros[z];
                double x2 = (z + 1 < zeros.size()) ? zeros[z + 1] : zeros[0] + 2.0 * kPi;
                lower = std::min(lower, std::abs(F(x2) - F(x1)));
            }
            if (!std::isfinite(lower)) lower = 0.0;
        }
        DBracket bracket{lower, (fmax - fmin) + 1e-7};
        Verdict v = check_main_inequality(L, Lp, bracket, p);
        v.case_id = c;
        v.seed = seed;
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace curvebound
