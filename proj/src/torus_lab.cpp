#include "curvebound/torus_lab.hpp"

#include <algorithm>
#include <cmath>

namespace curvebound {

GraphHamiltonian GraphHamiltonian::H(int n) {
    if (n < 1) fail(ErrorCode::input, "H_n needs n >= 1");
    return GraphHamiltonian{1.0 / n, n};
}

GraphHamiltonian GraphHamiltonian::G(int n) {
    if (n < 1) fail(ErrorCode::input, "G_n needs n >= 1");
    return GraphHamiltonian{std::pow(n, -1.5), n};
}

SurfacePoint hamiltonian_flow(const GraphHamiltonian& h, double t, const SurfaceModel& m,
                              const SurfacePoint& p) {
    if (m.kind() != SurfaceKind::flat_torus)
        fail(ErrorCode::scope, "graph Hamiltonian flows are defined on the flat torus");
    double x = p.x();
    double y = p.y() + t * h.amplitude * h.frequency * std::cos(h.frequency * x);
    return m.normalize_point(SurfacePoint(x, y));
}

FamilyKind family_kind_from_name(const std::string& name) {
    if (name == "L" || name == "l") return FamilyKind::L;
    if (name == "K" || name == "k") return FamilyKind::K;
    fail(ErrorCode::input, "unknown family kind '" + name + "' (expected L or K)");
}

const char* family_kind_name(FamilyKind k) { return k == FamilyKind::L ? "L" : "K"; }

double family_amplitude(FamilyKind kind, int n) {
    return kind == FamilyKind::L ? 1.0 : 1.0 / std::sqrt(static_cast<double>(n));
}

DiscreteCurve base_circle(std::size_t samples) {
    SurfaceModel torus = SurfaceModel::torus();
    std::vector<SurfacePoint> pts;
    pts.reserve(samples);
    for (std::size_t j = 0; j < samples; ++j)
        pts.emplace_back(2.0 * kPi * static_cast<double>(j) / static_cast<double>(samples), 0.0);
    return DiscreteCurve(torus, std::move(pts), true);
}

DiscreteCurve family_curve_graph_sampled(FamilyKind kind, int n, std::size_t samples) {
    if (n < 1) fail(ErrorCode::input, "family curves need n >= 1");
    if (samples < 64 * static_cast<std::size_t>(n))
        fail(ErrorCode::resolution, "family curve needs at least 64*n samples");
    SurfaceModel torus = SurfaceModel::torus();
    double amp = family_amplitude(kind, n);
    std::vector<SurfacePoint> pts;
    pts.reserve(samples);
    for (std::size_t j = 0; j < samples; ++j) {
        double x = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(samples);
        pts.push_back(torus.normalize_point(SurfacePoint(x, amp * std::cos(n * x))));
    }
    return DiscreteCurve(torus, std::move(pts), true);
}

DiscreteCurve family_curve(FamilyKind kind, int n, std::size_t samples) {
    return resample_arclength(family_curve_graph_sampled(kind, n, samples), samples);
}

namespace {

// piecewise-linear view of a graph-like torus curve on the unwrapped x axis
struct GraphView {
    std::vector<double> xs;  // strictly increasing lift, spanning one period
    std::vector<double> ys;  // lifted alongside
    double period = 2.0 * kPi;

    double x0() const { return xs.front(); }

    double eval(double x) const {
        double span = period;
        double t = std::fmod(x - xs.front(), span);
        if (t < 0.0) t += span;
        double xq = xs.front() + t;
        auto it = std::upper_bound(xs.begin(), xs.end(), xq);
        if (it == xs.begin() || it == xs.end()) {
            // closing segment from (xs.back(), ys.back()) to (xs.front()+span, ys.front())
            double xa = xs.back(), ya = ys.back();
            double xb = xs.front() + span, yb = ys.front();
            if (xq < xs.front()) xq += span;
            double f = (xb > xa) ? (xq - xa) / (xb - xa) : 0.0;
            return ya + f * (yb - ya);
        }
        std::size_t i = static_cast<std::size_t>(it - xs.begin());
        double f = (xs[i] > xs[i - 1]) ? (xq - xs[i - 1]) / (xs[i] - xs[i - 1]) : 0.0;
        return ys[i - 1] + f * (ys[i] - ys[i - 1]);
    }
};

GraphView make_graph_view(const DiscreteCurve& c) {
    if (c.surface().kind() != SurfaceKind::flat_torus)
        fail(ErrorCode::scope, "lobe areas are defined for torus graph curves");
    if (!c.closed()) fail(ErrorCode::input, "lobe areas need closed graph curves");
    const auto& pts = c.points();
    const SurfaceModel& m = c.surface();
    GraphView g;
    g.period = m.period();
    g.xs.resize(pts.size());
    g.ys.resize(pts.size());
    g.xs[0] = pts[0].x();
    g.ys[0] = pts[0].y();
    for (std::size_t i = 1; i < pts.size(); ++i) {
        Vec2 d = m.flat_delta(pts[i - 1], pts[i]);
        if (!(d[0] > 0.0))
            fail(ErrorCode::input, "curve is not graph-like: x is not strictly increasing at index " +
                                       std::to_string(i));
        g.xs[i] = g.xs[i - 1] + d[0];
        g.ys[i] = g.ys[i - 1] + d[1];
    }
    Vec2 close = m.flat_delta(pts.back(), pts.front());
    if (!(close[0] > 0.0)) fail(ErrorCode::input, "curve is not graph-like at the closing segment");
    double span = g.xs.back() + close[0] - g.xs.front();
    if (std::abs(span - g.period) > 1e-9)
        fail(ErrorCode::input, "graph curve does not wind once around the x direction");
    double ywind = g.ys.back() + close[1] - g.ys.front();
    if (std::abs(ywind) > 1e-9)
        fail(ErrorCode::input, "graph curve winds in the y direction");
    return g;
}

double wrap_to_half(double v, double period) {
    double r = std::fmod(v, period);
    if (r > period / 2.0) r -= period;
    if (r <= -period / 2.0) r += period;
    return r;
}

// sample index range of xs lifted into the window (u, v), v <= u + period
std::vector<std::size_t> indices_in_window(const GraphView& g, double u, double v) {
    double span = g.period;
    double us = g.x0() + std::fmod(u - g.x0(), span);
    if (us < g.x0()) us += span;
    double vs = us + (v - u);
    std::vector<std::size_t> out;
    auto push_range = [&](double lo, double hi) {
        auto itlo = std::upper_bound(g.xs.begin(), g.xs.end(), lo);
        auto ithi = std::lower_bound(g.xs.begin(), g.xs.end(), hi);
        for (auto it = itlo; it < ithi; ++it)
            out.push_back(static_cast<std::size_t>(it - g.xs.begin()));
    };
    if (vs <= g.x0() + span) {
        push_range(us, vs);
    } else {
        push_range(us, g.x0() + span);
        push_range(g.x0(), vs - span);
    }
    return out;
}

}  // namespace

std::vector<double> lobe_areas(const DiscreteCurve& a, const DiscreteCurve& b) {
    const SurfaceModel& m = a.surface();
    if (!(m == b.surface())) fail(ErrorCode::input, "lobe areas need curves on the same torus");
    GraphView fa = make_graph_view(a);
    GraphView fb = make_graph_view(b);
    double period = fa.period;

    auto h = [&](double x) { return wrap_to_half(fa.eval(x) - fb.eval(x), period); };

    // merged x grid of both curves
    std::vector<double> grid;
    grid.reserve(fa.xs.size() + fb.xs.size());
    for (double x : fa.xs) grid.push_back(std::fmod(x - fa.x0() + period, period));
    for (double x : fb.xs) grid.push_back(std::fmod(x - fb.x0() + period, period));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    // sign changes -> bisection on the interpolants
    std::vector<double> crossings;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double x1 = grid[i];
        double x2 = (i + 1 < grid.size()) ? grid[i + 1] : grid[0] + period;
        double h1 = h(x1), h2 = h(x2);
        if (h1 == 0.0) {
            crossings.push_back(x1);
            continue;
        }
        if (h1 * h2 < 0.0) {
            double lo = x1, hi = x2;
            for (int it = 0; it < 80; ++it) {
                double mid = 0.5 * (lo + hi);
                if (h(lo) * h(mid) <= 0.0)
                    hi = mid;
                else
                    lo = mid;
                if (hi - lo < 1e-12) break;
            }
            crossings.push_back(0.5 * (lo + hi));
        }
    }

    std::vector<double> areas;
    if (crossings.empty()) {
        // single annular band between the curves
        double integral = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double x1 = grid[i];
            double x2 = (i + 1 < grid.size()) ? grid[i + 1] : grid[0] + period;
            integral += 0.5 * (h(x1) + h(x2)) * (x2 - x1);
        }
        areas.push_back(std::abs(integral));
        return areas;
    }
    if (crossings.size() % 2 != 0)
        fail(ErrorCode::input,
             "odd crossing count: curves look non-transverse, perturb one of them slightly");

    for (std::size_t i = 0; i < crossings.size(); ++i) {
        double u = crossings[i];
        double v = (i + 1 < crossings.size()) ? crossings[i + 1] : crossings[0] + period;
        if (!(v > u)) continue;

        std::vector<SurfacePoint> poly;
        SurfacePoint cu = m.normalize_point(SurfacePoint(u, fa.eval(u)));
        SurfacePoint cv = m.normalize_point(SurfacePoint(v, fa.eval(v)));
        poly.push_back(cu);
        for (std::size_t idx : indices_in_window(fa, u, v)) poly.push_back(a.points()[idx]);
        poly.push_back(cv);
        std::vector<std::size_t> bwin = indices_in_window(fb, u, v);
        for (auto it = bwin.rbegin(); it != bwin.rend(); ++it) poly.push_back(b.points()[*it]);
        if (poly.size() < 3) continue;
        areas.push_back(std::abs(loop_area(m, poly)));
    }
    return areas;
}

FamilyReport family_report(FamilyKind kind, int n) {
    if (n < 2) fail(ErrorCode::input, "family_report needs n >= 2");
    const std::size_t nsamp = 4096 * static_cast<std::size_t>(n);

    DiscreteCurve L0 = base_circle(4096);
    DiscreteCurve fam_graph = family_curve_graph_sampled(kind, n, nsamp);
    DiscreteCurve fam = resample_arclength(fam_graph, nsamp);

    FamilyReport rep;
    rep.kind = kind;
    rep.n = n;

    GraphHamiltonian ham = (kind == FamilyKind::L) ? GraphHamiltonian::H(n) : GraphHamiltonian::G(n);
    rep.hofer_upper = ham.oscillation();
    std::vector<double> lobes = lobe_areas(L0, fam);
    rep.hofer_lower = *std::min_element(lobes.begin(), lobes.end());

    HausdorffValue dh = hausdorff_distance(L0, fam);
    rep.hausdorff = dh.value;
    rep.hausdorff_margin = dh.margin;

    rep.kappa_oracle = curvature_profile(fam_graph).max_curvature;
    rep.kappa_paper = (kind == FamilyKind::L) ? static_cast<double>(n)
                                              : std::sqrt(static_cast<double>(n));

    rep.tameness = tameness_constant(resample_arclength(fam, 2048)).epsilon_star;

    BoundsProfile prof = surface_profile(L0.surface());
    prof.Lambda = rep.kappa_oracle;
    MonotonicityConstants mono = monotonicity_constants(prof);
    DiskConstants dc = disk_constants(prof);
    auto [delta, delta0] = delta_radii(prof, L0.length() / 2.0);
    (void)delta;
    EtaThresholds eta = eta_thresholds(prof, mono, delta0, rho0(prof), dc.alpha);
    rep.R_prime = eta.R_prime;

    rep.implication = check_main_inequality(L0, fam, DBracket{rep.hofer_lower, rep.hofer_upper}, prof);
    rep.implication.case_id = n;
    return rep;
}

}  // namespace curvebound
