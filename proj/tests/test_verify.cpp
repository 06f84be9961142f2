#include <doctest.h>

#include <cmath>

#include "curvebound/torus_lab.hpp"
#include "curvebound/verify.hpp"

using namespace curvebound;

namespace {

DiscreteCurve chart_circle_curve(const SurfaceModel& m, const SurfacePoint& base, double r,
                                 std::size_t n) {
    std::vector<SurfacePoint> pts;
    pts.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        double th = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
        pts.push_back(m.exp_map(base, Vec2{r * std::cos(th), r * std::sin(th)}));
    }
    return DiscreteCurve(m, std::move(pts), true);
}

}  // namespace

TEST_CASE("circumscribed ball") {
    SurfaceModel plane = SurfaceModel::plane();
    DiscreteCurve circle = chart_circle_curve(plane, SurfacePoint(1.0, -2.0), 0.75, 512);
    EnclosingBall ball = circumscribed_ball(plane, circle.points());
    CHECK(ball.radius == doctest::Approx(0.75).epsilon(1e-6));
    CHECK(ball.center.x() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(ball.center.y() == doctest::Approx(-2.0).epsilon(1e-6));
}

TEST_CASE("isoperimetric loop engine") {
    SurfaceModel plane = SurfaceModel::plane();
    BoundsProfile p = surface_profile(plane);

    // unit circle: lhs = pi, rhs = (1/2)(2 pi)^2
    Verdict v = check_isoperimetric_loop(chart_circle_curve(plane, {0, 0}, 1.0, 1024), p);
    CHECK(v.passed);
    CHECK(v.lhs == doctest::Approx(kPi).epsilon(1e-4));
    CHECK(v.rhs == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-3));
    CHECK(v.lhs / (v.rhs / (0.5) / (4.0)) > 0.0);  // sanity: fields populated

    // great-circle cap boundary at colatitude pi/4 on the sphere, r0 = 3
    SurfaceModel sphere = SurfaceModel::sphere(1.0);
    BoundsProfile ps = surface_profile(sphere);
    ps.r0 = 3.0;
    std::vector<SurfacePoint> cap;
    for (int j = 0; j < 1024; ++j) {
        double t = 2.0 * kPi * j / 1024.0;
        double s = std::sin(kPi / 4.0), c = std::cos(kPi / 4.0);
        cap.emplace_back(s * std::cos(t), s * std::sin(t), c);
    }
    Verdict vs = check_isoperimetric_loop(DiscreteCurve(sphere, cap, true), ps);
    CHECK(vs.passed);
    CHECK(vs.lhs == doctest::Approx(2.0 * kPi * (1.0 - std::cos(kPi / 4.0))).epsilon(1e-4));

    // precondition: loop too large for B_{r0/2}
    BoundsProfile tight = surface_profile(plane);
    tight.r0 = 1.0;
    CHECK_THROWS_AS(
        check_isoperimetric_loop(chart_circle_curve(plane, {0, 0}, 1.0, 1024), tight), Error);
}

TEST_CASE("isoperimetric loop suites stay below the sharp constant") {
    for (SurfaceModel m : {SurfaceModel::plane(), SurfaceModel::torus(), SurfaceModel::sphere(1.0),
                           SurfaceModel::hyperbolic(1.0)}) {
        auto verdicts = isoperimetric_loop_suite(m, 100, kDefaultSeed);
        double max_ratio = 0.0;
        for (const auto& v : verdicts) {
            CHECK(v.passed);
            double len2 = v.rhs / iso_constants(surface_profile(m)).c_prime;
            if (len2 > 0.0) max_ratio = std::max(max_ratio, v.lhs / len2);
        }
        if (m.kind() == SurfaceKind::euclidean_plane)
            CHECK(max_ratio <= 1.0 / (4.0 * kPi) * 1.02);
    }
}

TEST_CASE("isoperimetric arc engine: semicircle against a line") {
    SurfaceModel plane = SurfaceModel::plane();
    std::vector<SurfacePoint> base_pts;
    for (int j = 0; j < 1025; ++j) base_pts.emplace_back(-4.0 + 8.0 * j / 1024.0, 0.0);
    DiscreteCurve base(plane, base_pts, false);

    std::vector<SurfacePoint> semi;
    for (int j = 0; j < 129; ++j) {
        double t = kPi * j / 128.0;
        semi.emplace_back(-std::cos(t), std::sin(t));
    }
    DiscreteCurve arc(plane, semi, false);

    BoundsProfile p = surface_profile(plane);  // eps = 1 so c = 1
    Verdict v = check_isoperimetric_arc(arc, base, p);
    CHECK(v.passed);
    CHECK(v.lhs == doctest::Approx(kPi / 2.0).epsilon(1e-3));
    CHECK(v.rhs == doctest::Approx(kPi * kPi).epsilon(1e-3));

    // degenerate arc along the base curve itself: zero area
    std::vector<SurfacePoint> flatarc;
    for (int j = 0; j < 17; ++j) flatarc.emplace_back(-4.0 + 8.0 * (512 + j) / 1024.0, 0.0);
    Verdict vd = check_isoperimetric_arc(DiscreteCurve(plane, flatarc, false), base, p);
    CHECK(vd.passed);
    CHECK(vd.lhs == doctest::Approx(0.0).epsilon(1e-12));

    // endpoints off the base curve
    std::vector<SurfacePoint> off;
    for (int j = 0; j < 17; ++j) off.emplace_back(-0.5 + j / 16.0, 0.3 + 0.01 * j);
    CHECK_THROWS_AS(check_isoperimetric_arc(DiscreteCurve(plane, off, false), base, p), Error);

    // ball condition: with small eps, delta shrinks below the semicircle's reach
    BoundsProfile small_eps = p;
    small_eps.eps = 0.05;
    CHECK_THROWS_AS(check_isoperimetric_arc(arc, base, small_eps), Error);
}

TEST_CASE("isoperimetric arc suites") {
    for (SurfaceModel m : {SurfaceModel::plane(), SurfaceModel::torus(), SurfaceModel::sphere(1.0),
                           SurfaceModel::hyperbolic(1.0)}) {
        auto verdicts = isoperimetric_arc_suite(m, 50, kDefaultSeed);
        for (const auto& v : verdicts) CHECK(v.passed);
    }
}

TEST_CASE("farthest-point curvature engine") {
    SurfaceModel plane = SurfaceModel::plane();
    BoundsProfile p = surface_profile(plane);

    // circle about x: exactly tight in the flat case (alpha = 1)
    SurfacePoint x(0.3, 0.7);
    Verdict v = check_farthest_point_curvature(chart_circle_curve(plane, x, 0.8, 1024), x, p);
    CHECK(v.passed);
    CHECK(v.lhs * 0.8 == doctest::Approx(1.0).epsilon(1e-3));

    // ellipse a=1, b=0.5 centered at x: maximizer at the major vertex, kappa = a/b^2 = 4
    std::vector<SurfacePoint> ell;
    for (int j = 0; j < 2048; ++j) {
        double t = 2.0 * kPi * j / 2048.0;
        ell.emplace_back(std::cos(t), 0.5 * std::sin(t));
    }
    Verdict ve = check_farthest_point_curvature(DiscreteCurve(plane, ell, true), SurfacePoint(0, 0), p);
    CHECK(ve.passed);
    CHECK(ve.lhs == doctest::Approx(4.0).epsilon(1e-3));
    CHECK(ve.rhs == doctest::Approx(1.0).epsilon(1e-6));

    auto suite = farthest_point_suite(SurfaceModel::sphere(1.0), 50, kDefaultSeed);
    for (const auto& sv : suite) CHECK(sv.passed);

    // curve reaches beyond rho1: domain error
    BoundsProfile tight = p;
    tight.r0 = 0.5;  // rho1 = 0.495 < 0.8
    CHECK_THROWS_AS(
        check_farthest_point_curvature(chart_circle_curve(plane, x, 0.8, 512), x, tight), Error);
}

TEST_CASE("small-ball curvature engine and suite") {
    SurfaceModel plane = SurfaceModel::plane();
    BoundsProfile p = surface_profile(plane);

    Verdict v = check_small_ball_curvature(chart_circle_curve(plane, {0, 0}, 0.6, 2048), p);
    CHECK(v.passed);
    CHECK(v.applicable);
    CHECK(std::abs(v.lhs / v.rhs - 1.0) < 1e-3);  // saturated in the flat case

    for (SurfaceModel m : {SurfaceModel::plane(), SurfaceModel::torus(), SurfaceModel::sphere(1.0),
                           SurfaceModel::hyperbolic(1.0)}) {
        auto suite = small_ball_suite(m, 50, kDefaultSeed);
        for (const auto& sv : suite) CHECK(sv.passed);
    }

    // curve too large for any admissible ball: not-applicable, not a failure
    BoundsProfile tiny = p;
    tiny.r0 = 0.2;
    Verdict vna = check_small_ball_curvature(chart_circle_curve(plane, {0, 0}, 0.6, 512), tiny);
    CHECK(!vna.applicable);
    CHECK(vna.passed);
}

TEST_CASE("osculating disk search and inscribed oracle") {
    // unit disk region: any station works at rho = 0.5
    DiscreteCurve circle = ellipse_curve(1.0, 1.0, 1024);
    Region2D disk = Region2D::make({circle}, 0);
    OsculatingSearch s = find_osculating_free_disk(disk, 0.5);
    CHECK(s.verdict.passed);
    REQUIRE(s.center.has_value());
    CHECK(SurfaceModel::plane().distance(*s.center, SurfacePoint(0, 0)) ==
          doctest::Approx(0.5).epsilon(1e-3));

    InscribedDisk oracle = inscribed_disk_oracle(disk, 256);
    CHECK(oracle.radius == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::hypot(oracle.center.x(), oracle.center.y()) < 2.5 * oracle.grid_step);

    // rho slightly above rho0 (but below the true inscribed radius):
    // warned, search still attempted and succeeds
    double disk_rho0 = s.verdict.resolution.at("rho0");
    OsculatingSearch warned = find_osculating_free_disk(disk, 1.000005 * disk_rho0);
    CHECK(warned.verdict.note.find("warning") != std::string::npos);
    CHECK(warned.verdict.passed);

    // rho beyond the inscribed radius: conclusively obstructed, but not a
    // counterexample because the hypothesis rho < rho0 was violated
    OsculatingSearch blocked = find_osculating_free_disk(disk, 1.2);
    CHECK(!blocked.verdict.passed);
    CHECK(!blocked.verdict.counterexample);
    CHECK(blocked.verdict.note.find("obstructed") != std::string::npos);

    // ellipse a=2, b=1: Lambda = 2, Euclidean rho0 = 1/2; free disk at rho = 0.45
    DiscreteCurve ell = ellipse_curve(2.0, 1.0, 2048);
    Region2D rell = Region2D::make({ell}, 0);
    OsculatingSearch se = find_osculating_free_disk(rell, 0.45);
    CHECK(se.verdict.passed);
    InscribedDisk oe = inscribed_disk_oracle(rell, 256);
    CHECK(oe.radius == doctest::Approx(1.0).epsilon(0.02));  // analytic inscribed radius b
    CHECK(0.45 <= oe.radius + oe.grid_step);

    // rectangle on the torus: inscribed radius = half the short side
    SurfaceModel torus = SurfaceModel::torus();
    std::vector<SurfacePoint> rect;
    const int side = 128;
    for (int i = 0; i < 2 * side; ++i) rect.emplace_back(2.0 * i / (2.0 * side), 0.0);
    for (int i = 0; i < side; ++i) rect.emplace_back(2.0, static_cast<double>(i) / side);
    for (int i = 0; i < 2 * side; ++i) rect.emplace_back(2.0 - 2.0 * i / (2.0 * side), 1.0);
    for (int i = 0; i < side; ++i) rect.emplace_back(0.0, 1.0 - static_cast<double>(i) / side);
    Region2D rrect = Region2D::make({DiscreteCurve(torus, rect, true)}, 0);
    InscribedDisk orect = inscribed_disk_oracle(rrect, 256);
    CHECK(orect.radius == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("osculating scan agrees with the oracle on the ellipse family") {
    auto verdicts = osculating_suite(128);
    for (const auto& v : verdicts) {
        CHECK(v.passed);
        double rho = v.resolution.at("rho");
        double oracle = v.resolution.at("oracle_radius");
        double step = v.resolution.at("oracle_grid_step");
        CHECK(rho <= oracle + step);
    }
    // Euclidean circle saturates rho0 = 1/Lambda
    const Verdict& circle = verdicts.front();
    double lambda = circle.resolution.at("lambda_oracle");
    double rho0_val = circle.resolution.at("rho0");
    CHECK(rho0_val * lambda == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("euclidean scaling consistency of the inscribed oracle") {
    for (double scale : {0.5, 2.5}) {
        DiscreteCurve e1 = ellipse_curve(2.0, 1.0, 1024);
        DiscreteCurve e2 = ellipse_curve(2.0 * scale, 1.0 * scale, 1024);
        InscribedDisk d1 = inscribed_disk_oracle(Region2D::make({e1}, 0), 200);
        InscribedDisk d2 = inscribed_disk_oracle(Region2D::make({e2}, 0), 200);
        CHECK(std::abs(d2.radius - scale * d1.radius) <= d2.grid_step + scale * d1.grid_step);
    }
}

TEST_CASE("lobe region of L2 over L0 admits a free osculating disk") {
    // upper lobe of y = cos(2x) over y = 0, x in [-pi/4, pi/4], marked at the crest
    SurfaceModel torus = SurfaceModel::torus();
    std::vector<SurfacePoint> upper, lower;
    const int n = 512;
    for (int j = 0; j <= n; ++j) {
        double x = -kPi / 4.0 + (kPi / 2.0) * j / n;
        upper.push_back(torus.normalize_point(SurfacePoint(x, std::cos(2.0 * x))));
    }
    for (int j = 0; j <= n; ++j) {
        double x = kPi / 4.0 - (kPi / 2.0) * j / n;
        lower.push_back(torus.normalize_point(SurfacePoint(x, 0.0)));
    }
    DiscreteCurve top(torus, upper, false);
    DiscreteCurve bottom(torus, lower, false);
    Region2D lobe = Region2D::make({top, bottom}, n / 2);  // crest (0, 1)

    double lambda = curvature_profile(top).max_curvature;  // about 4 at the crest
    BoundsProfile p = surface_profile(torus);
    p.Lambda = lambda;
    p.obstacle_distance = 1.0;  // d(crest, L0)
    double rho0_val = rho0(p);
    CHECK(rho0_val == doctest::Approx(0.25).epsilon(2e-3));  // alpha/Lambda with alpha = 1

    OsculatingSearch s = find_osculating_free_disk(lobe, 0.9 * rho0_val);
    CHECK(s.verdict.passed);

    InscribedDisk oracle = inscribed_disk_oracle(lobe, 256);
    CHECK(0.9 * rho0_val <= oracle.radius + oracle.grid_step);
}

TEST_CASE("ball-area monotonicity engine") {
    {
        SurfaceModel plane = SurfaceModel::plane();
        BoundsProfile p = surface_profile(plane);
        p.r0 = 4.0;
        std::vector<double> grid;
        for (int i = 1; i <= 20; ++i) grid.push_back(2.0 * i / 20.0);
        Verdict v = check_ball_monotonicity(plane, p, grid);
        CHECK(v.passed);  // pi r^2 >= r^2/2
    }
    {
        SurfaceModel sphere = SurfaceModel::sphere(1.0);
        BoundsProfile p = surface_profile(sphere);
        p.r0 = 3.0;
        std::vector<double> grid;
        for (int i = 1; i <= 20; ++i) grid.push_back(1.5 * i / 20.0);
        CHECK(check_ball_monotonicity(sphere, p, grid).passed);
    }
    {
        SurfaceModel hyp = SurfaceModel::hyperbolic(1.0);
        BoundsProfile p = surface_profile(hyp);
        p.r0 = 3.0;
        std::vector<double> grid;
        for (int i = 1; i <= 20; ++i) grid.push_back(1.5 * i / 20.0);
        CHECK(check_ball_monotonicity(hyp, p, grid).passed);
    }
    {
        SurfaceModel plane = SurfaceModel::plane();
        BoundsProfile p = surface_profile(plane);
        p.r0 = 1.0;
        std::vector<double> grid{0.9};  // outside (0, r0/2]
        CHECK_THROWS_AS(check_ball_monotonicity(plane, p, grid), Error);
    }
}

TEST_CASE("main inequality engine") {
    SurfaceModel torus = SurfaceModel::torus();
    BoundsProfile p = surface_profile(torus);
    DiscreteCurve l0 = base_circle(1024);

    // identical curves: delta_H = 0, any small upper bound passes
    Verdict vid = check_main_inequality(l0, l0, DBracket{1e-5, 1e-5}, p);
    CHECK(vid.passed);
    CHECK(!vid.counterexample);

    // parallel shift by a: d bracket [a, a] from the translation oscillation
    for (double a : {0.1, 0.5, 1.0}) {
        std::vector<SurfacePoint> pts;
        for (int j = 0; j < 1024; ++j)
            pts.push_back(torus.normalize_point(SurfacePoint(2.0 * kPi * j / 1024.0, a)));
        DiscreteCurve shifted(torus, pts, true);
        Verdict v = check_main_inequality(l0, shifted, DBracket{a, a}, p);
        CHECK(v.passed);
        CHECK(!v.counterexample);
        CHECK(!v.branch.empty());
    }

    // random Hamiltonian-graph pairs: no counterexamples, every branch recorded
    auto suite = main_inequality_random_suite(30, kDefaultSeed);
    int fired = 0;
    for (const auto& v : suite) {
        CHECK(v.passed);
        CHECK(!v.counterexample);
        CHECK(!v.branch.empty());
        if (v.branch == "conclusion-holds") ++fired;
    }
    CHECK(fired > 0);  // the hypothesis branch genuinely fires on small pairs

    CHECK_THROWS_AS(check_main_inequality(l0, l0, DBracket{1.0, 0.5}, p), Error);
}

TEST_CASE("deterministic suites") {
    auto a = isoperimetric_loop_suite(SurfaceModel::torus(), 20, 1234);
    auto b = isoperimetric_loop_suite(SurfaceModel::torus(), 20, 1234);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].lhs == b[i].lhs);
        CHECK(a[i].rhs == b[i].rhs);
    }
    auto c = isoperimetric_loop_suite(SurfaceModel::torus(), 20, 999);
    CHECK(a[0].lhs != c[0].lhs);
}
