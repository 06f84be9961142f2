#include <doctest.h>

#include <cmath>

#include "curvebound/surface.hpp"
#include "curvebound/verify.hpp"

using namespace curvebound;

namespace {

SurfacePoint random_point(const SurfaceModel& m, Rng& rng) {
    switch (m.kind()) {
        case SurfaceKind::euclidean_plane:
            return SurfacePoint(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
        case SurfaceKind::flat_torus:
            return SurfacePoint(rng.uniform(0.0, m.period()), rng.uniform(0.0, m.period()));
        case SurfaceKind::round_sphere: {
            double radius = 1.0 / std::sqrt(m.curvature_bound());
            double x = rng.normal(), y = rng.normal(), z = rng.normal();
            double n = std::max(1e-12, std::sqrt(x * x + y * y + z * z));
            return SurfacePoint(radius * x / n, radius * y / n, radius * z / n);
        }
        case SurfaceKind::hyperbolic_plane: {
            double r = 0.8 * std::sqrt(rng.uniform());
            double t = rng.uniform(0.0, 2.0 * kPi);
            return SurfacePoint(r * std::cos(t), r * std::sin(t));
        }
    }
    return {};
}

std::vector<SurfacePoint> chart_circle(const SurfaceModel& m, const SurfacePoint& base, double r,
                                       std::size_t n) {
    std::vector<SurfacePoint> pts;
    pts.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        double th = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
        pts.push_back(m.exp_map(base, Vec2{r * std::cos(th), r * std::sin(th)}));
    }
    return pts;
}

}  // namespace

TEST_CASE("distance closed forms") {
    SurfaceModel torus = SurfaceModel::torus();
    CHECK(torus.distance({0.0, 0.0}, {6.0, 0.0}) == doctest::Approx(2.0 * kPi - 6.0).epsilon(1e-12));

    SurfaceModel plane = SurfaceModel::plane();
    CHECK(plane.distance({0.0, 0.0}, {3.0, 4.0}) == doctest::Approx(5.0).epsilon(1e-12));

    SurfaceModel sphere = SurfaceModel::sphere(1.0);
    SurfacePoint pole(0.0, 0.0, 1.0);
    SurfacePoint equator(1.0, 0.0, 0.0);
    CHECK(sphere.distance(pole, equator) == doctest::Approx(kPi / 2.0).epsilon(1e-12));

    // symmetry and identity
    CHECK(torus.distance({1.0, 2.0}, {1.0, 2.0}) == doctest::Approx(0.0));
    CHECK(sphere.distance(equator, pole) == doctest::Approx(kPi / 2.0).epsilon(1e-12));
}

TEST_CASE("exp_map closed forms") {
    SurfaceModel plane = SurfaceModel::plane();
    SurfacePoint q = plane.exp_map({0.0, 0.0}, Vec2{2.0, 0.0});
    CHECK(q.x() == doctest::Approx(2.0));
    CHECK(q.y() == doctest::Approx(0.0));

    SurfaceModel torus = SurfaceModel::torus();
    bool beyond = false;
    q = torus.exp_map({0.0, 0.0}, Vec2{0.0, 3.0 * kPi}, &beyond);
    CHECK(q.x() == doctest::Approx(0.0));
    CHECK(q.y() == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(beyond);

    SurfaceModel sphere = SurfaceModel::sphere(1.0);
    SurfacePoint pole(0.0, 0.0, 1.0);
    SurfacePoint r = sphere.exp_map(pole, Vec2{kPi / 2.0, 0.0});
    CHECK(sphere.distance(pole, r) == doctest::Approx(kPi / 2.0).epsilon(1e-12));
    CHECK(std::abs(r.z()) < 1e-12);  // landed on the equator
}

TEST_CASE("geodesic_between") {
    SurfaceModel plane = SurfaceModel::plane();
    auto seg = plane.geodesic_between({0.0, 0.0}, {1.0, 1.0}, 3);
    REQUIRE(seg.size() == 3);
    CHECK(seg[1].x() == doctest::Approx(0.5));
    CHECK(seg[1].y() == doctest::Approx(0.5));

    // torus wrap-around midpoint, checked against a brute-force deck-translate oracle
    SurfaceModel torus = SurfaceModel::torus();
    SurfacePoint p(0.0, 0.0), q(6.0, 0.0);
    double best = kInf, bestx = 0.0;
    for (int k = -1; k <= 1; ++k) {
        double lifted = 6.0 + k * 2.0 * kPi;
        if (std::abs(lifted) < best) {
            best = std::abs(lifted);
            bestx = lifted;
        }
    }
    double mid_oracle = std::fmod(bestx / 2.0 + 2.0 * kPi, 2.0 * kPi);
    auto tseg = torus.geodesic_between(p, q, 3);
    CHECK(tseg[1].x() == doctest::Approx(mid_oracle).epsilon(1e-12));
    CHECK(mid_oracle == doctest::Approx(6.14159265).epsilon(1e-6));

    SurfaceModel sphere = SurfaceModel::sphere(1.0);
    auto sseg = sphere.geodesic_between({0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, 3);
    CHECK(sseg[1].z() == doctest::Approx(std::cos(kPi / 4.0)).epsilon(1e-12));

    // consecutive sample distances sum to d(p, q)
    auto long_seg = sphere.geodesic_between({0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, 33);
    double total = 0.0;
    for (std::size_t i = 1; i < long_seg.size(); ++i)
        total += sphere.distance(long_seg[i - 1], long_seg[i]);
    CHECK(total == doctest::Approx(kPi / 2.0).epsilon(1e-9));
}

TEST_CASE("ball_area closed forms") {
    CHECK(SurfaceModel::plane().ball_area(1.0) == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(SurfaceModel::sphere(1.0).ball_area(kPi / 2.0) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    // frozen quadrature oracle: 2*pi*(cosh(1) - 1)
    CHECK(SurfaceModel::hyperbolic(1.0).ball_area(1.0) ==
          doctest::Approx(3.4122762652849023).epsilon(1e-12));
    CHECK_THROWS_AS(SurfaceModel::torus().ball_area(10.0), Error);
    CHECK_THROWS_AS(SurfaceModel::plane().ball_area(-1.0), Error);
}

TEST_CASE("ball_area agrees with independent quadrature / Monte Carlo") {
    // hyperbolic: Cartesian quadrature of the conformal area form on the chart
    {
        SurfaceModel h = SurfaceModel::hyperbolic(1.0);
        for (double r : {0.5, 1.0, 2.0}) {
            double chart_r = std::tanh(r / 2.0);
            int n = 2000;
            double cell = 2.0 * chart_r / n, sum = 0.0;
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    double x = -chart_r + (i + 0.5) * cell;
                    double y = -chart_r + (j + 0.5) * cell;
                    double rho2 = x * x + y * y;
                    if (rho2 >= chart_r * chart_r) continue;
                    double la = 1.0 - rho2;
                    sum += 4.0 / (la * la) * cell * cell;
                }
            }
            CHECK(std::abs(sum - h.ball_area(r)) / h.ball_area(r) < 5e-3);
        }
    }
    // sphere: midpoint quadrature of the area form in colatitude
    {
        SurfaceModel s = SurfaceModel::sphere(1.0);
        for (double f : {0.1, 0.5, 0.9}) {
            double r = f * s.inj_radius();
            const int n = 20000;
            double sum = 0.0;
            for (int i = 0; i < n; ++i) {
                double theta = r * (i + 0.5) / n;
                sum += std::sin(theta) * (r / n) * 2.0 * kPi;
            }
            CHECK(std::abs(sum - s.ball_area(r)) / s.ball_area(r) < 5e-3);
        }
    }
    // torus: grid count
    {
        SurfaceModel t = SurfaceModel::torus();
        double r = 0.5 * t.inj_radius();
        int n = 1500, hits = 0;
        double period = t.period();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                SurfacePoint p(period * (i + 0.5) / n, period * (j + 0.5) / n);
                if (t.distance({0.0, 0.0}, p) < r) ++hits;
            }
        double quad = period * period * static_cast<double>(hits) / (static_cast<double>(n) * n);
        CHECK(std::abs(quad - t.ball_area(r)) / t.ball_area(r) < 5e-3);
    }
}

TEST_CASE("loop_area closed forms") {
    SurfaceModel plane = SurfaceModel::plane();
    auto circle = chart_circle(plane, {0.0, 0.0}, 1.0, 2048);
    CHECK(loop_area(plane, circle) == doctest::Approx(kPi).epsilon(1e-5));

    // unit square loop on the torus: lift + shoelace
    SurfaceModel torus = SurfaceModel::torus();
    std::vector<SurfacePoint> square;
    const int side = 64;
    for (int i = 0; i < side; ++i) square.emplace_back(static_cast<double>(i) / side, 0.0);
    for (int i = 0; i < side; ++i) square.emplace_back(1.0, static_cast<double>(i) / side);
    for (int i = 0; i < side; ++i) square.emplace_back(1.0 - static_cast<double>(i) / side, 1.0);
    for (int i = 0; i < side; ++i) square.emplace_back(0.0, 1.0 - static_cast<double>(i) / side);
    CHECK(loop_area(torus, square) == doctest::Approx(1.0).epsilon(1e-12));

    // spherical triangle with three right angles: Girard excess pi/2
    SurfaceModel sphere = SurfaceModel::sphere(1.0);
    std::vector<SurfacePoint> tri;
    SurfacePoint a(1.0, 0.0, 0.0), b(0.0, 1.0, 0.0), c(0.0, 0.0, 1.0);
    auto append_gc = [&](const SurfacePoint& from, const SurfacePoint& to) {
        auto seg = sphere.geodesic_between(from, to, 65);
        tri.insert(tri.end(), seg.begin(), seg.end() - 1);
    };
    append_gc(a, b);
    append_gc(b, c);
    append_gc(c, a);
    CHECK(std::abs(loop_area(sphere, tri)) == doctest::Approx(kPi / 2.0).epsilon(1e-9));
}

TEST_CASE("loop_area of a metric circle matches ball_area") {
    Rng rng(7u);
    for (SurfaceModel m : {SurfaceModel::plane(), SurfaceModel::torus(), SurfaceModel::sphere(1.0),
                           SurfaceModel::hyperbolic(1.0)}) {
        double r = std::min(1.0, 0.4 * m.inj_radius());
        SurfacePoint base = random_point(m, rng);
        auto circle = chart_circle(m, base, r, 2048);
        double a = std::abs(loop_area(m, circle));
        CHECK(std::abs(a - m.ball_area(r)) / m.ball_area(r) < 1e-4);
    }
}

TEST_CASE("disk-extension independence: fan vs lift-and-shoelace") {
    Rng rng(21u);
    for (SurfaceModel m : {SurfaceModel::plane(), SurfaceModel::torus()}) {
        for (int c = 0; c < 50; ++c) {
            SurfacePoint base = random_point(m, rng);
            std::vector<SurfacePoint> loop;
            std::array<double, 5> ar{}, br{};
            for (int k = 0; k < 5; ++k) {
                ar[k] = rng.normal() / ((k + 1) * (k + 1));
                br[k] = rng.normal() / ((k + 1) * (k + 1));
            }
            for (int j = 0; j < 512; ++j) {
                double th = 2.0 * kPi * j / 512.0;
                double rad = 0.6, wob = 0.0;
                for (int k = 0; k < 5; ++k)
                    wob += ar[k] * std::cos((k + 1) * th) + br[k] * std::sin((k + 1) * th);
                rad *= 1.0 + 0.3 * wob / (1.0 + std::abs(wob));
                loop.push_back(m.exp_map(base, Vec2{rad * std::cos(th), rad * std::sin(th)}));
            }
            double a1 = loop_area(m, loop);
            double a2 = loop_area_fan(m, loop);
            CHECK(std::abs(a1 - a2) <= 1e-6 * std::max(1.0, std::abs(a1)));
        }
    }
}

TEST_CASE("triangle inequality on random triples") {
    Rng rng(5u);
    for (SurfaceModel m : {SurfaceModel::plane(), SurfaceModel::torus(), SurfaceModel::sphere(1.0),
                           SurfaceModel::hyperbolic(1.0)}) {
        for (int t = 0; t < 1000; ++t) {
            SurfacePoint p = random_point(m, rng);
            SurfacePoint q = random_point(m, rng);
            SurfacePoint r = random_point(m, rng);
            CHECK(m.distance(p, r) <= m.distance(p, q) + m.distance(q, r) + 1e-9);
        }
    }
}

TEST_CASE("exp/distance and exp/log consistency") {
    Rng rng(11u);
    for (SurfaceModel m : {SurfaceModel::plane(), SurfaceModel::torus(), SurfaceModel::sphere(1.0),
                           SurfaceModel::hyperbolic(1.0)}) {
        for (int t = 0; t < 300; ++t) {
            SurfacePoint p = random_point(m, rng);
            double len = rng.uniform(1e-3, 0.9 * std::min(m.inj_radius(), 3.0));
            double ang = rng.uniform(0.0, 2.0 * kPi);
            Vec2 v{len * std::cos(ang), len * std::sin(ang)};
            SurfacePoint q = m.exp_map(p, v);
            CHECK(m.distance(p, q) == doctest::Approx(len).epsilon(1e-9));
            Vec2 back = m.log_map(p, q);
            CHECK(back[0] == doctest::Approx(v[0]).epsilon(1e-8));
            CHECK(back[1] == doctest::Approx(v[1]).epsilon(1e-8));
        }
    }
}

TEST_CASE("error paths: ambiguity and essential loops") {
    SurfaceModel torus = SurfaceModel::torus();
    // antipodal on the torus: no unique minimizing geodesic
    CHECK_THROWS_AS(torus.geodesic_between({0.0, 0.0}, {kPi, 0.0}, 5), Error);
    SurfaceModel sphere = SurfaceModel::sphere(1.0);
    CHECK_THROWS_AS(sphere.log_map({0.0, 0.0, 1.0}, {0.0, 0.0, -1.0}), Error);

    // essential loop has no disk extension
    std::vector<SurfacePoint> essential;
    for (int j = 0; j < 256; ++j) essential.emplace_back(2.0 * kPi * j / 256.0, 0.0);
    CHECK_THROWS_AS(loop_area(torus, essential), Error);
}

TEST_CASE("point validation") {
    SurfaceModel sphere = SurfaceModel::sphere(1.0);
    CHECK_THROWS_AS(sphere.validate_point(SurfacePoint(1.1, 0.0, 0.0)), Error);
    SurfaceModel hyp = SurfaceModel::hyperbolic(1.0);
    CHECK_THROWS_AS(hyp.validate_point(SurfacePoint(1.0, 0.0)), Error);
    SurfaceModel torus = SurfaceModel::torus();
    SurfacePoint wrapped = torus.normalize_point(SurfacePoint(7.0, -1.0));
    CHECK(wrapped.x() == doctest::Approx(7.0 - 2.0 * kPi));
    CHECK(wrapped.y() == doctest::Approx(2.0 * kPi - 1.0));
}

TEST_CASE("analytic injectivity radii") {
    CHECK(std::isinf(SurfaceModel::plane().inj_radius()));
    CHECK(SurfaceModel::torus(4.0).inj_radius() == doctest::Approx(2.0));
    CHECK(SurfaceModel::sphere(4.0).inj_radius() == doctest::Approx(kPi / 2.0));
    CHECK(std::isinf(SurfaceModel::hyperbolic(1.0).inj_radius()));
    CHECK(SurfaceModel::torus().curvature_bound() == 0.0);
}
