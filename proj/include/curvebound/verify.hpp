#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "curvebound/constants.hpp"
#include "curvebound/curve.hpp"

namespace curvebound {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

// Outcome of one verification engine run. `passed` states that the checked
// inequality holds at the recorded resolution including rigor margins;
// `counterexample` marks a conclusive violation (escalated by the CLI).
struct Verdict {
    std::string engine;
    int case_id = 0;
    bool passed = false;
    bool applicable = true;
    bool counterexample = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    std::optional<SurfacePoint> witness_point;
    std::optional<std::size_t> witness_index;
    std::string branch;
    std::string note;
    std::map<std::string, double> resolution;
    std::uint64_t seed = kDefaultSeed;
};

// Deterministic splitmix64-based generator; identical streams across
// platforms for reproducible suites.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed) {}
    std::uint64_t next();
    double uniform();  // [0, 1)
    double uniform(double a, double b);
    double normal();

private:
    std::uint64_t s_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct EnclosingBall {
    SurfacePoint center;
    double radius = 0.0;
};

// Approximate minimal enclosing metric ball: Karcher seed plus
// farthest-point descent, keeping the best ball seen.
EnclosingBall circumscribed_ball(const SurfaceModel& m, std::span<const SurfacePoint> pts);

// Planar/surface region standing in for u(S_r): boundary arcs/loops, the
// marked point on component 0. Arcs must chain into closed polygons.
struct Region2D {
    std::vector<DiscreteCurve> boundary;
    std::size_t marked_index = 0;  // sample index on component 0

    const SurfacePoint& marked() const { return boundary.front().points()[marked_index]; }
    static Region2D make(std::vector<DiscreteCurve> components, std::size_t marked_index);
};

Verdict check_isoperimetric_loop(const DiscreteCurve& loop, const BoundsProfile& p);
Verdict check_isoperimetric_arc(const DiscreteCurve& arc, const DiscreteCurve& L,
                                const BoundsProfile& p);
Verdict check_farthest_point_curvature(const DiscreteCurve& curve, const SurfacePoint& x,
                                       const BoundsProfile& p);
Verdict check_small_ball_curvature(const DiscreteCurve& L, const BoundsProfile& p);

struct OsculatingSearch {
    Verdict verdict;
    std::optional<SurfacePoint> center;
    double station_arclength = 0.0;
};

OsculatingSearch find_osculating_free_disk(const Region2D& region, double rho);

struct InscribedDisk {
    double radius = 0.0;
    SurfacePoint center;
    double grid_step = 0.0;
};

InscribedDisk inscribed_disk_oracle(const Region2D& region, int grid);

Verdict check_ball_monotonicity(const SurfaceModel& m, const BoundsProfile& p,
                                std::span<const double> r_grid);

// Certified bracket for the J-adapted metric between two curves.
struct DBracket {
    double lower = 0.0;
    double upper = 0.0;
};

Verdict check_main_inequality(const DiscreteCurve& L, const DiscreteCurve& Lp, const DBracket& d,
                              const BoundsProfile& p);

// Profile with the model's curvature/injectivity bounds filled in.
BoundsProfile surface_profile(const SurfaceModel& m);

// Deterministic random-case suites.
std::vector<Verdict> isoperimetric_loop_suite(const SurfaceModel& m, int cases, std::uint64_t seed);
std::vector<Verdict> isoperimetric_arc_suite(const SurfaceModel& m, int cases, std::uint64_t seed);
std::vector<Verdict> small_ball_suite(const SurfaceModel& m, int cases, std::uint64_t seed);
std::vector<Verdict> farthest_point_suite(const SurfaceModel& m, int cases, std::uint64_t seed);
std::vector<Verdict> main_inequality_random_suite(int cases, std::uint64_t seed);

// Deterministic inscribed-disk cases: circle saturating rho0 = 1/Lambda plus
// the Euclidean ellipse grid; each case pairs the osculating scan with the
// grid oracle for the inscribed radius.
std::vector<Verdict> osculating_suite(int grid);

// Closed sampled ellipse (a cos t, b sin t) in the plane.
DiscreteCurve ellipse_curve(double a, double b, std::size_t samples);

}  // namespace curvebound
