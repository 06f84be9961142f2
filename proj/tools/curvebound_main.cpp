#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvebound/io.hpp"

namespace cb = curvebound;

namespace {

std::uint64_t resolve_seed(const CLI::Option* seed_opt, std::uint64_t seed_value) {
    if (seed_opt->count() > 0) return seed_value;
    if (const char* env = std::getenv("CURVEBOUND_SEED")) {
        try {
            return std::stoull(env, nullptr, 0);
        } catch (...) {
            cb::fail(cb::ErrorCode::input, "CURVEBOUND_SEED is not a number");
        }
    }
    return cb::kDefaultSeed;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        cb::write_text_file(out_path, text);
    }
}

cb::SurfaceModel surface_from_flags(const std::string& name, double curvature, double period) {
    cb::SurfaceKind kind = cb::surface_kind_from_name(name);
    switch (kind) {
        case cb::SurfaceKind::euclidean_plane: return cb::SurfaceModel::plane();
        case cb::SurfaceKind::flat_torus: return cb::SurfaceModel::torus(period);
        case cb::SurfaceKind::round_sphere: return cb::SurfaceModel::sphere(curvature);
        case cb::SurfaceKind::hyperbolic_plane: return cb::SurfaceModel::hyperbolic(curvature);
    }
    cb::fail(cb::ErrorCode::input, "unknown surface kind");
}

int emit_verdicts(const std::vector<cb::Verdict>& verdicts, const std::string& out_path) {
    std::string text;
    bool all_passed = true;
    for (const auto& v : verdicts) {
        text += cb::dump_json(cb::verdict_to_json(v), -1);
        if (!v.passed) all_passed = false;
    }
    emit(text, out_path);
    return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"curvebound: numeric verification of curvature, isoperimetric and inscribed-disk "
                 "bounds for curves on constant-curvature surfaces"};
    app.require_subcommand(1);

    // ------------------------------------------------------------------ constants
    auto* cmd_constants = app.add_subcommand("constants", "evaluate the derived-constants report");
    double K0 = 0.0, r0 = 0.0, Lambda = 0.0, eps = 1.0, eta_prime = cb::kInf;
    double i0 = 0.0, obstacle = cb::kInf, slack = 0.99, C1 = 1.0, C2 = 1.0;
    std::string const_format = "json", const_out;
    cmd_constants->add_option("--K0", K0, "curvature bound (1/length^2)")->required();
    cmd_constants->add_option("--r0", r0, "injectivity radius bound")->required();
    cmd_constants->add_option("--Lambda", Lambda, "curve curvature bound");
    cmd_constants->add_option("--eps", eps, "tameness constant in (0,1]");
    cmd_constants->add_option("--eta-prime", eta_prime, "obstacle separation");
    auto* i0_opt = cmd_constants->add_option("--i0", i0, "curve injectivity-radius constant");
    cmd_constants->add_option("--obstacle-distance", obstacle, "distance to the obstacle set");
    cmd_constants->add_option("--slack", slack, "rho1 slack factor in (0,1)");
    cmd_constants->add_option("--C1", C1, "omega-compatibility constant C1");
    cmd_constants->add_option("--C2", C2, "omega-compatibility constant C2");
    cmd_constants->add_option("--format", const_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd_constants->add_option("--out", const_out, "output path (default: stdout)");

    // --------------------------------------------------------------- analyze-curve
    auto* cmd_analyze = app.add_subcommand("analyze-curve", "load a curve and report its metrics");
    std::string analyze_in, analyze_out, analyze_csv;
    std::size_t analyze_resample = 0;
    cmd_analyze->add_option("--in", analyze_in, "curve JSON path")->required();
    cmd_analyze->add_option("--resample", analyze_resample, "resample to N arclength samples");
    cmd_analyze->add_option("--out", analyze_out, "metrics JSON output path");
    cmd_analyze->add_option("--csv", analyze_csv, "per-sample CSV export path");

    // --------------------------------------------------------------------- compare
    auto* cmd_compare = app.add_subcommand("compare", "Hausdorff distances between two curves");
    std::string cmp_a, cmp_b, cmp_out;
    cmd_compare->add_option("--a", cmp_a, "first curve JSON")->required();
    cmd_compare->add_option("--b", cmp_b, "second curve JSON")->required();
    cmd_compare->add_option("--out", cmp_out, "output path (default: stdout)");

    // ---------------------------------------------------------------------- verify
    auto* cmd_verify = app.add_subcommand("verify", "run a verification engine suite");
    std::string engine, verify_surface = "torus", verify_out;
    double verify_curvature = 1.0, verify_period = 2.0 * cb::kPi;
    int cases = -1;
    std::uint64_t seed_value = cb::kDefaultSeed;
    cmd_verify->add_option("engine", engine,
                           "isoperimetric | isoperimetric-arc | small-ball | farthest-point | "
                           "ball-area | osculating | main-inequality")
        ->required();
    cmd_verify->add_option("--surface", verify_surface, "plane | torus | sphere | hyperbolic");
    cmd_verify->add_option("--curvature", verify_curvature, "K0 for sphere/hyperbolic");
    cmd_verify->add_option("--period", verify_period, "torus period");
    cmd_verify->add_option("--cases", cases,
                           "random cases per suite; grid resolution for ball-area/osculating");
    auto* seed_opt = cmd_verify->add_option("--seed", seed_value, "RNG seed");
    cmd_verify->add_option("--out", verify_out, "output path (default: stdout)");

    // ---------------------------------------------------------------- torus-family
    auto* cmd_family = app.add_subcommand("torus-family", "section-4 family reports");
    std::string family_kind, family_out, family_format = "csv";
    std::vector<int> family_ns;
    bool paper_table = false;
    cmd_family->add_option("--kind", family_kind, "L or K")->required();
    cmd_family->add_option("--n", family_ns, "frequencies, e.g. 2,4,8")
        ->delimiter(',')
        ->required();
    cmd_family->add_option("--out", family_out, "output path (default: stdout)");
    cmd_family->add_option("--format", family_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd_family->add_flag("--paper-table", paper_table, "append the stated-value columns");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (cmd_constants->parsed()) {
            cb::BoundsProfile p;
            p.K0 = K0;
            p.r0 = r0;
            p.Lambda = Lambda;
            p.eps = eps;
            p.eta_prime = eta_prime;
            if (i0_opt->count() > 0) p.i0 = i0;
            p.obstacle_distance = obstacle;
            cb::ConstantsReport rep = cb::constants_report(p, slack, C1, C2);
            if (const_format == "json") {
                emit(cb::dump_json(cb::constants_report_to_json(rep)), const_out);
            } else {
                std::vector<std::pair<std::string, std::string>> meta{
                    {"K0", cb::format17(K0)},   {"r0", cb::format17(r0)},
                    {"Lambda", cb::format17(Lambda)}, {"eps", cb::format17(eps)},
                    {"slack", cb::format17(slack)},
                };
                emit(cb::constants_report_to_csv(rep, meta), const_out);
            }
            return 0;
        }

        if (cmd_analyze->parsed()) {
            cb::DiscreteCurve curve = cb::load_curve(analyze_in);
            if (analyze_resample > 0) curve = cb::resample_arclength(curve, analyze_resample);
            cb::CurveMetrics met = cb::curve_metrics(curve);
            cb::json j;
            j["length"] = cb::json_number(met.length);
            j["max_curvature"] = cb::json_number(met.max_curvature);
            j["tameness"] = cb::json_number(met.tameness);
            j["inj_radius_L"] = cb::json_number(met.inj_radius_L);
            j["samples"] = curve.size();
            j["closed"] = curve.closed();
            j["surface"] = cb::surface_to_json(curve.surface());
            emit(cb::dump_json(j), analyze_out);
            if (!analyze_csv.empty()) cb::write_text_file(analyze_csv, cb::curve_to_csv(curve));
            return 0;
        }

        if (cmd_compare->parsed()) {
            cb::DiscreteCurve a = cb::load_curve(cmp_a);
            cb::DiscreteCurve b = cb::load_curve(cmp_b);
            cb::HausdorffValue ab = cb::one_sided_hausdorff(a, b);
            cb::HausdorffValue ba = cb::one_sided_hausdorff(b, a);
            cb::json j;
            j["s_ab"] = cb::json_number(ab.value);
            j["s_ba"] = cb::json_number(ba.value);
            j["hausdorff"] = cb::json_number(std::max(ab.value, ba.value));
            j["margin"] = cb::json_number(std::max(ab.margin, ba.margin));
            emit(cb::dump_json(j), cmp_out);
            return 0;
        }

        if (cmd_verify->parsed()) {
            std::uint64_t seed = resolve_seed(seed_opt, seed_value);
            cb::SurfaceModel m = surface_from_flags(verify_surface, verify_curvature, verify_period);
            std::vector<cb::Verdict> verdicts;
            if (engine == "isoperimetric") {
                verdicts = cb::isoperimetric_loop_suite(m, cases < 0 ? 1000 : cases, seed);
            } else if (engine == "isoperimetric-arc") {
                verdicts = cb::isoperimetric_arc_suite(m, cases < 0 ? 300 : cases, seed);
            } else if (engine == "small-ball") {
                verdicts = cb::small_ball_suite(m, cases < 0 ? 200 : cases, seed);
            } else if (engine == "farthest-point") {
                verdicts = cb::farthest_point_suite(m, cases < 0 ? 200 : cases, seed);
            } else if (engine == "ball-area") {
                cb::BoundsProfile p = cb::surface_profile(m);
                int npts = cases < 0 ? 20 : cases;
                std::vector<double> grid;
                for (int i = 1; i <= npts; ++i)
                    grid.push_back(p.r0 / 2.0 * static_cast<double>(i) / npts);
                cb::Verdict v = cb::check_ball_monotonicity(m, p, grid);
                v.seed = seed;
                verdicts.push_back(std::move(v));
            } else if (engine == "osculating") {
                verdicts = cb::osculating_suite(cases < 0 ? 256 : cases);
            } else if (engine == "main-inequality") {
                verdicts = cb::main_inequality_random_suite(cases < 0 ? 100 : cases, seed);
            } else {
                cb::fail(cb::ErrorCode::input, "unknown verify engine '" + engine + "'");
            }
            return emit_verdicts(verdicts, verify_out);
        }

        if (cmd_family->parsed()) {
            cb::FamilyKind kind = cb::family_kind_from_name(family_kind);
            std::vector<cb::FamilyReport> reports;
            reports.reserve(family_ns.size());
            bool all_passed = true;
            for (int n : family_ns) {
                reports.push_back(cb::family_report(kind, n));
                if (!reports.back().implication.passed) all_passed = false;
            }
            if (family_format == "json") {
                cb::json arr = cb::json::array();
                for (const auto& r : reports) arr.push_back(cb::family_report_to_json(r));
                cb::json j;
                j["reports"] = std::move(arr);
                j["meta"]["tool_version"] = cb::kToolVersion;
                j["meta"]["kind"] = cb::family_kind_name(kind);
                emit(cb::dump_json(j), family_out);
            } else {
                std::vector<std::pair<std::string, std::string>> meta{
                    {"kind", cb::family_kind_name(kind)},
                };
                emit(cb::family_reports_to_csv(reports, paper_table, meta), family_out);
            }
            return all_passed ? 0 : 1;
        }
    } catch (const cb::Error& e) {
        std::cerr << "error (" << cb::error_code_name(e.code()) << "): " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
