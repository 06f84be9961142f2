#include "curvebound/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace curvebound {

std::string format17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json json_number(double v) {
    if (std::isfinite(v)) return v;
    return format17(v);
}

namespace {

void dump_rec(const json& j, std::string& out, int indent, int depth) {
    const bool compact = indent < 0;
    std::string nl = compact ? "" : "\n";
    std::string pad = compact ? "" : std::string(static_cast<std::size_t>(indent) * depth, ' ');
    std::string pad1 = compact ? "" : std::string(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{" + nl;
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += "," + nl;
                first = false;
                out += pad1 + json(it.key()).dump() + (compact ? ":" : ": ");
                dump_rec(it.value(), out, indent, depth + 1);
            }
            out += nl + pad + "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[" + nl;
            bool first = true;
            for (const auto& el : j) {
                if (!first) out += "," + nl;
                first = false;
                out += pad1;
                dump_rec(el, out, indent, depth + 1);
            }
            out += nl + pad + "]";
            return;
        }
        case json::value_t::number_float:
            out += format17(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

std::string dump_json(const json& j, int indent) {
    std::string out;
    dump_rec(j, out, indent, 0);
    out += "\n";
    return out;
}

json surface_to_json(const SurfaceModel& m) {
    json j;
    j["kind"] = surface_kind_name(m.kind());
    if (m.kind() == SurfaceKind::flat_torus) j["period"] = m.period();
    if (m.kind() == SurfaceKind::round_sphere || m.kind() == SurfaceKind::hyperbolic_plane)
        j["curvature"] = m.curvature_bound();
    return j;
}

SurfaceModel surface_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        fail(ErrorCode::input, "surface descriptor needs a \"kind\" field");
    SurfaceKind kind = surface_kind_from_name(j.at("kind").get<std::string>());
    switch (kind) {
        case SurfaceKind::euclidean_plane:
            return SurfaceModel::plane();
        case SurfaceKind::flat_torus:
            return SurfaceModel::torus(j.value("period", 2.0 * kPi));
        case SurfaceKind::round_sphere:
            if (!j.contains("curvature"))
                fail(ErrorCode::input, "round_sphere descriptor needs \"curvature\"");
            return SurfaceModel::sphere(j.at("curvature").get<double>());
        case SurfaceKind::hyperbolic_plane:
            if (!j.contains("curvature"))
                fail(ErrorCode::input, "hyperbolic_plane descriptor needs \"curvature\"");
            return SurfaceModel::hyperbolic(j.at("curvature").get<double>());
    }
    fail(ErrorCode::input, "unknown surface kind");
}

json curve_to_json(const DiscreteCurve& c) {
    json j;
    j["surface"] = surface_to_json(c.surface());
    j["closed"] = c.closed();
    json pts = json::array();
    const bool sphere = c.surface().kind() == SurfaceKind::round_sphere;
    for (const auto& p : c.points()) {
        if (sphere)
            pts.push_back(json::array({p.x(), p.y(), p.z()}));
        else
            pts.push_back(json::array({p.x(), p.y()}));
    }
    j["points"] = std::move(pts);
    return j;
}

DiscreteCurve curve_from_json(const json& j) {
    if (!j.is_object()) fail(ErrorCode::input, "curve document must be a JSON object");
    if (!j.contains("surface")) fail(ErrorCode::input, "curve document needs \"surface\"");
    if (!j.contains("points")) fail(ErrorCode::input, "curve document needs \"points\"");
    SurfaceModel m = surface_from_json(j.at("surface"));
    bool closed = j.value("closed", true);
    const json& pts = j.at("points");
    if (!pts.is_array()) fail(ErrorCode::input, "curve \"points\" must be an array");
    const bool sphere = m.kind() == SurfaceKind::round_sphere;
    std::vector<SurfacePoint> out;
    out.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const json& row = pts[i];
        std::size_t want = sphere ? 3 : 2;
        if (!row.is_array() || row.size() != want)
            fail(ErrorCode::input, "point " + std::to_string(i) + " must have " +
                                       std::to_string(want) + " coordinates");
        if (sphere)
            out.emplace_back(row[0].get<double>(), row[1].get<double>(), row[2].get<double>());
        else
            out.emplace_back(row[0].get<double>(), row[1].get<double>());
    }
    return DiscreteCurve(m, std::move(out), closed);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::io, "cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::io, "cannot open '" + path + "' for writing");
    out << content;
    if (!out) fail(ErrorCode::io, "short write to '" + path + "'");
}

DiscreteCurve load_curve(const std::string& path) {
    std::string text = read_text_file(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // translate the byte offset into line/column diagnostics
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        fail(ErrorCode::input, "malformed JSON in '" + path + "' at line " + std::to_string(line) +
                                   ", column " + std::to_string(col) + ": " + e.what());
    }
    DiscreteCurve curve = curve_from_json(j);
    if (auto w = curve.self_intersection())
        fail(ErrorCode::input, "curve in '" + path + "' self-intersects near segment index " +
                                   std::to_string(w->first) + " (crossing segment " +
                                   std::to_string(w->second) + ")");
    return curve;
}

void save_curve(const DiscreteCurve& c, const std::string& path) {
    write_text_file(path, dump_json(curve_to_json(c)));
}

json verdict_to_json(const Verdict& v) {
    json j;
    j["engine"] = v.engine;
    j["case"] = v.case_id;
    j["passed"] = v.passed;
    j["applicable"] = v.applicable;
    j["counterexample"] = v.counterexample;
    j["lhs"] = json_number(v.lhs);
    j["rhs"] = json_number(v.rhs);
    j["margin"] = json_number(v.margin);
    if (!v.branch.empty()) j["branch"] = v.branch;
    if (!v.note.empty()) j["note"] = v.note;
    if (v.witness_point) {
        j["witness"]["point"] =
            json::array({v.witness_point->x(), v.witness_point->y(), v.witness_point->z()});
    }
    if (v.witness_index) j["witness"]["index"] = *v.witness_index;
    json res = json::object();
    for (const auto& [k, val] : v.resolution) res[k] = json_number(val);
    j["resolution"] = std::move(res);
    j["seed"] = v.seed;
    return j;
}

json constants_report_to_json(const ConstantsReport& r) {
    json j;
    j["c_prime"] = json_number(r.c_prime);
    j["c"] = json_number(r.c);
    j["C"] = json_number(r.C);
    j["C_prime"] = json_number(r.C_prime);
    j["C_thm"] = json_number(r.C_thm);
    if (r.delta) j["delta"] = json_number(*r.delta);
    j["delta0"] = json_number(r.delta0);
    j["rho1"] = json_number(r.rho1);
    j["alpha"] = json_number(r.alpha);
    j["rho0"] = json_number(r.rho0);
    j["eta_pp"] = json_number(r.eta_pp);
    j["eta"] = json_number(r.eta);
    j["R"] = json_number(r.R);
    j["R_prime"] = json_number(r.R_prime);
    j["R_unobstructed"] = json_number(r.R_unobstructed);
    j["r_conv_lower"] = json_number(r.r_conv_lower);
    j["meta"]["slack"] = r.slack;
    j["meta"]["C1"] = r.C1;
    j["meta"]["C2"] = r.C2;
    j["meta"]["i0_supplied"] = r.i0_supplied;
    j["meta"]["tool_version"] = kToolVersion;
    return j;
}

namespace {

std::string meta_lines(std::span<const std::pair<std::string, std::string>> meta) {
    std::string out = std::string("# curvebound ") + kToolVersion + "\n";
    for (const auto& [k, v] : meta) out += "# " + k + "=" + v + "\n";
    return out;
}

}  // namespace

std::string constants_report_to_csv(const ConstantsReport& r,
                                    std::span<const std::pair<std::string, std::string>> meta) {
    std::string out = meta_lines(meta);
    out += "name,value\n";
    const std::pair<const char*, double> rows[] = {
        {"c_prime", r.c_prime}, {"c", r.c},           {"C", r.C},
        {"C_prime", r.C_prime}, {"C_thm", r.C_thm},   {"delta0", r.delta0},
        {"rho1", r.rho1},       {"alpha", r.alpha},   {"rho0", r.rho0},
        {"eta_pp", r.eta_pp},   {"eta", r.eta},       {"R", r.R},
        {"R_prime", r.R_prime}, {"r_conv_lower", r.r_conv_lower},
    };
    for (const auto& [name, value] : rows) out += std::string(name) + "," + format17(value) + "\n";
    return out;
}

json family_report_to_json(const FamilyReport& r) {
    json j;
    j["kind"] = family_kind_name(r.kind);
    j["n"] = r.n;
    j["hofer_lower"] = json_number(r.hofer_lower);
    j["hofer_upper"] = json_number(r.hofer_upper);
    j["hausdorff"] = json_number(r.hausdorff);
    j["hausdorff_margin"] = json_number(r.hausdorff_margin);
    j["kappa_oracle"] = json_number(r.kappa_oracle);
    j["kappa_paper"] = json_number(r.kappa_paper);
    j["tameness"] = json_number(r.tameness);
    j["R_prime"] = json_number(r.R_prime);
    j["implication"] = verdict_to_json(r.implication);
    return j;
}

std::string family_reports_to_csv(std::span<const FamilyReport> reports, bool paper_table,
                                  std::span<const std::pair<std::string, std::string>> meta) {
    std::string out = meta_lines(meta);
    out += "n,hofer_lower,hofer_upper,hausdorff,kappa_oracle,kappa_paper,tameness,R_prime,implication";
    if (paper_table) out += ",hofer_paper,hausdorff_paper";
    out += "\n";
    for (const auto& r : reports) {
        out += std::to_string(r.n) + "," + format17(r.hofer_lower) + "," + format17(r.hofer_upper) +
               "," + format17(r.hausdorff) + "," + format17(r.kappa_oracle) + "," +
               format17(r.kappa_paper) + "," + format17(r.tameness) + "," + format17(r.R_prime) +
               "," + (r.implication.passed ? "pass(" : "FAIL(") + r.implication.branch + ")";
        if (paper_table) {
            double nn = static_cast<double>(r.n);
            double hofer_paper = (r.kind == FamilyKind::L) ? 2.0 / nn : 2.0 * std::pow(nn, -1.5);
            double hausdorff_paper = (r.kind == FamilyKind::L) ? 1.0 : 1.0 / std::sqrt(nn);
            out += "," + format17(hofer_paper) + "," + format17(hausdorff_paper);
        }
        out += "\n";
    }
    return out;
}

std::string curve_to_csv(const DiscreteCurve& c) {
    const bool sphere = c.surface().kind() == SurfaceKind::round_sphere;
    CurvatureProfile prof;
    if (c.size() >= 64) {
        prof = curvature_profile(c);
    } else {
        prof.kappa.assign(c.size(), std::numeric_limits<double>::quiet_NaN());
    }
    std::string out = sphere ? "s,x,y,z,kappa\n" : "s,x,y,kappa\n";
    for (std::size_t i = 0; i < c.size(); ++i) {
        const SurfacePoint& p = c.points()[i];
        out += format17(c.arclength_at(i)) + "," + format17(p.x()) + "," + format17(p.y());
        if (sphere) out += "," + format17(p.z());
        out += "," + format17(prof.kappa[i]) + "\n";
    }
    return out;
}

}  // namespace curvebound
