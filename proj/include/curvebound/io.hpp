#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "curvebound/constants.hpp"
#include "curvebound/curve.hpp"
#include "curvebound/torus_lab.hpp"
#include "curvebound/verify.hpp"

namespace curvebound {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

// %.17g, with textual inf/nan so reports stay loadable
std::string format17(double v);
json json_number(double v);  // finite -> number, otherwise "inf"/"-inf"/"nan"

// Deterministic dump: sorted keys (nlohmann::json orders keys), doubles
// printed with 17 significant digits, LF endings.
std::string dump_json(const json& j, int indent = 2);

json surface_to_json(const SurfaceModel& m);
SurfaceModel surface_from_json(const json& j);

json curve_to_json(const DiscreteCurve& c);
DiscreteCurve curve_from_json(const json& j);

DiscreteCurve load_curve(const std::string& path);
void save_curve(const DiscreteCurve& c, const std::string& path);

json verdict_to_json(const Verdict& v);
json constants_report_to_json(const ConstantsReport& r);
std::string constants_report_to_csv(const ConstantsReport& r,
                                    std::span<const std::pair<std::string, std::string>> meta);

json family_report_to_json(const FamilyReport& r);
std::string family_reports_to_csv(std::span<const FamilyReport> reports, bool paper_table,
                                  std::span<const std::pair<std::string, std::string>> meta);

// one row per sample: s, x, y[, z], kappa
std::string curve_to_csv(const DiscreteCurve& c);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace curvebound
