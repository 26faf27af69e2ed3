#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "jointdisp/core/battery.hpp"
#include "jointdisp/euclidean/euclidean.hpp"
#include "jointdisp/hyperbolic/h2.hpp"
#include "jointdisp/matrix/matrix.hpp"
#include "jointdisp/tree/free_tree.hpp"
#include "jointdisp/tree/padic.hpp"

namespace jd::io {

using json = nlohmann::json;

inline constexpr const char* kToolName = "jointdisp";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

// Parsed input file. Every error names a line and, for schema problems, the JSON pointer.
struct InputDocument {
    std::string text;
    json doc;
    std::string geometry;
    int version = 0;

    [[noreturn]] void fail(const json::json_pointer& at, const std::string& msg) const;
};

// Line (1-based) where the value at ptr starts in text, or 0 when it is absent.
int line_of(const std::string& text, const json::json_pointer& ptr);

InputDocument parse_document(std::string text);
InputDocument read_document(const std::string& path);

GeneratingSet<tree::FreeTreeGeometry> read_tree_free(const InputDocument& in);
GeneratingSet<tree::PadicTreeGeometry> read_tree_padic(const InputDocument& in);
h2::H2Set read_h2(const InputDocument& in);
euclid::EuclidSet read_euclidean(const InputDocument& in);
matrix::PdSet read_pd(const InputDocument& in);
// "riemannian" unless the document says "finsler"
matrix::Metric read_metric(const InputDocument& in);

// Doubles as JSON; non-finite values become the strings "inf", "-inf", "nan" so they survive a round trip.
json number(double v);
double number_from(const json& j);

struct CheckResult {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool ok = true;
    bool operator==(const CheckResult&) const = default;
};

struct RunReport {
    std::string command;  // "analyze" or "repro"
    json spec;            // echo of the request, seed included
    std::vector<CheckResult> checks;
    std::vector<std::pair<std::string, std::string>> skipped;
    json displacement;  // null unless a DisplacementReport applies
    json results;       // command-specific payload
    std::string tool_version = kToolVersion;
    std::optional<double> wall_time_s;  // only with --timing; reports stay byte-identical otherwise

    bool all_ok() const;
    void add_check(std::string name, double value, double tolerance);
    void add_battery(const BatteryResult& b);
    bool operator==(const RunReport&) const = default;
};

json to_json(const RunReport& r);
RunReport report_from_json(const json& j);
std::string dump(const RunReport& r);

json bracket_json(const Bracket& b);

template <Geometry G>
json displacement_json(const DisplacementReport<G>& rep, const G& geo) {
    json lam = json::array();
    for (const auto& e : rep.lambda_values)
        lam.push_back({{"k", e.k}, {"value", number(e.value)}, {"level_max", number(e.level_max)}, {"argmax", e.argmax_key}});
    json powers = json::array();
    for (double v : rep.power_values) powers.push_back(number(v));
    return {{"L_upper", number(rep.L_upper)},
            {"witness", geo.describe(rep.witness)},
            {"status", to_string(rep.status)},
            {"ell_bracket", bracket_json(rep.ell_bracket)},
            {"lambda", lam},
            {"circumradius", bracket_json(rep.circumradius)},
            {"L_powers", powers}};
}

// CSV with a mandatory header row.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row);
    std::string str() const;
    void write(const std::string& path) const;
};

std::string csv_num(double v);

}  // namespace jd::io
