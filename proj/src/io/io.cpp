#include "jointdisp/io/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "jointdisp/core/errors.hpp"

namespace jd::io {

namespace {

std::string escape_token(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '~') out += "~0";
        else if (c == '/') out += "~1";
        else out += c;
    }
    return out;
}

}  // namespace

int line_of(const std::string& text, const json::json_pointer& ptr) {
    const std::string target = ptr.to_string();
    struct Frame {
        bool object;
        std::string key;
        int index = 0;
        bool want_key = true;
    };
    std::vector<Frame> stack;
    int line = 1;
    std::size_t i = 0;
    auto here = [&] {
        std::string p;
        for (const auto& f : stack) p += "/" + (f.object ? escape_token(f.key) : std::to_string(f.index));
        return p;
    };
    auto read_string = [&] {
        std::string s;
        for (++i; i < text.size() && text[i] != '"'; ++i) {
            if (text[i] == '\\' && i + 1 < text.size()) ++i;
            s += text[i];
        }
        ++i;
        return s;
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        if (c == ':') {
            if (!stack.empty()) stack.back().want_key = false;
            ++i;
            continue;
        }
        if (c == ',') {
            if (!stack.empty()) {
                if (stack.back().object) stack.back().want_key = true;
                else ++stack.back().index;
            }
            ++i;
            continue;
        }
        if (c == '}' || c == ']') {
            if (!stack.empty()) stack.pop_back();
            ++i;
            continue;
        }
        if (c == '"' && !stack.empty() && stack.back().object && stack.back().want_key) {
            stack.back().key = read_string();
            continue;
        }
        // a value starts here
        if (here() == target) return line;
        if (c == '{' || c == '[') {
            stack.push_back({c == '{', "", 0, true});
            ++i;
        } else if (c == '"') {
            read_string();
        } else {
            while (i < text.size() && std::string(",}] \t\r\n").find(text[i]) == std::string::npos) ++i;
        }
    }
    return 0;
}

void InputDocument::fail(const json::json_pointer& at, const std::string& msg) const {
    int line = line_of(text, at);
    std::string where = at.to_string().empty() ? "/" : at.to_string();
    throw InputError((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + "at " + where + ": " + msg);
}

InputDocument parse_document(std::string text) {
    InputDocument in;
    in.text = std::move(text);
    try {
        in.doc = json::parse(in.text);
    } catch (const json::parse_error& e) {
        // byte offset to line and column
        std::size_t upto = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, in.text.size());
        int line = 1, col = 1;
        for (std::size_t k = 0; k < upto; ++k) {
            if (in.text[k] == '\n') line++, col = 1;
            else ++col;
        }
        throw InputError("JSON parse error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                         e.what());
    }
    using P = json::json_pointer;
    if (!in.doc.is_object()) in.fail(P(""), "top level must be an object");
    if (!in.doc.contains("version")) in.fail(P(""), "missing mandatory field \"version\"");
    if (!in.doc["version"].is_number_integer()) in.fail(P("/version"), "version must be an integer");
    in.version = in.doc["version"].get<int>();
    if (in.version != kSchemaVersion)
        in.fail(P("/version"), "unsupported schema version " + std::to_string(in.version));
    if (!in.doc.contains("geometry") || !in.doc["geometry"].is_string())
        in.fail(P(""), "missing string field \"geometry\"");
    in.geometry = in.doc["geometry"].get<std::string>();
    static const std::vector<std::string> known{"tree-free", "tree-padic", "h2", "euclidean", "pd-matrix"};
    if (std::find(known.begin(), known.end(), in.geometry) == known.end())
        in.fail(P("/geometry"), "unknown geometry \"" + in.geometry + "\"");
    if (!in.doc.contains("generators") || !in.doc["generators"].is_array() || in.doc["generators"].empty())
        in.fail(P(""), "\"generators\" must be a nonempty array");
    return in;
}

InputDocument read_document(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_document(ss.str());
}

namespace {

using P = json::json_pointer;

P gen_ptr(std::size_t i) { return P("/generators/" + std::to_string(i)); }

double real_at(const InputDocument& in, const json& j, const P& at) {
    if (!j.is_number()) in.fail(at, "expected a number");
    double v = j.get<double>();
    if (!std::isfinite(v)) in.fail(at, "number is not finite");
    return v;
}

// rows × cols array of arrays
void check_shape(const InputDocument& in, const json& j, const P& at, int rows, int cols) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        in.fail(at, "expected " + std::to_string(rows) + " rows");
    for (int r = 0; r < rows; ++r)
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
            in.fail(at / r, "expected " + std::to_string(cols) + " entries");
}

template <class G>
GeneratingSet<G> build(const InputDocument& in, const G& geo, std::vector<typename G::Isometry> gens) {
    for (std::size_t i = 0; i < gens.size(); ++i) {
        try {
            geo.check_isometry(gens[i]);
        } catch (const InputError& e) {
            in.fail(gen_ptr(i), e.what());
        }
    }
    try {
        return GeneratingSet<G>(geo, std::move(gens));
    } catch (const InputError& e) {
        in.fail(P("/generators"), e.what());
    }
}

int int_field(const InputDocument& in, const char* name, int fallback) {
    if (!in.doc.contains(name)) return fallback;
    if (!in.doc[name].is_number_integer()) in.fail(P(std::string("/") + name), "expected an integer");
    return in.doc[name].get<int>();
}

}  // namespace

GeneratingSet<tree::FreeTreeGeometry> read_tree_free(const InputDocument& in) {
    std::vector<tree::FreeWord> gens;
    int top = 1;
    for (std::size_t i = 0; i < in.doc["generators"].size(); ++i) {
        const auto& g = in.doc["generators"][i];
        if (!g.is_string()) in.fail(gen_ptr(i), "expected a word such as \"xY\"");
        try {
            gens.push_back(tree::FreeWord::parse(g.get<std::string>()));
        } catch (const InputError& e) {
            in.fail(gen_ptr(i), e.what());
        }
        top = std::max(top, gens.back().max_generator());
    }
    int rank = int_field(in, "rank", std::max(2, top));
    if (rank < 1 || rank > 26) in.fail(P("/rank"), "rank must be in 1..26");
    return build(in, tree::FreeTreeGeometry(rank), std::move(gens));
}

GeneratingSet<tree::PadicTreeGeometry> read_tree_padic(const InputDocument& in) {
    if (!in.doc.contains("p")) in.fail(P(""), "missing prime \"p\"");
    int p = int_field(in, "p", 0);
    std::optional<tree::PadicTreeGeometry> geo;
    try {
        geo.emplace(p);
    } catch (const InputError& e) {
        in.fail(P("/p"), e.what());
    }
    std::vector<tree::PadicMatrix> gens;
    for (std::size_t i = 0; i < in.doc["generators"].size(); ++i) {
        const auto& g = in.doc["generators"][i];
        check_shape(in, g, gen_ptr(i), 2, 2);
        tree::PadicMatrix m;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                const auto& e = g[r][c];
                P at = gen_ptr(i) / r / c;
                try {
                    if (e.is_number_integer()) m.e[2 * r + c] = tree::Rational(e.get<long long>());
                    else if (e.is_string()) m.e[2 * r + c] = tree::parse_rational(e.get<std::string>());
                    else in.fail(at, "expected an integer or a rational string such as \"-3/4\"");
                } catch (const InputError& err) {
                    in.fail(at, err.what());
                }
            }
        gens.push_back(m);
    }
    return build(in, *geo, std::move(gens));
}

h2::H2Set read_h2(const InputDocument& in) {
    std::vector<h2::Moebius> gens;
    for (std::size_t i = 0; i < in.doc["generators"].size(); ++i) {
        const auto& g = in.doc["generators"][i];
        check_shape(in, g, gen_ptr(i), 2, 2);
        double e[4];
        for (int k = 0; k < 4; ++k) e[k] = real_at(in, g[k / 2][k % 2], gen_ptr(i) / (k / 2) / (k % 2));
        try {
            gens.push_back(h2::Moebius::make(e[0], e[1], e[2], e[3]));
        } catch (const InputError& err) {
            in.fail(gen_ptr(i), err.what());
        }
    }
    return build(in, h2::H2Geometry{}, std::move(gens));
}

euclid::EuclidSet read_euclidean(const InputDocument& in) {
    const auto& gs = in.doc["generators"];
    int dim = 0;
    if (gs[0].is_object() && gs[0].contains("t") && gs[0]["t"].is_array()) dim = static_cast<int>(gs[0]["t"].size());
    dim = int_field(in, "dim", dim);
    if (dim < 1 || dim > euclid::kMaxDim) in.fail(P("/dim"), "dimension must be in 1..8");
    std::vector<euclid::EuclideanIsometry> gens;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        const auto& g = gs[i];
        P at = gen_ptr(i);
        if (!g.is_object() || !g.contains("R") || !g.contains("t")) in.fail(at, "expected {\"R\": matrix, \"t\": vector}");
        check_shape(in, g["R"], at / "R", dim, dim);
        if (!g["t"].is_array() || static_cast<int>(g["t"].size()) != dim)
            in.fail(at / "t", "expected " + std::to_string(dim) + " entries");
        euclid::EuclideanIsometry e{euclid::Matrix(dim, dim), euclid::Vector(dim)};
        for (int r = 0; r < dim; ++r) {
            e.t(r) = real_at(in, g["t"][r], at / "t" / r);
            for (int c = 0; c < dim; ++c) e.R(r, c) = real_at(in, g["R"][r][c], at / "R" / r / c);
        }
        gens.push_back(std::move(e));
    }
    return build(in, euclid::EuclideanGeometry(dim), std::move(gens));
}

matrix::Metric read_metric(const InputDocument& in) {
    if (!in.doc.contains("metric")) return matrix::Metric::riemannian;
    const auto& m = in.doc["metric"];
    if (m == "riemannian") return matrix::Metric::riemannian;
    if (m == "finsler") return matrix::Metric::finsler;
    in.fail(P("/metric"), "metric must be \"riemannian\" or \"finsler\"");
}

matrix::PdSet read_pd(const InputDocument& in) {
    const auto& gs = in.doc["generators"];
    int dim = gs[0].is_array() ? static_cast<int>(gs[0].size()) : 0;
    dim = int_field(in, "dim", dim);
    if (dim < 2 || dim > matrix::kMaxDim) in.fail(P("/dim"), "dimension must be in 2..6");
    std::vector<matrix::MatrixIsometry> gens;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        const auto& g = gs[i];
        check_shape(in, g, gen_ptr(i), dim, dim);
        bool integral = true, real = true;
        for (const auto& row : g)
            for (const auto& e : row) {
                integral = integral && e.is_number_integer();
                real = real && e.is_number();
            }
        if (integral) {
            std::vector<std::int64_t> a;
            for (const auto& row : g)
                for (const auto& e : row) a.push_back(e.get<std::int64_t>());
            gens.push_back(matrix::MatrixIsometry::from_int(dim, a));
            continue;
        }
        matrix::CMatrix m(dim, dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) {
                const auto& e = g[r][c];
                P at = gen_ptr(i) / r / c;
                if (e.is_number()) m(r, c) = real_at(in, e, at);
                else if (e.is_array() && e.size() == 2) m(r, c) = {real_at(in, e[0], at / 0), real_at(in, e[1], at / 1)};
                else in.fail(at, "expected a number or [re, im]");
            }
        if (real) gens.push_back(matrix::MatrixIsometry::from_real(m.real()));
        else gens.push_back(matrix::MatrixIsometry{m, std::nullopt});
    }
    return build(in, matrix::PdGeometry(dim), std::move(gens));
}

json number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double number_from(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j == "inf") return INFINITY;
    if (j == "-inf") return -INFINITY;
    if (j == "nan") return NAN;
    throw InputError("expected a number, got " + j.dump());
}

bool RunReport::all_ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok; });
}

void RunReport::add_check(std::string name, double value, double tolerance) {
    checks.push_back({std::move(name), value, tolerance, value >= -tolerance});
}

void RunReport::add_battery(const BatteryResult& b) {
    for (const auto& s : b.slacks) checks.push_back({s.name, s.value, s.tolerance, s.ok()});
    for (const auto& s : b.skipped) skipped.emplace_back(s.name, s.reason);
}

json bracket_json(const Bracket& b) {
    return {{"lower", number(b.lower)},
            {"upper", number(b.upper)},
            {"lower_source", b.lower_source},
            {"upper_source", b.upper_source}};
}

json to_json(const RunReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"value", number(c.value)}, {"tolerance", number(c.tolerance)}, {"ok", c.ok}});
    json skipped = json::array();
    for (const auto& [n, why] : r.skipped) skipped.push_back({{"name", n}, {"reason", why}});
    json j = {{"tool", kToolName},          {"version", r.tool_version}, {"schema", kSchemaVersion},
              {"command", r.command},       {"spec", r.spec},            {"checks", checks},
              {"skipped", skipped},         {"all_ok", r.all_ok()},      {"displacement", r.displacement},
              {"results", r.results}};
    if (r.wall_time_s) j["wall_time_s"] = *r.wall_time_s;
    return j;
}

RunReport report_from_json(const json& j) {
    RunReport r;
    try {
        r.command = j.at("command").get<std::string>();
        r.spec = j.at("spec");
        r.tool_version = j.at("version").get<std::string>();
        for (const auto& c : j.at("checks"))
            r.checks.push_back({c.at("name").get<std::string>(), number_from(c.at("value")),
                                number_from(c.at("tolerance")), c.at("ok").get<bool>()});
        for (const auto& s : j.at("skipped"))
            r.skipped.emplace_back(s.at("name").get<std::string>(), s.at("reason").get<std::string>());
        r.displacement = j.at("displacement");
        r.results = j.at("results");
        if (j.contains("wall_time_s")) r.wall_time_s = j["wall_time_s"].get<double>();
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed report: ") + e.what());
    }
    return r;
}

std::string dump(const RunReport& r) { return to_json(r).dump(2) + "\n"; }

void CsvTable::add(std::vector<std::string> row) {
    if (row.size() != header.size()) throw std::logic_error("CSV row width does not match the header");
    rows.push_back(std::move(row));
}

std::string CsvTable::str() const {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            bool quote = cells[i].find_first_of(",\"\n") != std::string::npos;
            if (!quote) {
                out += cells[i];
                continue;
            }
            out += '"';
            for (char c : cells[i]) out += c == '"' ? std::string("\"\"") : std::string(1, c);
            out += '"';
        }
        out += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
}

void CsvTable::write(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw InputError("cannot write " + path);
    f << str();
}

std::string csv_num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace jd::io
