#include <cmath>

#include "doctest.h"
#include "jointdisp/app/experiments.hpp"
#include "jointdisp/core/errors.hpp"

using namespace jd;
using io::json;

namespace {

std::string error_of(const std::string& text) {
    try {
        io::parse_document(text);
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

template <class F>
std::string error_in(F&& f) {
    try {
        f();
    } catch (const InputError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("JSON pointers map back to source lines") {
    std::string text = "{\n  \"a\": 1,\n  \"b\": [\n    [1, 2],\n    {\"c/d\": true}\n  ]\n}\n";
    CHECK(io::line_of(text, json::json_pointer("/a")) == 2);
    CHECK(io::line_of(text, json::json_pointer("/b")) == 3);
    CHECK(io::line_of(text, json::json_pointer("/b/0/1")) == 4);
    CHECK(io::line_of(text, json::json_pointer("/b/1/c~1d")) == 5);
    CHECK(io::line_of(text, json::json_pointer("/zzz")) == 0);
}

TEST_CASE("input documents are validated with locations") {
    CHECK(error_of("{\n \"version\": 1,\n \"geometry\": \"h2\"\n \"generators\": []}").find("line 4") != std::string::npos);
    CHECK(error_of("{\"geometry\": \"h2\", \"generators\": [1]}").find("version") != std::string::npos);
    CHECK(error_of("{\"version\": 2, \"geometry\": \"h2\", \"generators\": [1]}").find("unsupported") != std::string::npos);
    CHECK(error_of("{\"version\": 1, \"geometry\": \"sphere\", \"generators\": [1]}").find("unknown geometry") !=
          std::string::npos);
    CHECK(error_of("{\"version\": 1, \"geometry\": \"h2\", \"generators\": []}").find("nonempty") != std::string::npos);

    auto doc = io::parse_document("{\n\"version\": 1,\n\"geometry\": \"h2\",\n\"generators\": [\n[[1, 2], [0, 1]],\n[[1, 0], [2, 3]]\n]}");
    std::string e = error_in([&] { io::read_h2(doc); });
    CHECK(e.find("line 6") != std::string::npos);
    CHECK(e.find("/generators/1") != std::string::npos);

    auto tree = io::parse_document(R"({"version": 1, "geometry": "tree-free", "rank": 2, "generators": ["xz"]})");
    CHECK(error_in([&] { io::read_tree_free(tree); }).find("/generators/0") != std::string::npos);
    auto dup = io::parse_document(R"({"version": 1, "geometry": "tree-free", "generators": ["x", "x"]})");
    CHECK(error_in([&] { io::read_tree_free(dup); }).find("/generators") != std::string::npos);
    auto eu = io::parse_document(R"({"version": 1, "geometry": "euclidean", "generators": [{"R": [[1, 0], [0, 1]], "t": [0]}]})");
    CHECK_FALSE(error_in([&] { io::read_euclidean(eu); }).empty());
}

TEST_CASE("every geometry reads") {
    auto padic = io::parse_document(
        R"({"version": 1, "geometry": "tree-padic", "p": 2, "generators": [[[2, 0], [0, "1/2"]], [["1", 1], [0, 1]]]})");
    CHECK(io::read_tree_padic(padic).size() == 2);
    auto pd = io::parse_document(
        R"({"version": 1, "geometry": "pd-matrix", "generators": [[[[0, 1], 0], [0, [0, -1]]], [[2, 0], [0, 0.5]]]})");
    auto s = io::read_pd(pd);
    CHECK(s.size() == 2);
    CHECK_FALSE(s[0].is_real());
    CHECK(io::read_metric(pd) == matrix::Metric::riemannian);
}

TEST_CASE("analyze examples") {
    auto xy = io::parse_document(R"({"version": 1, "geometry": "tree-free", "generators": ["x", "y"]})");
    auto r = app::analyze_document(xy, 2);
    CHECK(r.all_ok());
    CHECK(r.displacement["L_upper"] == 1.0);
    CHECK(r.displacement["ell_bracket"]["lower"] == 1.0);
    CHECK(r.displacement["ell_bracket"]["upper"] == 1.0);

    auto id = io::parse_document(R"({"version": 1, "geometry": "tree-free", "generators": ["1"]})");
    auto z = app::analyze_document(id, 3);
    CHECK(z.all_ok());
    CHECK(z.displacement["L_upper"] == 0.0);
    for (const auto& v : z.displacement["L_powers"]) CHECK(v == 0.0);
    for (const auto& c : z.checks) CHECK(c.value == 0.0);
    CHECK_THROWS_AS(app::analyze_document(id, 0), InputError);
}

TEST_CASE("reports round-trip losslessly") {
    io::RunReport r;
    r.command = "repro";
    r.spec = {{"experiment", "x"}, {"seed", 18446744073709551615ull}};
    r.add_check("third", 1.0 / 3.0, 1e-9);
    r.add_check("infinite", INFINITY, 0);
    r.add_check("negative", -0.1, 0.01);
    r.skipped.emplace_back("some check", "not applicable");
    r.displacement = {{"L_upper", io::number(-INFINITY)}};
    r.results = {{"values", {0.1, 1e-300, 123456789.123456789}}};
    r.wall_time_s = 0.25;
    CHECK_FALSE(r.all_ok());
    auto back = io::report_from_json(json::parse(io::dump(r)));
    CHECK(back == r);
    CHECK(io::dump(back) == io::dump(r));
    CHECK(std::isinf(io::number_from(back.displacement["L_upper"])));
    CHECK_THROWS_AS(io::report_from_json(json::parse("{\"command\": 1}")), InputError);
}

TEST_CASE("experiments are deterministic and validate parameters") {
    for (const auto& name : app::experiment_names()) {
        app::ExperimentSpec spec{name, json::object(), 3};
        // keep the run small
        if (name == "tree-formula") spec.parameters = {{"trials", 20}};
        if (name == "bochi-h2") spec.parameters = {{"pairs", 10}};
        if (name == "helly") spec.parameters = {{"graphs", 5}, {"nmax", 16}};
        if (name == "pingpong") spec.parameters = {{"sets", 5}};
        if (name == "jsr") spec.parameters = {{"nmax", 8}};
        if (name == "bass-r4") spec.parameters = {{"depth", 3}};
        auto a = app::run_experiment(spec), b = app::run_experiment(spec);
        CAPTURE(name);
        CHECK(io::dump(a.report) == io::dump(b.report));
        CHECK_FALSE(a.csv.empty());
        for (const auto& [stem, table] : a.csv) CHECK_FALSE(table.header.empty());
        CHECK(a.report.spec["seed"] == 3);
    }
    CHECK_THROWS_AS(app::run_experiment({"nope", json::object(), 1}), InputError);
    CHECK_THROWS_AS(app::run_experiment({"tree-formula", {{"trials", 0}}, 1}), InputError);
    CHECK_THROWS_AS(app::run_experiment({"tree-formula", {{"trails", 5}}, 1}), InputError);
    CHECK_THROWS_AS(app::run_experiment({"jsr", {{"preset", "other"}}, 1}), InputError);
    CHECK_THROWS_AS(app::run_experiment({"almost-elliptic", {{"eps", {0.5}}}, 1}), InputError);
    CHECK_THROWS_AS(app::run_experiment({"jsr", {{"nmax", 24}, {"preset", "binary-pair"}}, 1}), BudgetError);
}

TEST_CASE("CSV quoting") {
    io::CsvTable t{{"a", "b"}, {}};
    t.add({"x,y", "say \"hi\""});
    CHECK(t.str() == "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n");
    CHECK_THROWS(t.add({"only one"}));
    CHECK(io::csv_num(0.1) == "0.10000000000000001");
}
