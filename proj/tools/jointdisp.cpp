#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "jointdisp/app/experiments.hpp"
#include "jointdisp/core/errors.hpp"

namespace {

using jd::io::json;

enum class Kind { number, text, list, flag };

struct Flag {
    const char* name;  // long option without dashes
    const char* key;   // parameter key
    Kind kind;
    const char* help;
};

const std::map<std::string, std::vector<Flag>>& experiment_flags() {
    static const std::map<std::string, std::vector<Flag>> flags{
        {"tree-formula",
         {{"rank", "rank", Kind::number, "free group rank"},
          {"trials", "trials", Kind::number, "number of random generating sets"},
          {"max-size", "max_size", Kind::number, "largest generating set"},
          {"max-len", "max_len", Kind::number, "longest generator word"}}},
        {"bochi-h2",
         {{"pairs", "pairs", Kind::number, "number of random pairs"},
          {"range", "range", Kind::number, "entry range of the random matrices"}}},
        {"almost-elliptic",
         {{"eps", "eps", Kind::list, "one or more values of eps"},
          {"x1", "x1", Kind::number, "first ratio eps/r"},
          {"x2", "x2", Kind::number, "second ratio eps/r"}}},
        {"bass-r4",
         {{"depth", "depth", Kind::number, "word length N"},
          {"centred", "centred", Kind::flag, "use one common centre (the degenerate case)"}}},
        {"jsr",
         {{"preset", "preset", Kind::text, "matrix pair preset"},
          {"nmax", "nmax", Kind::number, "longest product"},
          {"input", "input", Kind::text, "pd-matrix JSON file instead of a preset"}}},
        {"helly",
         {{"graphs", "graphs", Kind::number, "number of random graphs"},
          {"nmax", "nmax", Kind::number, "largest vertex count"},
          {"tree-every", "tree_every", Kind::number, "every k-th instance is a tree"}}},
        {"pingpong",
         {{"sets", "sets", Kind::number, "number of random free-group sets"},
          {"rank", "rank", Kind::number, "free group rank"},
          {"max-size", "max_size", Kind::number, "largest generating set"},
          {"max-len", "max_len", Kind::number, "longest generator word"},
          {"depth", "depth", Kind::number, "distinctness depth"}}},
        {"entropy",
         {{"set", "set", Kind::text, "f2 (standard symmetric set) or pair (a certified semigroup pair)"},
          {"nmax", "nmax", Kind::number, "largest power"}}},
    };
    return flags;
}

const std::map<std::string, std::string>& experiment_help() {
    static const std::map<std::string, std::string> help{
        {"tree-formula", "tree formula against brute force on random free-group sets"},
        {"bochi-h2", "L(S) - lambda_2(S) on random pairs in the hyperbolic plane"},
        {"almost-elliptic", "elliptic pairs that move i by exactly eps"},
        {"bass-r4", "two rotations of R^4 whose short words all fix a point"},
        {"jsr", "joint spectral radius bracket"},
        {"helly", "Helly radius against 28 delta on random graphs"},
        {"pingpong", "free semigroup certificates on random free-group sets"},
        {"entropy", "growth rate log|S^n|/n"},
    };
    return help;
}

struct Common {
    std::string report;
    std::string csv;
    bool timing = false;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--report", c.report, "write the JSON report here instead of stdout");
    sub->add_option("--csv", c.csv, "directory for CSV series");
    sub->add_flag("--timing", c.timing, "include wall time (reports are then no longer byte-identical)");
}

json number_arg(const std::string& flag, const std::string& s) {
    json j;
    try {
        j = json::parse(s);
    } catch (const json::exception&) {
    }
    if (!j.is_number()) throw jd::InputError("--" + flag + " expects a number, got \"" + s + "\"");
    return j;
}

void emit(const jd::io::RunReport& r, const Common& c) {
    std::string text = jd::io::dump(r);
    if (c.report.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.report);
    if (!f) throw jd::InputError("cannot write " + c.report);
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joint minimal displacement of isometry sets"};
    app.set_version_flag("--version", std::string(jd::io::kToolVersion));
    app.require_subcommand(1);

    Common common;
    std::string geometry, input;
    int powers = 2;
    auto* analyze = app.add_subcommand("analyze", "analyze a generating set from a JSON file");
    analyze->add_option("--geometry", geometry, "geometry of the input")
        ->check(CLI::IsMember({"tree-free", "tree-padic", "h2", "euclidean", "pd-matrix"}));
    analyze->add_option("--input", input, "input JSON")->required();
    analyze->add_option("--powers", powers, "largest power k")->check(CLI::Range(1, 8));
    add_common(analyze, common);

    auto* repro = app.add_subcommand("repro", "run a named reproduction experiment");
    repro->require_subcommand(1);
    std::uint64_t seed = 1;
    std::map<std::string, std::string> numbers, texts;
    std::map<std::string, std::vector<std::string>> lists;
    std::map<std::string, bool> flags;
    std::map<std::string, CLI::App*> subs;
    for (const auto& name : jd::app::experiment_names()) {
        auto* sub = repro->add_subcommand(name, experiment_help().at(name));
        subs[name] = sub;
        sub->add_option("--seed", seed, "random seed");
        for (const auto& f : experiment_flags().at(name)) {
            std::string opt = std::string("--") + f.name, key = name + "/" + f.key;
            switch (f.kind) {
                case Kind::number: sub->add_option(opt, numbers[key], f.help); break;
                case Kind::text: sub->add_option(opt, texts[key], f.help); break;
                case Kind::list: sub->add_option(opt, lists[key], f.help); break;
                case Kind::flag: sub->add_flag(opt, flags[key], f.help); break;
            }
        }
        add_common(sub, common);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    auto t0 = std::chrono::steady_clock::now();
    try {
        jd::io::RunReport report;
        if (analyze->parsed()) {
            auto doc = jd::io::read_document(input);
            if (!geometry.empty() && geometry != doc.geometry)
                throw jd::InputError("--geometry " + geometry + " does not match the file's geometry " + doc.geometry);
            report = jd::app::analyze_document(doc, powers);
            report.spec["input_path"] = input;
        } else {
            jd::app::ExperimentSpec spec;
            for (const auto& [name, sub] : subs) {
                if (!sub->parsed()) continue;
                spec.name = name;
                for (const auto& f : experiment_flags().at(name)) {
                    std::string key = name + "/" + f.key;
                    if (sub->count(std::string("--") + f.name) == 0) continue;
                    switch (f.kind) {
                        case Kind::number: spec.parameters[f.key] = number_arg(f.name, numbers[key]); break;
                        case Kind::text: spec.parameters[f.key] = texts[key]; break;
                        case Kind::list: {
                            json arr = json::array();
                            for (const auto& s : lists[key]) arr.push_back(number_arg(f.name, s));
                            spec.parameters[f.key] = arr;
                            break;
                        }
                        case Kind::flag: spec.parameters[f.key] = flags[key]; break;
                    }
                }
            }
            spec.seed = seed;
            auto out = jd::app::run_experiment(spec);
            report = std::move(out.report);
            if (!common.csv.empty()) {
                std::filesystem::create_directories(common.csv);
                for (const auto& [stem, table] : out.csv) table.write(common.csv + "/" + stem + ".csv");
            }
        }
        if (common.timing)
            report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        emit(report, common);
        for (const auto& c : report.checks)
            if (!c.ok) std::cerr << "check failed: " << c.name << " = " << c.value << "\n";
        return report.all_ok() ? 0 : 1;
    } catch (const jd::BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 3;
    } catch (const jd::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const jd::PreconditionError& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }
}
