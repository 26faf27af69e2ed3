#include "jointdisp/app/experiments.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "jointdisp/core/errors.hpp"
#include "jointdisp/core/quantities.hpp"
#include "jointdisp/freeness/freeness.hpp"
#include "jointdisp/graph/graph.hpp"
#include "jointdisp/tree/tree_formula.hpp"

namespace jd::app {

using io::csv_num;
using io::json;
using io::number;
using tree::FreeTreeGeometry;
using tree::FreeWord;
using FreeSet = GeneratingSet<FreeTreeGeometry>;

// ---------------------------------------------------------------- generators

FreeWord random_reduced_word(Rng& rng, int rank, int min_len, int max_len) {
    std::uniform_int_distribution<int> len(min_len, max_len), gen(1, rank);
    std::bernoulli_distribution sign(0.5);
    std::vector<int> ls;
    int n = len(rng);
    while (static_cast<int>(ls.size()) < n) {
        int l = gen(rng) * (sign(rng) ? 1 : -1);
        if (!ls.empty() && ls.back() == -l) continue;
        ls.push_back(l);
    }
    return FreeWord(ls);
}

FreeSet random_free_set(Rng& rng, int rank, int max_size, int max_len) {
    int n = std::uniform_int_distribution<int>(1, max_size)(rng);
    std::vector<FreeWord> words;
    std::set<std::string> seen;
    while (static_cast<int>(words.size()) < n) {
        auto w = random_reduced_word(rng, rank, 1, max_len);
        if (seen.insert(w.str()).second) words.push_back(w);
    }
    return FreeSet(FreeTreeGeometry(rank), words);
}

FreeSet random_noncyclic_free_set(Rng& rng, int rank, int max_size, int max_len) {
    if (max_size < 2) throw InputError("a non-cyclic set needs at least two elements");
    while (true) {
        auto s = random_free_set(rng, rank, max_size, max_len);
        if (s.size() < 2 || tree::tree_formula_L(s) <= 0) continue;
        for (const auto& a : s.elements())
            for (const auto& b : s.elements())
                if (a * b != b * a) return s;
    }
}

h2::Moebius random_sl2r(Rng& rng, double range) {
    std::uniform_real_distribution<double> u(-range, range);
    while (true) {
        double a = u(rng), b = u(rng), c = u(rng);
        if (std::abs(a) < 0.2) continue;
        double d = (1 + b * c) / a;
        if (std::abs(d) > range) continue;
        return h2::Moebius::normalized(a, b, c, d);
    }
}

matrix::MatrixIsometry random_sl2z(Rng& rng, int bound) {
    std::uniform_int_distribution<int> u(-bound, bound);
    while (true) {
        int a = u(rng), b = u(rng), c = u(rng), d = u(rng);
        if (a * d - b * c == 1) return matrix::MatrixIsometry::from_int(2, {a, b, c, d});
    }
}

// ---------------------------------------------------------------- parameters

namespace {

class Params {
public:
    Params(const ExperimentSpec& spec, std::vector<std::string> known) : spec_(spec) {
        if (!spec.parameters.is_object()) throw InputError(spec.name + ": parameters must be an object");
        for (const auto& [k, v] : spec.parameters.items())
            if (std::find(known.begin(), known.end(), k) == known.end())
                throw InputError(spec.name + ": unknown parameter \"" + k + "\"");
    }

    int integer(const std::string& k, int def, int lo, int hi) {
        int v = def;
        if (has(k)) {
            if (!at(k).is_number_integer()) bad(k, "an integer");
            v = at(k).get<int>();
        }
        if (v < lo || v > hi) bad(k, "in " + std::to_string(lo) + ".." + std::to_string(hi));
        echo_[k] = v;
        return v;
    }

    double real(const std::string& k, double def, double lo, double hi) {
        double v = def;
        if (has(k)) {
            if (!at(k).is_number()) bad(k, "a number");
            v = at(k).get<double>();
        }
        if (!(v >= lo && v <= hi)) bad(k, "in [" + csv_num(lo) + ", " + csv_num(hi) + "]");
        echo_[k] = v;
        return v;
    }

    std::vector<double> reals(const std::string& k, std::vector<double> def, double lo, double hi) {
        std::vector<double> v = def;
        if (has(k)) {
            v.clear();
            if (at(k).is_number()) v.push_back(at(k).get<double>());
            else if (at(k).is_array() && !at(k).empty()) {
                for (const auto& e : at(k)) {
                    if (!e.is_number()) bad(k, "a number or a list of numbers");
                    v.push_back(e.get<double>());
                }
            } else {
                bad(k, "a number or a list of numbers");
            }
        }
        for (double x : v)
            if (!(x >= lo && x <= hi)) bad(k, "in [" + csv_num(lo) + ", " + csv_num(hi) + "]");
        echo_[k] = v;
        return v;
    }

    std::string choice(const std::string& k, const std::string& def, const std::vector<std::string>& allowed) {
        std::string v = def;
        if (has(k)) {
            if (!at(k).is_string()) bad(k, "a string");
            v = at(k).get<std::string>();
        }
        if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
            std::string all;
            for (const auto& a : allowed) all += (all.empty() ? "" : ", ") + a;
            bad(k, "one of " + all);
        }
        echo_[k] = v;
        return v;
    }

    bool flag(const std::string& k, bool def) {
        bool v = def;
        if (has(k)) {
            if (!at(k).is_boolean()) bad(k, "true or false");
            v = at(k).get<bool>();
        }
        echo_[k] = v;
        return v;
    }

    std::optional<std::string> text(const std::string& k) {
        if (!has(k)) return std::nullopt;
        if (!at(k).is_string()) bad(k, "a string");
        echo_[k] = at(k);
        return at(k).get<std::string>();
    }

    // the spec echo: name, seed and every parameter with its effective value
    json echo() const { return {{"experiment", spec_.name}, {"seed", spec_.seed}, {"parameters", echo_}}; }

private:
    bool has(const std::string& k) const { return spec_.parameters.contains(k); }
    const json& at(const std::string& k) const { return spec_.parameters.at(k); }
    [[noreturn]] void bad(const std::string& k, const std::string& what) const {
        throw InputError(spec_.name + ": parameter \"" + k + "\" must be " + what);
    }

    const ExperimentSpec& spec_;
    json echo_ = json::object();
};

std::string words_str(const FreeSet& s) {
    std::string out;
    for (const auto& w : s.elements()) out += (out.empty() ? "" : " ") + w.str();
    return out;
}

ExperimentOutput start(const Params& p) {
    ExperimentOutput out;
    out.report.command = "repro";
    out.report.spec = p.echo();
    return out;
}

// ---------------------------------------------------------------- experiments

ExperimentOutput tree_formula(const ExperimentSpec& spec) {
    Params p(spec, {"rank", "trials", "max_size", "max_len"});
    int rank = p.integer("rank", 2, 1, 6);
    int trials = p.integer("trials", 500, 1, 100000);
    int max_size = p.integer("max_size", 4, 1, 6);
    int max_len = p.integer("max_len", 6, 1, 8);
    auto out = start(p);
    Rng rng(spec.seed);
    io::CsvTable t{{"trial", "generators", "formula", "brute_force"}, {}};
    int agree = 0;
    double worst = 0;
    for (int i = 0; i < trials; ++i) {
        auto s = random_free_set(rng, rank, max_size, max_len);
        int radius = 1;
        for (const auto& w : s.elements()) radius = std::max(radius, w.length());
        // a minimizer lies in the subtree spanned by e and the s·e
        double f = tree::tree_formula_L(s), b = tree::brute_force_L(s, radius).value;
        agree += f == b;
        worst = std::max(worst, std::abs(f - b));
        t.add({std::to_string(i), words_str(s), csv_num(f), csv_num(b)});
    }
    out.report.add_check("tree formula agreements - trials", agree - trials, 0);
    out.report.results = {{"trials", trials}, {"agreements", agree}, {"max_abs_difference", number(worst)}};
    out.csv.emplace_back("tree_formula", std::move(t));
    return out;
}

ExperimentOutput bochi_h2(const ExperimentSpec& spec) {
    Params p(spec, {"pairs", "range"});
    int pairs = p.integer("pairs", 200, 1, 10000);
    double range = p.real("range", 3.0, 1.0, 100.0);
    auto out = start(p);
    Rng rng(spec.seed);
    io::CsvTable t{{"trial", "L_upper", "lambda2", "gap", "gap_over_delta"}, {}};
    double least = INFINITY, most = -INFINITY;
    for (int i = 0; i < pairs; ++i) {
        auto s = h2::H2Set::deduplicated(h2::H2Geometry{}, {random_sl2r(rng, range), random_sl2r(rng, range)});
        auto g = h2::bochi_hyp_gap(s);
        least = std::min(least, g.gap);
        most = std::max(most, g.gap);
        t.add({std::to_string(i), csv_num(g.L_upper), csv_num(g.lambda2), csv_num(g.gap), csv_num(g.gap_over_delta)});
    }
    out.report.add_check("min over pairs of L(S) - lambda_2(S)", least, 1e-9);
    out.report.results = {{"pairs", pairs}, {"min_gap", number(least)}, {"max_gap", number(most)},
                          {"max_gap_over_delta", number(most / h2::kDelta)}};
    out.csv.emplace_back("bochi_h2", std::move(t));
    return out;
}

ExperimentOutput almost_elliptic(const ExperimentSpec& spec) {
    Params p(spec, {"eps", "x1", "x2"});
    auto eps_list = p.reals("eps", {1e-2, 1e-3}, 1e-12, 0.1);
    double x1 = p.real("x1", 0.05, 1e-6, 0.2), x2 = p.real("x2", 0.05, 1e-6, 0.2);
    auto out = start(p);
    io::CsvTable t{{"eps", "L_at_i", "L_upper", "lambda2", "gap"}, {}};
    json rows = json::array();
    for (double eps : eps_list) {
        auto s = h2::almost_elliptic_pair(eps, x1, x2);
        double at_i = joint_displacement_at(s, h2::HPoint{0, 1});
        auto g = h2::bochi_hyp_gap(s);
        std::string tag = " [eps=" + csv_num(eps) + "]";
        out.report.add_check("1e-9 - |L(S,i) - eps|" + tag, 1e-9 - std::abs(at_i - eps), 0);
        out.report.add_check("-lambda_2" + tag, -g.lambda2, 0);
        out.report.add_check("1e-9 - |gap - eps|" + tag, 1e-9 - std::abs(g.gap - eps), 0);
        rows.push_back({{"eps", eps}, {"L_at_i", number(at_i)}, {"L_upper", number(g.L_upper)},
                        {"lambda2", number(g.lambda2)}, {"gap", number(g.gap)}});
        t.add({csv_num(eps), csv_num(at_i), csv_num(g.L_upper), csv_num(g.lambda2), csv_num(g.gap)});
    }
    out.report.results = {{"instances", rows}};
    out.csv.emplace_back("almost_elliptic", std::move(t));
    return out;
}

ExperimentOutput bass_r4(const ExperimentSpec& spec) {
    Params p(spec, {"depth", "centred"});
    int depth = p.integer("depth", 6, 1, 8);
    bool centred = p.flag("centred", false);
    auto out = start(p);
    auto ex = euclid::bass_example(depth, spec.seed, centred);
    const auto& r = ex.report;
    out.report.add_check("eigenvalue margin - 1e-6", r.eigen_margin - 1e-6, 0);
    out.report.add_check("-lambda_N", -r.lambda_N, 1e-12);
    out.report.add_check("greedy lower bound - 0.1", r.greedy_bound - 0.1, 0);
    out.report.add_check("no common fixed point", r.common_fixed_point ? -1.0 : 0.0, 0);
    out.report.add_check("L_upper - sine lower bound", r.L_upper - r.L_lower, 1e-9);
    json fields = {{"seed_used", r.seed_used},
                   {"depth", r.depth},
                   {"words_checked", r.words_checked},
                   {"eigen_margin", number(r.eigen_margin)},
                   {"lambda_N", number(r.lambda_N)},
                   {"common_fixed_point", r.common_fixed_point},
                   {"greedy_bound", number(r.greedy_bound)},
                   {"L_upper", number(r.L_upper)},
                   {"L_lower_linear", number(r.L_lower_linear)},
                   {"L_lower_sine", number(r.L_lower)},
                   {"center_distance", number(r.center_distance)},
                   {"min_angle", number(r.min_angle)}};
    io::CsvTable t{{"field", "value"}, {}};
    for (const auto& [k, v] : fields.items()) t.add({k, v.is_string() ? v.get<std::string>() : v.dump()});
    out.report.results = fields;
    out.csv.emplace_back("bass_r4", std::move(t));
    return out;
}

ExperimentOutput jsr(const ExperimentSpec& spec) {
    Params p(spec, {"preset", "nmax", "input"});
    auto input = p.text("input");
    std::string preset = input ? "input" : p.choice("preset", "binary-pair", {"binary-pair"});
    int nmax = p.integer("nmax", 16, 1, 24);
    auto out = start(p);
    matrix::PdGeometry geo(2);
    std::optional<matrix::PdSet> s;
    if (input) {
        auto doc = io::read_document(*input);
        if (doc.geometry != "pd-matrix") throw InputError("jsr input must use geometry pd-matrix");
        s.emplace(io::read_pd(doc));
    } else {
        s.emplace(geo, std::vector<matrix::MatrixIsometry>{matrix::MatrixIsometry::from_int(2, {1, 1, 0, 1}),
                                                           matrix::MatrixIsometry::from_int(2, {1, 0, 1, 1})});
    }
    auto r = matrix::jsr_bracket(*s, nmax);
    io::CsvTable t{{"n", "lower", "upper", "width"}, {}};
    for (std::size_t j = 0; j < r.lower_by_level.size(); ++j)
        t.add({std::to_string(j + 1), csv_num(r.lower_by_level[j]), csv_num(r.upper_by_level[j]),
               csv_num(r.upper_by_level[j] - r.lower_by_level[j])});
    out.report.add_check("bracket upper - lower", r.bracket.width(), 1e-12);
    if (preset == "binary-pair") {
        const double phi = std::numbers::phi;
        out.report.add_check("0.02 - bracket width", 0.02 - r.bracket.width(), 0);
        double miss = std::max({0.0, r.bracket.lower - phi, phi - r.bracket.upper});
        out.report.add_check("0.01 - distance from golden ratio to bracket", 0.01 - miss, 0);
    }
    out.report.results = {{"preset", preset},
                          {"bracket", io::bracket_json(r.bracket)},
                          {"pd_lambda", number(r.pd_lambda)},
                          {"words", r.words}};
    out.csv.emplace_back("jsr", std::move(t));
    return out;
}

ExperimentOutput helly(const ExperimentSpec& spec) {
    Params p(spec, {"graphs", "nmax", "tree_every"});
    int graphs = p.integer("graphs", 100, 1, 10000);
    int nmax = p.integer("nmax", 40, 8, graph::kMaxVertices);
    int tree_every = p.integer("tree_every", 4, 1, 1000);
    auto out = start(p);
    Rng rng(spec.seed);
    io::CsvTable t{{"instance", "n", "edges", "tree", "slim_delta", "four_point_delta", "radius", "bound"}, {}};
    double worst = INFINITY;
    int tree_worst = 0, inexact = 0;
    for (int i = 0; i < graphs; ++i) {
        int n = std::uniform_int_distribution<int>(8, nmax)(rng);
        std::uint64_t gseed = rng();
        bool is_tree = i % tree_every == 0;
        auto g = is_tree ? graph::random_tree(n, gseed) : graph::random_graph(n, std::min(1.0, 1.3 * std::log(n) / n), gseed);
        std::uniform_int_distribution<int> v(0, n - 1);
        int a = v(rng), b = v(rng), c = v(rng);
        std::vector<graph::ConvexSet> sets{graph::convex_hull(g, {a, b}), graph::convex_hull(g, {b, c}),
                                           graph::convex_hull(g, {c, a})};
        auto d = graph::slim_delta(g);
        inexact += !d.exact;
        int radius = graph::helly_min_radius(g, sets);
        if (d.exact) worst = std::min(worst, 28.0 * d.value - radius);
        if (is_tree) tree_worst = std::max(tree_worst, radius);
        t.add({std::to_string(i), std::to_string(n), std::to_string(g.edges().size()), is_tree ? "1" : "0",
               std::to_string(d.value), csv_num(graph::four_point_delta(g)), std::to_string(radius),
               std::to_string(28 * d.value)});
    }
    out.report.add_check("min over graphs of 28 slim_delta - helly radius", worst, 0);
    out.report.add_check("-max helly radius on trees", -tree_worst, 0);
    out.report.results = {{"graphs", graphs}, {"sampled_delta_instances", inexact}};
    out.csv.emplace_back("helly", std::move(t));
    return out;
}

ExperimentOutput pingpong(const ExperimentSpec& spec) {
    Params p(spec, {"sets", "rank", "max_size", "max_len", "depth"});
    int sets = p.integer("sets", 100, 1, 10000);
    int rank = p.integer("rank", 2, 2, 6);
    int max_size = p.integer("max_size", 3, 2, 6);
    int max_len = p.integer("max_len", 4, 1, 8);
    int depth = p.integer("depth", 12, 1, 16);
    auto out = start(p);
    Rng rng(spec.seed);
    io::CsvTable t{{"trial", "generators", "verdict", "kind", "u", "v", "u_word", "v_word", "distinct"}, {}};
    int certified = 0, pingpongs = 0, distinct = 0;
    FreeTreeGeometry geo(rank);
    for (int i = 0; i < sets; ++i) {
        auto s = random_noncyclic_free_set(rng, rank, max_size, max_len);
        freeness::SemigroupOptions o;
        o.distinctness_depth = depth;
        auto c = freeness::semigroup_from_displacement(s, o);
        bool ok = c.verdict == freeness::Verdict::certified;
        certified += ok;
        pingpongs += ok && c.kind == freeness::CertificateKind::pingpong;
        bool dist = false;
        if (ok) {
            auto d = freeness::word_distinctness(geo, FreeWord::parse(c.u), FreeWord::parse(c.v), depth);
            dist = d.verdict == freeness::Verdict::certified;
            distinct += dist;
        }
        t.add({std::to_string(i), words_str(s), freeness::to_string(c.verdict), freeness::to_string(c.kind), c.u, c.v,
               c.u_word, c.v_word, dist ? "1" : "0"});
    }
    out.report.add_check("certified sets - sets", certified - sets, 0);
    out.report.add_check("distinct certificates - certified sets", distinct - certified, 0);
    out.report.results = {{"sets", sets}, {"certified", certified}, {"by_pingpong", pingpongs}, {"distinct", distinct}};
    out.csv.emplace_back("pingpong", std::move(t));
    return out;
}

ExperimentOutput entropy(const ExperimentSpec& spec) {
    Params p(spec, {"set", "nmax"});
    std::string which = p.choice("set", "f2", {"f2", "pair"});
    int nmax = p.integer("nmax", which == "f2" ? 8 : 10, 1, 14);
    auto out = start(p);
    std::optional<FreeSet> s;
    json info = json::object();
    if (which == "f2") {
        s.emplace(FreeTreeGeometry(2), std::vector<FreeWord>{FreeWord::parse("x"), FreeWord::parse("X"),
                                                              FreeWord::parse("y"), FreeWord::parse("Y")});
    } else {
        Rng rng(spec.seed);
        auto base = random_noncyclic_free_set(rng, 2, 3, 4);
        auto c = freeness::semigroup_from_displacement(base);
        if (c.verdict != freeness::Verdict::certified) throw PreconditionError("no certified pair for this seed");
        s.emplace(FreeTreeGeometry(2), std::vector<FreeWord>{FreeWord::parse(c.u), FreeWord::parse(c.v)});
        info = {{"base", words_str(base)}, {"u", c.u}, {"v", c.v}};
    }
    auto seq = freeness::entropy_sequence(*s, nmax);
    io::CsvTable t{{"n", "size", "rate"}, {}};
    json rows = json::array();
    for (const auto& e : seq) {
        t.add({std::to_string(e.n), std::to_string(e.size), csv_num(e.rate)});
        rows.push_back({{"n", e.n}, {"size", e.size}, {"rate", number(e.rate)}});
    }
    double rate = seq.back().rate;
    if (which == "f2") {
        out.report.add_check("0.05 - |log|S^n|/n - log 3|", 0.05 - std::abs(rate - std::log(3.0)), 0);
    } else {
        out.report.add_check("log|S^n|/n - (log 2 - 0.05)", rate - (std::log(2.0) - 0.05), 0);
    }
    info["sequence"] = rows;
    out.report.results = info;
    out.csv.emplace_back("entropy", std::move(t));
    return out;
}

template <Geometry G>
io::RunReport analyze_set(const GeneratingSet<G>& s, int k, const MinimizeOptions& opts) {
    io::RunReport r;
    r.command = "analyze";
    auto rep = analyze(s, k, s.geometry().hyperbolicity(), opts);
    r.add_battery(rep.battery);
    r.displacement = io::displacement_json(rep, s.geometry());
    json keys = json::array();
    for (const auto& key : s.keys()) keys.push_back(key);
    r.results = {{"size", s.size()}, {"keys", keys}, {"delta", number(s.geometry().hyperbolicity())}};
    return r;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names{"tree-formula", "bochi-h2", "almost-elliptic", "bass-r4",
                                                "jsr",          "helly",    "pingpong",        "entropy"};
    return names;
}

ExperimentOutput run_experiment(const ExperimentSpec& spec) {
    if (spec.name == "tree-formula") return tree_formula(spec);
    if (spec.name == "bochi-h2") return bochi_h2(spec);
    if (spec.name == "almost-elliptic") return almost_elliptic(spec);
    if (spec.name == "bass-r4") return bass_r4(spec);
    if (spec.name == "jsr") return jsr(spec);
    if (spec.name == "helly") return helly(spec);
    if (spec.name == "pingpong") return pingpong(spec);
    if (spec.name == "entropy") return entropy(spec);
    throw InputError("unknown experiment \"" + spec.name + "\"");
}

io::RunReport analyze_document(const io::InputDocument& in, int k, const MinimizeOptions& opts) {
    if (k < 1 || k > 8) throw InputError("powers must be in 1..8");
    io::RunReport r;
    if (in.geometry == "tree-free") r = analyze_set(io::read_tree_free(in), k, opts);
    else if (in.geometry == "tree-padic") r = analyze_set(io::read_tree_padic(in), k, opts);
    else if (in.geometry == "h2") r = analyze_set(io::read_h2(in), k, opts);
    else if (in.geometry == "euclidean") r = analyze_set(io::read_euclidean(in), k, opts);
    else if (io::read_metric(in) == matrix::Metric::finsler) r = analyze_set(matrix::as_finsler(io::read_pd(in)), k, opts);
    else r = analyze_set(io::read_pd(in), k, opts);
    r.spec = {{"geometry", in.geometry}, {"powers", k}, {"input", in.doc}};
    return r;
}

}  // namespace jd::app
