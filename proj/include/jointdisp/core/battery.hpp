#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "jointdisp/core/quantities.hpp"

namespace jd {

struct Slack {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool ok() const { return value >= -tolerance; }
};

struct SkippedCheck {
    std::string name;
    std::string reason;
};

struct BatteryResult {
    std::vector<Slack> slacks;
    std::vector<SkippedCheck> skipped;
    bool all_ok() const {
        return std::all_of(slacks.begin(), slacks.end(), [](const Slack& s) { return s.ok(); });
    }
    double min_slack() const {
        double m = std::numeric_limits<double>::infinity();
        for (const auto& s : slacks) m = std::min(m, s.value);
        return m;
    }
};

template <Geometry G>
struct DisplacementReport {
    double L_upper = 0.0;
    typename G::Point witness;
    MinimizeStatus status = MinimizeStatus::converged;
    Bracket ell_bracket;
    std::vector<LambdaEntry> lambda_values;
    Bracket circumradius;
    BatteryResult battery;
    std::vector<double> power_values;  // L(S^n) for n = 1..k
};

namespace detail {

// Tolerance for comparisons that involve minimized (upper-bound) quantities.
template <Geometry G>
double minimized_tol(double scale) {
    return G::kExact ? 0.0 : kMinimizeTol * (1.0 + std::abs(scale));
}

}  // namespace detail

// Runs every applicable inequality on S with powers up to k and fills a report.
// delta = +inf skips the hyperbolic-only checks.
template <Geometry G>
DisplacementReport<G> analyze(const GeneratingSet<G>& s, int k, double delta, const MinimizeOptions& opts = {},
                              std::size_t budget = kDefaultBudget) {
    const G& geo = s.geometry();
    const double ctol = tolerance_of<G>();
    PowerTower<G> tower(s, budget);
    auto asym = asymptotic_bracket(tower, k, opts);

    DisplacementReport<G> rep{asym.base_min.value, asym.base_min.point, asym.base_min.status,
                              asym.bracket, asym.lambdas, circumradius_bracket(asym.base_min.value), {}, {}};
    const double L = rep.L_upper;
    auto& out = rep.battery;
    auto add = [&](std::string name, double value, double tol) { out.slacks.push_back({std::move(name), value, tol}); };

    rep.power_values.push_back(L);
    for (int n = 2; n <= k; ++n) {
        rep.power_values.push_back(n == k ? asym.power_min.value
                                          : minimal_displacement(tower.level(n), opts, rep.witness).value);
    }
    double scale = L * k;

    // general nonsense chain
    add("chain: lambda_k - lambda_1", asym.lambdas.back().value - asym.lambdas.front().value, ctol);
    add("chain: bracket.upper - bracket.lower", rep.ell_bracket.upper - rep.ell_bracket.lower, ctol);
    add("chain: L(S) - bracket.upper", L - rep.ell_bracket.upper, ctol);
    for (int n = 1; n <= k; ++n) {
        double per = rep.power_values[n - 1] / n;
        add("chain: L(S^" + std::to_string(n) + ")/" + std::to_string(n) + " - lambda_k",
            per - rep.ell_bracket.lower, detail::minimized_tol<G>(scale));
        add("chain: L(S) - L(S^" + std::to_string(n) + ")/" + std::to_string(n), L - per,
            detail::minimized_tol<G>(scale));
    }

    const bool hyperbolic = std::isfinite(delta);
    if (geo.is_cat0() || hyperbolic) {
        auto ssi = quotient_set(s);
        double lq = minimal_displacement(ssi, opts, rep.witness).value;
        if (geo.is_cat0()) {
            for (int n = 1; n <= k; ++n) {
                add("cat0 powers: L(S^" + std::to_string(n) + ") - sqrt(n)/2 L(SS^-1)",
                    rep.power_values[n - 1] - std::sqrt(double(n)) / 2 * lq, detail::minimized_tol<G>(scale));
            }
        } else {
            out.skipped.push_back({"cat0 powers", "geometry is not CAT(0)"});
        }
        if (hyperbolic) {
            for (int n = 1; n <= k; ++n) {
                add("hyperbolic powers: L(S^" + std::to_string(n) + ")/n - L(SS^-1)/2 + 2delta",
                    rep.power_values[n - 1] / n - lq / 2 + 2 * delta, detail::minimized_tol<G>(scale));
            }
        } else {
            out.skipped.push_back({"hyperbolic powers", "space is not Gromov hyperbolic"});
        }
    } else {
        out.skipped.push_back({"cat0 powers", "geometry is not CAT(0)"});
        out.skipped.push_back({"hyperbolic powers", "space is not Gromov hyperbolic"});
    }

    if (hyperbolic && k >= 2) {
        double half = rep.power_values[1] / 2;
        add("squares vs ell: L(S^2)/2 - ell.lower", half - rep.ell_bracket.lower, detail::minimized_tol<G>(scale));
        add("squares vs ell: ell.upper + 2delta - L(S^2)/2", rep.ell_bracket.upper + 2 * delta - half, ctol);
    } else {
        out.skipped.push_back({"squares vs ell", hyperbolic ? "needs k >= 2" : "space is not Gromov hyperbolic"});
    }
    out.skipped.push_back({"uniform constant", "constant C is not effective"});

    if (geo.is_cat0()) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            GeneratingSet<G> single(geo, {s[i]});
            double lg = minimal_displacement(single, opts, rep.witness).value;
            double tl = geo.translation_length(s[i]);
            double tol = detail::minimized_tol<G>(lg);
            add("single element: L(g) - ell(g) [" + s.keys()[i] + "]", lg - tl, tol);
            add("single element: ell(g) - L(g) [" + s.keys()[i] + "]", tl - lg, tol);
        }
    } else {
        out.skipped.push_back({"single element", "geometry is not CAT(0)"});
    }
    return rep;
}

template <Geometry G>
BatteryResult inequality_battery(const GeneratingSet<G>& s, double delta, int k, const MinimizeOptions& opts = {}) {
    return analyze(s, k, delta, opts).battery;
}

}  // namespace jd
