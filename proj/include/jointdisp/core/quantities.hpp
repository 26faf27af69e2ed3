#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jointdisp/core/bracket.hpp"
#include "jointdisp/core/generating_set.hpp"
#include "jointdisp/core/power_set.hpp"

namespace jd {

// L(S, x) = max_s d(x, sx)
template <Geometry G>
double joint_displacement_at(const GeneratingSet<G>& s, const typename G::Point& x) {
    const G& geo = s.geometry();
    geo.check_point(x);
    double best = 0.0;
    for (const auto& g : s.elements()) best = std::max(best, static_cast<double>(geo.distance(x, geo.apply(g, x))));
    return best;
}

template <Geometry G>
MinimizeResult<typename G::Point> minimal_displacement(const GeneratingSet<G>& s, const MinimizeOptions& opts = {},
                                                       std::optional<typename G::Point> start = std::nullopt) {
    if (start) s.geometry().check_point(*start);
    return s.geometry().minimize(std::span<const typename G::Isometry>(s.elements()), opts, start);
}

struct LambdaEntry {
    int k = 0;
    double value = 0.0;      // λ_k(S)
    double level_max = 0.0;  // max_{g ∈ S^k} ℓ(g)/k
    std::string argmax_key;  // first element attaining λ_k
};

// λ_1, ..., λ_k along the tower.
template <Geometry G>
std::vector<LambdaEntry> lambda_profile(PowerTower<G>& tower, int k) {
    std::vector<LambdaEntry> out;
    double running = 0.0;
    std::string running_key;
    const G& geo = tower.base().geometry();
    for (int j = 1; j <= k; ++j) {
        const auto& level = tower.level(j);
        double level_max = 0.0;
        std::string level_key = level.keys().front();
        for (std::size_t i = 0; i < level.size(); ++i) {
            double v = geo.translation_length(level[i]) / j;
            if (v > level_max) {
                level_max = v;
                level_key = level.keys()[i];
            }
        }
        if (j == 1 || level_max > running) {
            running = std::max(running, level_max);
            running_key = level_key;
        }
        out.push_back({j, running, level_max, running_key});
    }
    return out;
}

template <Geometry G>
double lambda_k(const GeneratingSet<G>& s, int k, std::size_t budget = kDefaultBudget) {
    PowerTower<G> tower(s, budget);
    return lambda_profile(tower, k).back().value;
}

template <Geometry G>
struct AsymptoticResult {
    Bracket bracket;
    std::vector<LambdaEntry> lambdas;
    MinimizeResult<typename G::Point> base_min;   // L(S)
    MinimizeResult<typename G::Point> power_min;  // L(S^k)
};

// [λ_k(S), min(L(S^k)/k, L(S))]
template <Geometry G>
AsymptoticResult<G> asymptotic_bracket(PowerTower<G>& tower, int k, const MinimizeOptions& opts = {}) {
    AsymptoticResult<G> r;
    r.lambdas = lambda_profile(tower, k);
    r.base_min = minimal_displacement(tower.base(), opts);
    r.power_min = k == 1 ? r.base_min : minimal_displacement(tower.level(k), opts, r.base_min.point);
    r.bracket.lower = r.lambdas.back().value;
    r.bracket.lower_source = "lambda_" + std::to_string(k);
    double from_power = r.power_min.value / k;
    if (from_power <= r.base_min.value) {
        r.bracket.upper = from_power;
        r.bracket.upper_source = "L(S^" + std::to_string(k) + ")/" + std::to_string(k);
    } else {
        r.bracket.upper = r.base_min.value;
        r.bracket.upper_source = "L(S)";
    }
    if (r.power_min.status == MinimizeStatus::no_interior_minimum ||
        r.base_min.status == MinimizeStatus::no_interior_minimum)
        r.bracket.upper_source += " [value at last iterate, no interior minimum]";
    return r;
}

template <Geometry G>
Bracket asymptotic_bracket(const GeneratingSet<G>& s, int k, const MinimizeOptions& opts = {},
                           std::size_t budget = kDefaultBudget) {
    PowerTower<G> tower(s, budget);
    return asymptotic_bracket(tower, k, opts).bracket;
}

// r(S) ∈ [L/2, L]
inline Bracket circumradius_bracket(double l_upper) {
    return Bracket{l_upper / 2, l_upper, "L_upper/2", "L_upper"};
}

}  // namespace jd
