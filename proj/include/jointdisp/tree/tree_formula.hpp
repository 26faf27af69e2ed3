#pragma once

#include <algorithm>
#include <concepts>
#include <optional>

#include "jointdisp/core/generating_set.hpp"
#include "jointdisp/tree/free_tree.hpp"
#include "jointdisp/tree/padic.hpp"

namespace jd::tree {

template <class G>
concept TreeGeometry = std::same_as<G, FreeTreeGeometry> || std::same_as<G, PadicTreeGeometry>;

// max_{a,b ∈ S} {ℓ(a), ℓ(ab)/2}
template <TreeGeometry G>
double tree_formula_L(const GeneratingSet<G>& s) {
    const G& geo = s.geometry();
    double best = 0.0;
    for (const auto& a : s.elements()) {
        best = std::max(best, geo.translation_length(a));
        for (const auto& b : s.elements()) best = std::max(best, geo.translation_length(geo.compose(a, b)) / 2);
    }
    return best;
}

// Exact minimizer over the quarter-subdivided tree, searched from the base vertex.
template <TreeGeometry G>
MinimizeResult<typename G::Point> brute_force_L(const GeneratingSet<G>& s, int radius) {
    MinimizeOptions opts;
    opts.radius = radius;
    return s.geometry().minimize(std::span<const typename G::Isometry>(s.elements()), opts, std::nullopt);
}

inline int free_translation_length(const FreeWord& w) { return w.cyclic_length(); }

inline int padic_translation_length(const PadicTreeGeometry& geo, const PadicMatrix& g) {
    return static_cast<int>(geo.translation_length(g));
}

inline int padic_displacement(const PadicTreeGeometry& geo, const PadicMatrix& g, const PadicVertex& x) {
    return geo.displacement(g, x);
}

}  // namespace jd::tree
