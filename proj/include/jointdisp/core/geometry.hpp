#pragma once

#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "jointdisp/core/bracket.hpp"

namespace jd {

enum class GeometryKind { tree_free, tree_padic, h2, euclidean, pd_riemannian, pd_finsler };

std::string to_string(GeometryKind kind);

enum class MinimizeStatus {
    exact,                // exhaustive search over a set known to contain a minimizer
    converged,            // descent stopped on its optimality test
    iteration_limit,      // descent ran out of iterations; value is still an upper bound
    no_interior_minimum,  // iterates escaped to infinity
};

std::string to_string(MinimizeStatus status);

struct MinimizeOptions {
    double tolerance = kMinimizeTol;
    int max_iterations = 4000;
    // Trees: search radius in edges around the start vertex; negative picks one from the input.
    int radius = -1;
    // Distance from the start point past which a still-decreasing descent is declared divergent.
    double escape_radius = 40.0;
};

template <class P>
struct MinimizeResult {
    P point;
    double value = 0.0;
    MinimizeStatus status = MinimizeStatus::converged;
    int iterations = 0;
};

template <class G>
concept Geometry = requires(const G& geo, const typename G::Isometry& g, const typename G::Point& x,
                            std::span<const typename G::Isometry> set, const MinimizeOptions& opts,
                            std::optional<typename G::Point> start) {
    { G::kExact } -> std::convertible_to<bool>;
    { geo.kind() } -> std::same_as<GeometryKind>;
    { geo.is_cat0() } -> std::convertible_to<bool>;
    // Gromov hyperbolicity constant, +inf when the space is not hyperbolic.
    { geo.hyperbolicity() } -> std::convertible_to<double>;
    { geo.distance(x, x) } -> std::convertible_to<double>;
    { geo.apply(g, x) } -> std::same_as<typename G::Point>;
    { geo.compose(g, g) } -> std::same_as<typename G::Isometry>;
    { geo.invert(g) } -> std::same_as<typename G::Isometry>;
    { geo.identity() } -> std::same_as<typename G::Isometry>;
    { geo.translation_length(g) } -> std::convertible_to<double>;
    { geo.canonical_key(g) } -> std::same_as<std::string>;
    { geo.base_point() } -> std::same_as<typename G::Point>;
    { geo.check_point(x) };
    { geo.check_isometry(g) };
    { geo.describe(x) } -> std::same_as<std::string>;
    { geo.minimize(set, opts, start) } -> std::same_as<MinimizeResult<typename G::Point>>;
};

template <Geometry G>
constexpr double tolerance_of() {
    return G::kExact ? 0.0 : kCompareTol;
}

}  // namespace jd
