#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "jointdisp/freeness/arcs.hpp"

namespace jd::graph {

inline constexpr int kMaxVertices = 64;

// Connected graph with unit edges and all-pairs BFS distances.
class MetricGraph {
public:
    // Throws InputError on bad endpoints, loops, more than 64 vertices or a disconnected graph.
    MetricGraph(int n, const std::vector<std::pair<int, int>>& edges);

    int size() const { return n_; }
    int distance(int u, int v) const { return dist_[u * n_ + v]; }
    const std::vector<int>& neighbours(int v) const { return adj_[v]; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    // vertices on some geodesic from u to v
    std::vector<int> interval(int u, int v) const;
    bool is_tree() const { return static_cast<int>(edges_.size()) == n_ - 1; }

private:
    int n_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> dist_;
};

MetricGraph path_graph(int n);
MetricGraph cycle_graph(int n);
MetricGraph grid_graph(int rows, int cols);
MetricGraph random_tree(int n, std::uint64_t seed);
// Erdős–Rényi G(n, p), redrawn until connected (at most 1000 draws).
MetricGraph random_graph(int n, double p, std::uint64_t seed);

// Half the gap between the two largest of the three pair sums, maximized over quadruples.
double four_point_delta(const MetricGraph& g);

struct SlimDelta {
    int value = 0;
    bool exact = true;  // every geodesic triangle was covered
    int x = 0, y = 0, z = 0;  // a triangle attaining the value
};

// Largest distance from a vertex of one side of a geodesic triangle to the union of the other two,
// over all vertex triples and all choices of geodesic sides. Computed exactly by a bottleneck
// dynamic program over geodesic DAGs, so no sampling is needed at 64 vertices.
SlimDelta slim_delta(const MetricGraph& g);

// Vertex set closed under geodesic intervals.
class ConvexSet {
public:
    const std::vector<int>& vertices() const { return v_; }
    bool contains(int v) const;
    bool operator==(const ConvexSet& o) const { return v_ == o.v_; }

private:
    friend ConvexSet convex_hull(const MetricGraph& g, const std::vector<int>& seed);
    std::vector<int> v_;  // sorted
};

ConvexSet convex_hull(const MetricGraph& g, const std::vector<int>& seed);
bool is_convex(const MetricGraph& g, const std::vector<int>& vertices);

// Least t with a vertex within distance t of every set. Throws InputError unless the sets pairwise meet.
int helly_min_radius(const MetricGraph& g, const std::vector<ConvexSet>& sets);

struct QuasiAxisReport {
    double ell = 0;
    double delta = 0;
    double x_offset = 0;      // distance from x to the axis of g
    double midpoint_offset = 0;  // distance from m to the axis; the whole path γ stays this close
    double piece_length = 0;     // d(m, g m)
    int pairs_checked = 0;
    double worst_quasi_margin = 0;  // min of d(γ(s), γ(t)) − 0.9|s − t| + 24δ
    double worst_s = 0, worst_t = 0;
    double hausdorff_bound = 0;     // 2 × midpoint_offset, bounds the distance between γ and its chords
    double hausdorff_margin = 0;    // 12δ − hausdorff_bound
    bool ok() const { return worst_quasi_margin >= 0 && hausdorff_margin >= 0; }
};

// Checks that γ = ∪ gⁿ[m, g m], m the midpoint of [x, g x], is a (9/10, 24δ)-quasi-geodesic
// within 12δ of its chords. g translates by ell; x sits at distance x_offset from the axis.
// Long double with log-domain distances; needs 1000δ < ell ≤ 20000.
QuasiAxisReport quasi_axis_check(double ell, double x_offset, double delta = 2.0, int samples = 4000,
                                 std::uint64_t seed = 1);
// Same, for a hyperbolic Möbius map and a point x of the upper half-plane.
QuasiAxisReport quasi_axis_check(const freeness::BigMoebius& g, std::complex<double> x, double delta = 2.0,
                                 int samples = 4000, std::uint64_t seed = 1);

}  // namespace jd::graph
