#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "jointdisp/core/errors.hpp"
#include "jointdisp/core/geometry.hpp"

namespace jd::tree {

// A point of a simplicial tree whose position along an edge is a multiple of 1/4.
// quarter == 0 is the vertex a; otherwise the point sits quarter/4 of the way from a to b.
template <class V>
struct QuarterPoint {
    V a;
    V b;
    int quarter = 0;

    static QuarterPoint vertex(V v) { return {v, v, 0}; }
    bool is_vertex() const { return quarter == 0; }
};

// Distances in quarter units between points of a tree, given the vertex metric.
template <class V, class VertexDistance>
std::int64_t quarter_distance(const QuarterPoint<V>& p, const QuarterPoint<V>& q, VertexDistance&& dv) {
    if (!p.is_vertex() && !q.is_vertex()) {
        if (p.a == q.a && p.b == q.b) return std::abs(p.quarter - q.quarter);
        if (p.a == q.b && p.b == q.a) return std::abs(p.quarter - (4 - q.quarter));
    }
    struct End {
        const V* v;
        std::int64_t off;
    };
    End pe[2] = {{&p.a, p.quarter}, {&p.b, 4 - p.quarter}};
    End qe[2] = {{&q.a, q.quarter}, {&q.b, 4 - q.quarter}};
    int np = p.is_vertex() ? 1 : 2, nq = q.is_vertex() ? 1 : 2;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (int i = 0; i < np; ++i)
        for (int j = 0; j < nq; ++j)
            best = std::min(best, pe[i].off + 4 * static_cast<std::int64_t>(dv(*pe[i].v, *qe[j].v)) + qe[j].off);
    return best;
}

// Model requirements:
//   using Vertex, Isometry;
//   std::vector<Vertex> neighbors(const Vertex&) const;
//   int vertex_distance(const Vertex&, const Vertex&) const;
//   Vertex apply_vertex(const Isometry&, const Vertex&) const;
template <class Model>
struct TreeSearch {
    using V = typename Model::Vertex;
    using I = typename Model::Isometry;
    using P = QuarterPoint<V>;

    const Model& model;
    std::span<const I> set;

    P image(const I& g, const P& p) const {
        return {model.apply_vertex(g, p.a), p.is_vertex() ? model.apply_vertex(g, p.a) : model.apply_vertex(g, p.b),
                p.quarter};
    }

    std::int64_t dist(const P& p, const P& q) const {
        return quarter_distance(p, q, [this](const V& u, const V& v) { return model.vertex_distance(u, v); });
    }

    // max_s d(p, sp), in quarter units
    std::int64_t objective(const P& p) const {
        std::int64_t m = 0;
        for (const auto& g : set) m = std::max(m, dist(p, image(g, p)));
        return m;
    }

    // Descends from root along strictly decreasing quarter-grid points. The objective is
    // convex along geodesics, so a branch whose first step does not decrease cannot lead
    // to a strictly better point and is pruned.
    MinimizeResult<P> descend(const V& root, int radius) const {
        P best = P::vertex(root);
        std::int64_t fbest = objective(best);
        struct Item {
            V v;
            V from;
            bool has_from;
            std::int64_t f;
            int depth;
        };
        std::deque<Item> queue{{root, root, false, fbest, 0}};
        int visited = 0;
        while (!queue.empty()) {
            Item it = queue.front();
            queue.pop_front();
            ++visited;
            for (const V& w : model.neighbors(it.v)) {
                if (it.has_from && w == it.from) continue;
                std::int64_t prev = it.f;
                bool decreasing = true;
                for (int q = 1; q <= 3 && decreasing; ++q) {
                    P node{it.v, w, q};
                    std::int64_t fn = objective(node);
                    if (fn < prev) {
                        prev = fn;
                        if (fn < fbest) {
                            fbest = fn;
                            best = node;
                        }
                    } else {
                        decreasing = false;
                    }
                }
                if (!decreasing) continue;
                std::int64_t fw = objective(P::vertex(w));
                if (fw >= prev) continue;
                if (it.depth + 1 > radius)
                    throw PreconditionError("search radius " + std::to_string(radius) +
                                            " too small: objective still decreasing at the boundary");
                if (fw < fbest) {
                    fbest = fw;
                    best = P::vertex(w);
                }
                queue.push_back({w, it.v, true, fw, it.depth + 1});
            }
        }
        return {best, fbest / 4.0, MinimizeStatus::exact, visited};
    }
};

}  // namespace jd::tree
