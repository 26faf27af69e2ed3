#include "jointdisp/tree/free_tree.hpp"

#include <algorithm>

#include "jointdisp/core/errors.hpp"

namespace jd::tree {

FreeTreeGeometry::FreeTreeGeometry(int rank) : rank_(rank) {
    if (rank < 1 || rank > kMaxRank) throw InputError("free group rank must be in [1, 4]");
}

TreePoint normalize(const TreePoint& p) {
    if (p.is_vertex()) return TreePoint::vertex(p.a);
    if (p.a.length() > p.b.length()) return {p.b, p.a, 4 - p.quarter};
    return p;
}

double FreeTreeGeometry::distance(const Point& p, const Point& q) const {
    return quarter_distance(p, q, [this](const FreeWord& u, const FreeWord& v) { return vertex_distance(u, v); }) /
           4.0;
}

TreePoint FreeTreeGeometry::apply(const Isometry& g, const Point& p) const {
    return normalize({g * p.a, g * p.b, p.quarter});
}

void FreeTreeGeometry::check_isometry(const Isometry& g) const {
    if (g.max_generator() > rank_)
        throw InputError("word " + g.str() + " uses a generator beyond rank " + std::to_string(rank_));
}

void FreeTreeGeometry::check_point(const Point& p) const {
    check_isometry(p.a);
    check_isometry(p.b);
    if (p.quarter < 0 || p.quarter > 3) throw InputError("tree point offset out of range");
    if (!p.is_vertex() && vertex_distance(p.a, p.b) != 1) throw InputError("tree point endpoints are not adjacent");
}

std::string FreeTreeGeometry::describe(const Point& p) const {
    if (p.is_vertex()) return "vertex " + p.a.str();
    static const char* frac[] = {"0", "1/4", "1/2", "3/4"};
    return std::string(frac[p.quarter]) + " of [" + p.a.str() + ", " + p.b.str() + "]";
}

std::vector<FreeWord> FreeTreeGeometry::neighbors(const Vertex& v) const {
    std::vector<FreeWord> out;
    for (int k = 1; k <= rank_; ++k) {
        out.push_back(v * FreeWord::generator(k));
        out.push_back(v * FreeWord::generator(-k));
    }
    return out;
}

MinimizeResult<TreePoint> FreeTreeGeometry::minimize(std::span<const Isometry> set, const MinimizeOptions& opts,
                                                     std::optional<Point> start) const {
    int radius = opts.radius;
    FreeWord root = start ? normalize(*start).a : FreeWord{};
    if (radius < 0) {
        radius = 0;
        for (const auto& g : set) radius = std::max(radius, g.length());
        radius += root.length() + 1;
    }
    TreeSearch<FreeTreeGeometry> search{*this, set};
    auto res = search.descend(root, radius);
    res.point = normalize(res.point);
    return res;
}

}  // namespace jd::tree
