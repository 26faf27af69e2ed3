#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jointdisp/core/geometry.hpp"
#include "jointdisp/tree/free_group.hpp"
#include "jointdisp/tree/tree_search.hpp"

namespace jd::tree {

using TreePoint = QuarterPoint<FreeWord>;

// Cayley tree of the free group F_rank with the left multiplication action.
class FreeTreeGeometry {
public:
    using Isometry = FreeWord;
    using Point = TreePoint;
    using Vertex = FreeWord;
    static constexpr bool kExact = true;

    explicit FreeTreeGeometry(int rank = 2);

    int rank() const { return rank_; }
    GeometryKind kind() const { return GeometryKind::tree_free; }
    bool is_cat0() const { return true; }
    double hyperbolicity() const { return 0.0; }

    double distance(const Point& p, const Point& q) const;
    Point apply(const Isometry& g, const Point& p) const;
    Isometry compose(const Isometry& g, const Isometry& h) const { return g * h; }
    Isometry invert(const Isometry& g) const { return g.inverse(); }
    Isometry identity() const { return {}; }
    double translation_length(const Isometry& g) const { return g.cyclic_length(); }
    std::string canonical_key(const Isometry& g) const { return g.str(); }
    Point base_point() const { return Point::vertex({}); }
    void check_point(const Point& p) const;
    void check_isometry(const Isometry& g) const;
    std::string describe(const Point& p) const;

    // Exact minimization on the quarter-subdivided tree, starting at start (rounded to a vertex) or e.
    MinimizeResult<Point> minimize(std::span<const Isometry> set, const MinimizeOptions& opts,
                                   std::optional<Point> start) const;

    // search model
    std::vector<Vertex> neighbors(const Vertex& v) const;
    int vertex_distance(const Vertex& u, const Vertex& v) const { return (u.inverse() * v).length(); }
    Vertex apply_vertex(const Isometry& g, const Vertex& v) const { return g * v; }

private:
    int rank_;
};

// Canonical orientation: a is the endpoint nearer the identity.
TreePoint normalize(const TreePoint& p);

}  // namespace jd::tree
