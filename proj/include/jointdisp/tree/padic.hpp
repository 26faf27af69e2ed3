#pragma once

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jointdisp/core/geometry.hpp"
#include "jointdisp/tree/tree_search.hpp"

namespace jd::tree {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// v_p; throws for zero.
int valuation(const Integer& n, int p);
// v_p of a rational; +infinity is represented by nullopt.
std::optional<int> valuation(const Rational& q, int p);
Rational parse_rational(const std::string& text);
std::string rational_str(const Rational& q);
Integer power(int p, int k);

// 2×2 rational matrix with determinant 1, acting on the Bruhat–Tits tree of SL₂(ℚ_p).
struct PadicMatrix {
    std::array<Rational, 4> e;  // row major

    static PadicMatrix identity();
    PadicMatrix operator*(const PadicMatrix& o) const;
    PadicMatrix inverse() const;
    Rational det() const { return e[0] * e[3] - e[1] * e[2]; }
    Rational trace() const { return e[0] + e[3]; }
    bool operator==(const PadicMatrix& o) const { return e == o.e; }
};

// Homothety class of a lattice, stored by the canonical basis [[p^k, r], [0, 1]], 0 ≤ r < p^k, r ∈ ℤ[1/p].
struct PadicVertex {
    int k = 0;
    Rational r = 0;
    bool operator==(const PadicVertex& o) const { return k == o.k && r == o.r; }
    PadicMatrix basis(int p) const;
};

using PadicPoint = QuarterPoint<PadicVertex>;

class PadicTreeGeometry {
public:
    using Isometry = PadicMatrix;
    using Point = PadicPoint;
    using Vertex = PadicVertex;
    static constexpr bool kExact = true;

    explicit PadicTreeGeometry(int prime);

    int prime() const { return p_; }
    GeometryKind kind() const { return GeometryKind::tree_padic; }
    bool is_cat0() const { return true; }
    double hyperbolicity() const { return 0.0; }

    double distance(const Point& x, const Point& y) const;
    Point apply(const Isometry& g, const Point& x) const;
    Isometry compose(const Isometry& g, const Isometry& h) const { return g * h; }
    Isometry invert(const Isometry& g) const { return g.inverse(); }
    Isometry identity() const { return PadicMatrix::identity(); }
    // max(0, -2 v_p(tr g))
    double translation_length(const Isometry& g) const;
    std::string canonical_key(const Isometry& g) const;
    Point base_point() const { return Point::vertex({}); }
    void check_point(const Point& x) const;
    void check_isometry(const Isometry& g) const;
    std::string describe(const Point& x) const;
    MinimizeResult<Point> minimize(std::span<const Isometry> set, const MinimizeOptions& opts,
                                   std::optional<Point> start) const;

    // Vertex of the lattice class h·ℤ_p².
    Vertex canonical_vertex(const PadicMatrix& h) const;
    std::vector<Vertex> neighbors(const Vertex& v) const;
    int vertex_distance(const Vertex& u, const Vertex& v) const;
    Vertex apply_vertex(const Isometry& g, const Vertex& v) const;
    // d(x, gx) for a vertex
    int displacement(const Isometry& g, const Vertex& v) const;

private:
    int p_;
};

std::string vertex_key(const PadicVertex& v);

}  // namespace jd::tree
