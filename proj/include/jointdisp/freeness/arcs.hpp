#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

#include "jointdisp/hyperbolic/h2.hpp"

namespace jd::freeness {

using Rational = boost::multiprecision::cpp_rational;
using BigFloat = boost::multiprecision::cpp_bin_float_50;

// Point of ℝ ∪ {∞}; nullopt is ∞.
using BoundaryPoint = std::optional<Rational>;

std::string point_str(const BoundaryPoint& p);

// Closed arc of the boundary circle running from start to end in increasing order,
// passing through ∞ when end < start. Its convex hull in the upper half-plane is a
// disk (finite non-wrapping arc) or a half-plane (arcs through ∞).
struct Arc {
    BoundaryPoint start, end;

    bool contains(const BoundaryPoint& p) const;
    bool within(const Arc& other) const;
    bool meets(const Arc& other) const;
    std::string str() const;
};

// Exact rational value of a binary float.
Rational exact_rational(const BigFloat& x);
Rational exact_rational(double x);

// Real 2×2 matrix with positive determinant, acting on the boundary.
struct RationalMoebius {
    Rational a = 1, b = 0, c = 0, d = 1;

    BoundaryPoint operator()(const BoundaryPoint& p) const;
    Arc operator()(const Arc& arc) const { return {(*this)(arc.start), (*this)(arc.end)}; }
    RationalMoebius operator*(const RationalMoebius& o) const;
    RationalMoebius inverse() const { return {d, -b, -c, a}; }
    Rational trace() const { return a + d; }
    Rational det() const { return a * d - b * c; }
    // decided exactly: tr² > 4 det
    bool hyperbolic_type() const;
    BigFloat translation_length() const;
    std::pair<double, double> fixed_angles() const;
    std::string str() const;
};

// Möbius map with 50-digit entries; ranges far past double overflow.
struct BigMoebius {
    BigFloat a = 1, b = 0, c = 0, d = 1;
    // exact form kept from exact factors; rounding the float entries of a huge map can wreck ad − bc
    std::optional<RationalMoebius> exact_form = std::nullopt;

    static BigMoebius from(const h2::Moebius& m) { return {m.a, m.b, m.c, m.d}; }
    // Hyperbolic element with repelling point p, attracting point q (finite, distinct) and translation length ell.
    static BigMoebius hyperbolic(double p, double q, double ell);
    BigMoebius operator*(const BigMoebius& o) const;
    BigMoebius inverse() const;
    BigFloat trace() const { return a + d; }
    BigFloat det() const { return a * d - b * c; }
    // these three go through exact()
    BigFloat translation_length() const { return exact().translation_length(); }
    bool hyperbolic_type() const { return exact().hyperbolic_type(); }
    // boundary angles 2·atan(x) of the (attracting, repelling) fixed points
    std::pair<double, double> fixed_angles() const { return exact().fixed_angles(); }
    // throws InputError unless the determinant is positive
    RationalMoebius exact() const;
    std::string str() const;
};

// A boundary point of angle θ as an exact rational (θ in (−π, π]).
BoundaryPoint point_at_angle(double theta);

}  // namespace jd::freeness
