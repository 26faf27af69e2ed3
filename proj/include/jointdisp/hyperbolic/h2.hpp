#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>

#include "jointdisp/core/generating_set.hpp"
#include "jointdisp/core/geometry.hpp"

namespace jd::h2 {

using Complex = std::complex<double>;
using HPoint = Complex;

inline constexpr double kDelta = 2.0;
inline constexpr double kClassifyEps = 1e-9;

// Real 2×2 matrix of determinant 1 acting by z ↦ (az + b)/(cz + d), sign normalized
// so the first nonzero entry is positive.
struct Moebius {
    double a = 1, b = 0, c = 0, d = 1;

    static Moebius make(double a, double b, double c, double d);
    Moebius operator*(const Moebius& o) const;
    Moebius inverse() const { return normalized(d, -b, -c, a); }
    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }
    // Im(gz) = Im z / |cz + d|² keeps the imaginary part accurate near the boundary
    HPoint operator()(const HPoint& z) const {
        Complex den = c * z + d;
        return {((a * z + b) / den).real(), z.imag() / std::norm(den)};
    }

    static Moebius normalized(double a, double b, double c, double d);
};

// Rotation by angle theta about the point i·y.
Moebius rotation_about(double y, double theta);
// z ↦ e^t z
Moebius dilation(double t);

double h2_distance(const HPoint& z, const HPoint& w);

enum class Kind { elliptic, parabolic, hyperbolic };
std::string to_string(Kind k);
Kind classify(const Moebius& g);
double ell_h2(const Moebius& g);

class H2Geometry {
public:
    using Isometry = Moebius;
    using Point = HPoint;
    static constexpr bool kExact = false;

    GeometryKind kind() const { return GeometryKind::h2; }
    bool is_cat0() const { return true; }
    double hyperbolicity() const { return kDelta; }

    double distance(const Point& z, const Point& w) const { return h2_distance(z, w); }
    Point apply(const Isometry& g, const Point& z) const;
    Isometry compose(const Isometry& g, const Isometry& h) const { return g * h; }
    Isometry invert(const Isometry& g) const { return g.inverse(); }
    Isometry identity() const { return {}; }
    double translation_length(const Isometry& g) const { return ell_h2(g); }
    std::string canonical_key(const Isometry& g) const;
    Point base_point() const { return {0.0, 1.0}; }
    void check_point(const Point& z) const;
    void check_isometry(const Isometry& g) const;
    std::string describe(const Point& z) const;
    MinimizeResult<Point> minimize(std::span<const Isometry> set, const MinimizeOptions& opts,
                                   std::optional<Point> start) const;
};

using H2Set = GeneratingSet<H2Geometry>;

// cosh d(z, gz) − 1
double cosh_displacement_minus_one(const Moebius& g, const HPoint& z);

MinimizeResult<HPoint> h2_minimal_displacement(const H2Set& s, const MinimizeOptions& opts = {});

// Rotations about i·e^{-eps/x1} and i·e^{eps/x2} moving i by exactly eps.
H2Set almost_elliptic_pair(double eps, double x1 = 0.05, double x2 = 0.05);

struct GapReport {
    double L_upper = 0.0;
    double lambda2 = 0.0;
    double gap = 0.0;            // L_upper − λ₂
    double gap_over_delta = 0.0; // gap / 2
};

GapReport bochi_hyp_gap(const H2Set& s);

}  // namespace jd::h2
