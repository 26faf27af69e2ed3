#include "jointdisp/hyperbolic/h2.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <vector>

#include "jointdisp/core/errors.hpp"
#include "jointdisp/core/minimax.hpp"
#include "jointdisp/core/quantities.hpp"

namespace jd::h2 {

Moebius Moebius::normalized(double a, double b, double c, double d) {
    double first = a != 0 ? a : (b != 0 ? b : (c != 0 ? c : d));
    if (first < 0) return {-a, -b, -c, -d};
    return {a, b, c, d};
}

Moebius Moebius::make(double a, double b, double c, double d) {
    Moebius m{a, b, c, d};
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d))
        throw InputError("Moebius entries must be finite");
    if (std::abs(m.det() - 1.0) > 1e-12 * std::max(1.0, a * a + b * b + c * c + d * d))
        throw InputError("Moebius matrix must have determinant 1");
    return normalized(a, b, c, d);
}

Moebius Moebius::operator*(const Moebius& o) const {
    return normalized(a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d);
}

Moebius rotation_about(double y, double theta) {
    double co = std::cos(theta / 2), si = std::sin(theta / 2);
    // T K T⁻¹ with T = diag(√y, 1/√y)
    return Moebius::normalized(co, si * y, -si / y, co);
}

Moebius dilation(double t) { return Moebius::normalized(std::exp(t / 2), 0.0, 0.0, std::exp(-t / 2)); }

double h2_distance(const HPoint& z, const HPoint& w) {
    double x = std::abs(z - w) / (2.0 * std::sqrt(z.imag() * w.imag()));
    // sinh(d/2) = x; cosh d = 1 + 2x²
    if (2 * x * x > 1e8) return 2.0 * (std::log(2.0 * x) + 1.0 / (4.0 * x * x));
    return 2.0 * std::asinh(x);
}

std::string to_string(Kind k) {
    switch (k) {
        case Kind::elliptic: return "elliptic";
        case Kind::parabolic: return "parabolic";
        case Kind::hyperbolic: return "hyperbolic";
    }
    return "unknown";
}

Kind classify(const Moebius& g) {
    double t = std::abs(g.trace());
    if (t < 2.0 - kClassifyEps) return Kind::elliptic;
    if (t > 2.0 + kClassifyEps) return Kind::hyperbolic;
    return Kind::parabolic;
}

double ell_h2(const Moebius& g) {
    if (classify(g) != Kind::hyperbolic) return 0.0;
    double t = std::abs(g.trace()) / 2;
    return 2.0 * std::acosh(t);
}

HPoint H2Geometry::apply(const Isometry& g, const Point& z) const { return g(z); }

std::string H2Geometry::canonical_key(const Isometry& g) const {
    double m = std::max({std::abs(g.a), std::abs(g.b), std::abs(g.c), std::abs(g.d), 1.0});
    double step = 1e-9 * std::exp2(std::ceil(std::log2(m)));
    char buf[128];
    std::snprintf(buf, sizeof buf, "%lld,%lld,%lld,%lld", std::llround(g.a / step), std::llround(g.b / step),
                  std::llround(g.c / step), std::llround(g.d / step));
    return buf;
}

void H2Geometry::check_point(const Point& z) const {
    if (!(z.imag() > 0) || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw InputError("point is not in the upper half-plane");
}

void H2Geometry::check_isometry(const Isometry& g) const { (void)Moebius::make(g.a, g.b, g.c, g.d); }

std::string H2Geometry::describe(const Point& z) const {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
    return buf;
}

double cosh_displacement_minus_one(const Moebius& g, const HPoint& z) {
    // gz − z = −P(z)/(cz + d) with P(z) = c z² + (d − a) z − b
    Complex P = g.c * z * z + (g.d - g.a) * z - g.b;
    double y = z.imag();
    return std::norm(P) / (2.0 * y * y);
}

namespace {

struct H2Space {
    using Point = HPoint;
    std::span<const Moebius> set;

    int dimension() const { return 2; }

    void evaluate(const HPoint& z, std::vector<double>& f, std::vector<Eigen::VectorXd>* grads) const {
        f.resize(set.size());
        if (grads) grads->resize(set.size());
        double y = z.imag();
        for (std::size_t i = 0; i < set.size(); ++i) {
            const Moebius& g = set[i];
            Complex P = g.c * z * z + (g.d - g.a) * z - g.b;
            Complex dP = 2.0 * g.c * z + (g.d - g.a);
            double n = std::norm(P);
            f[i] = n / (2.0 * y * y);
            if (grads) {
                double fa = (std::conj(P) * dP).real() / (y * y);
                double fb = (std::conj(P) * Complex(0, 1) * dP).real() / (y * y) - n / (y * y * y);
                Eigen::VectorXd gr(2);
                gr << y * fa, y * fb;
                (*grads)[i] = gr;
            }
        }
    }

    HPoint retract(const HPoint& z, const Eigen::VectorXd& v) const {
        double y = z.imag();
        return {z.real() + y * v(0), y * std::exp(v(1))};
    }

    double distance(const HPoint& z, const HPoint& w) const { return h2_distance(z, w); }
};

}  // namespace

MinimizeResult<HPoint> H2Geometry::minimize(std::span<const Isometry> set, const MinimizeOptions& opts,
                                            std::optional<Point> start) const {
    MinimaxSettings st;
    st.max_iterations = opts.max_iterations;
    st.escape_radius = opts.escape_radius;
    H2Space space{set};
    auto r = minimize_max(space, start.value_or(base_point()), st);
    r.value = 2.0 * std::asinh(std::sqrt(std::max(r.value, 0.0) / 2.0));
    return r;
}

MinimizeResult<HPoint> h2_minimal_displacement(const H2Set& s, const MinimizeOptions& opts) {
    return minimal_displacement(s, opts);
}

H2Set almost_elliptic_pair(double eps, double x1, double x2) {
    if (!(eps > 0 && eps <= 0.1)) throw InputError("almost_elliptic_pair: eps must be in (0, 0.1]");
    if (!(x1 > 0 && x1 <= 0.2 && x2 > 0 && x2 <= 0.2))
        throw InputError("almost_elliptic_pair: x1, x2 must be in (0, 0.2]");
    auto make = [eps](double x, double sign) {
        double r = eps / x;
        double theta = 2.0 * std::asin(std::sinh(eps / 2) / std::sinh(r));
        return rotation_about(std::exp(sign * r), theta);
    };
    return H2Set(H2Geometry{}, {make(x1, -1.0), make(x2, 1.0)});
}

GapReport bochi_hyp_gap(const H2Set& s) {
    GapReport g;
    g.L_upper = minimal_displacement(s).value;
    g.lambda2 = lambda_k(s, 2);
    g.gap = g.L_upper - g.lambda2;
    g.gap_over_delta = g.gap / kDelta;
    return g;
}

}  // namespace jd::h2
