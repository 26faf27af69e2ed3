#include "jointdisp/freeness/arcs.hpp"

#include <cmath>
#include <sstream>

#include "jointdisp/core/errors.hpp"

namespace jd::freeness {

namespace {

// Position of p on the circle read from base: [base, ∞) first, then ∞, then (−∞, base).
// Returns (segment, value) for lexicographic comparison.
std::pair<int, Rational> position(const BoundaryPoint& base, const BoundaryPoint& p) {
    if (!base) return p ? std::pair<int, Rational>{1, *p} : std::pair<int, Rational>{0, 0};
    if (!p) return {1, 0};
    return *p >= *base ? std::pair<int, Rational>{0, *p} : std::pair<int, Rational>{2, *p};
}

}  // namespace

std::string point_str(const BoundaryPoint& p) {
    if (!p) return "inf";
    std::ostringstream os;
    os << *p;
    return os.str();
}

bool Arc::contains(const BoundaryPoint& p) const { return position(start, p) <= position(start, end); }

bool Arc::within(const Arc& o) const {
    auto s = position(o.start, start), e = position(o.start, end), oe = position(o.start, o.end);
    return s <= e && e <= oe;
}

bool Arc::meets(const Arc& o) const { return contains(o.start) || o.contains(start); }

std::string Arc::str() const { return "[" + point_str(start) + ", " + point_str(end) + "]"; }

Rational exact_rational(const BigFloat& x) {
    if (x == 0) return 0;
    int e;
    BigFloat m = boost::multiprecision::frexp(x, &e);
    // the mantissa has fewer than 200 bits
    m = boost::multiprecision::ldexp(m, 200);
    boost::multiprecision::cpp_int n = m.convert_to<boost::multiprecision::cpp_int>();
    e -= 200;
    Rational r = n;
    if (e > 0)
        r *= Rational(boost::multiprecision::cpp_int(1) << e);
    else if (e < 0)
        r /= Rational(boost::multiprecision::cpp_int(1) << -e);
    return r;
}

Rational exact_rational(double x) {
    if (!std::isfinite(x)) throw InputError("non-finite value has no rational form");
    return exact_rational(BigFloat(x));
}

BoundaryPoint RationalMoebius::operator()(const BoundaryPoint& p) const {
    if (!p) {
        if (c == 0) return std::nullopt;
        return a / c;
    }
    Rational den = c * *p + d;
    if (den == 0) return std::nullopt;
    return (a * *p + b) / den;
}

RationalMoebius RationalMoebius::operator*(const RationalMoebius& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

bool RationalMoebius::hyperbolic_type() const { return trace() * trace() > 4 * det(); }

BigFloat RationalMoebius::translation_length() const {
    if (!hyperbolic_type()) return 0;
    // cosh(ℓ/2) = |tr| / (2√det), squared to stay rational
    BigFloat c2 = BigFloat(Rational(trace() * trace() / (4 * det())));
    return 2 * boost::multiprecision::acosh(boost::multiprecision::sqrt(c2));
}

std::pair<double, double> RationalMoebius::fixed_angles() const {
    if (!hyperbolic_type()) throw PreconditionError("fixed_angles needs a hyperbolic map");
    auto angle = [](const BigFloat& x) { return 2.0 * std::atan(x.convert_to<double>()); };
    if (c == 0) {
        double fin = angle(BigFloat(Rational(b / (d - a))));
        return abs(a) > abs(d) ? std::pair{M_PI, fin} : std::pair{fin, M_PI};
    }
    // roots of c z² + (d − a) z − b; the stable one first, the other from the product −b/c
    BigFloat r = boost::multiprecision::sqrt(BigFloat(Rational(trace() * trace() - 4 * det())));
    int s1 = a - d < 0 ? -1 : 1;
    BigFloat z1 = (BigFloat(Rational(a - d)) + s1 * r) / (2 * BigFloat(c));
    BigFloat z2 = z1 == 0 ? BigFloat(Rational(a - d)) / BigFloat(c) : -BigFloat(b) / (BigFloat(c) * z1);
    // z1 attracts when |c z1 + d| = |tr + s1 r|/2 is the larger root
    bool first_attracts = (trace() > 0) == (s1 > 0);
    return first_attracts ? std::pair{angle(z1), angle(z2)} : std::pair{angle(z2), angle(z1)};
}

std::string RationalMoebius::str() const {
    std::ostringstream os;
    os.precision(12);
    os << "[[" << BigFloat(a) << ", " << BigFloat(b) << "], [" << BigFloat(c) << ", " << BigFloat(d) << "]]";
    return os.str();
}

BigMoebius BigMoebius::hyperbolic(double p, double q, double ell) {
    if (!(p != q) || !std::isfinite(p) || !std::isfinite(q) || !(ell > 0))
        throw InputError("hyperbolic element needs distinct finite endpoints and positive length");
    // m sends 0 ↦ p and ∞ ↦ q; conjugate z ↦ e^ℓ z
    BigFloat half = BigFloat(ell) / 2;
    RationalMoebius m{exact_rational(q), exact_rational(p), 1, 1};
    RationalMoebius dil{exact_rational(BigFloat(boost::multiprecision::exp(half))), 0, 0,
                        exact_rational(BigFloat(boost::multiprecision::exp(-half)))};
    RationalMoebius r = m * dil * m.inverse();
    BigFloat s = boost::multiprecision::sqrt(BigFloat(r.det()));
    BigMoebius out{BigFloat(r.a) / s, BigFloat(r.b) / s, BigFloat(r.c) / s, BigFloat(r.d) / s};
    out.exact_form = r;
    return out;
}

BigMoebius BigMoebius::operator*(const BigMoebius& o) const {
    BigMoebius r{a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    if (exact_form && o.exact_form) r.exact_form = *exact_form * *o.exact_form;
    return r;
}

BigMoebius BigMoebius::inverse() const {
    BigMoebius r{d, -b, -c, a};
    if (exact_form) r.exact_form = exact_form->inverse();
    return r;
}

RationalMoebius BigMoebius::exact() const {
    if (exact_form) return *exact_form;
    RationalMoebius r{exact_rational(a), exact_rational(b), exact_rational(c), exact_rational(d)};
    if (r.a * r.d - r.b * r.c <= 0) throw InputError("Möbius map must have positive determinant");
    return r;
}

std::string BigMoebius::str() const {
    std::ostringstream os;
    os.precision(12);
    os << "[[" << a << ", " << b << "], [" << c << ", " << d << "]]";
    return os.str();
}

BoundaryPoint point_at_angle(double theta) {
    if (std::abs(theta - M_PI) < 1e-300 || std::abs(theta + M_PI) < 1e-300) return std::nullopt;
    return exact_rational(std::tan(theta / 2));
}

}  // namespace jd::freeness
