#include "jointdisp/tree/padic.hpp"

#include <algorithm>

#include "jointdisp/core/errors.hpp"

namespace jd::tree {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

Integer mod_inverse(const Integer& a, const Integer& m) {
    Integer b = a % m;
    if (b < 0) b += m;
    Integer r0 = m, r1 = b, s0 = 0, s1 = 1;
    while (r1 != 0) {
        Integer q = r0 / r1;
        Integer t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (r0 != 1) throw PreconditionError("no modular inverse");
    Integer res = s0 % m;
    if (res < 0) res += m;
    return res;
}

Rational rpow(int p, int k) {
    if (k >= 0) return Rational(power(p, k));
    return Rational(Integer(1), power(p, -k));
}

}  // namespace

Integer power(int p, int k) {
    Integer r = 1;
    for (int i = 0; i < k; ++i) r *= p;
    return r;
}

int valuation(const Integer& n, int p) {
    if (n == 0) throw PreconditionError("valuation of zero");
    Integer m = n;
    int v = 0;
    while (m % p == 0) {
        m /= p;
        ++v;
    }
    return v;
}

std::optional<int> valuation(const Rational& q, int p) {
    if (q == 0) return std::nullopt;
    return valuation(numerator(q), p) - valuation(denominator(q), p);
}

Rational parse_rational(const std::string& text) {
    try {
        auto slash = text.find('/');
        if (slash == std::string::npos) return Rational(Integer(text));
        Integer den(text.substr(slash + 1));
        if (den == 0) throw InputError("zero denominator in \"" + text + "\"");
        return Rational(Integer(text.substr(0, slash)), den);
    } catch (const std::runtime_error&) {
        throw InputError("bad rational \"" + text + "\"");
    }
}

std::string rational_str(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

PadicMatrix PadicMatrix::identity() { return {{Rational(1), Rational(0), Rational(0), Rational(1)}}; }

PadicMatrix PadicMatrix::operator*(const PadicMatrix& o) const {
    return {{e[0] * o.e[0] + e[1] * o.e[2], e[0] * o.e[1] + e[1] * o.e[3], e[2] * o.e[0] + e[3] * o.e[2],
             e[2] * o.e[1] + e[3] * o.e[3]}};
}

PadicMatrix PadicMatrix::inverse() const {
    Rational d = det();
    return {{e[3] / d, -e[1] / d, -e[2] / d, e[0] / d}};
}

PadicMatrix PadicVertex::basis(int p) const { return {{rpow(p, k), r, Rational(0), Rational(1)}}; }

std::string vertex_key(const PadicVertex& v) { return std::to_string(v.k) + "|" + rational_str(v.r); }

PadicTreeGeometry::PadicTreeGeometry(int prime) : p_(prime) {
    if (!is_prime(prime)) throw InputError("p-adic geometry needs a prime, got " + std::to_string(prime));
}

PadicVertex PadicTreeGeometry::canonical_vertex(const PadicMatrix& h) const {
    // column operations over ℤ_p bring h to [[p^a u, b], [0, p^c]], then scale
    Rational a = h.e[0], b = h.e[1], c = h.e[2], d = h.e[3];
    auto vc = valuation(c, p_), vd = valuation(d, p_);
    if (!vd || (vc && *vc < *vd)) {
        std::swap(a, b);
        std::swap(c, d);
        std::swap(vc, vd);
    }
    if (!vd) throw InputError("singular lattice basis");
    Rational t = c / d;
    a -= t * b;
    int alpha = *valuation(a, p_);
    int beta = *vd;
    // unit parts are divided out; column 2 keeps b/u_d
    Rational ud = d / rpow(p_, beta);
    b /= ud;
    int k = alpha - beta;
    Rational rr = b / rpow(p_, beta);
    if (rr == 0) return {k, Rational(0)};
    Integer num = numerator(rr), den = denominator(rr);
    int j = valuation(den, p_);
    Integer pj = power(p_, j);
    Integer unit_den = den / pj;
    if (k + j <= 0) return {k, Rational(0)};
    Integer mod = power(p_, k + j);
    Integer res = (num % mod) * mod_inverse(unit_den, mod) % mod;
    if (res < 0) res += mod;
    return {k, Rational(res, pj)};
}

int PadicTreeGeometry::vertex_distance(const Vertex& u, const Vertex& v) const {
    PadicMatrix m = u.basis(p_).inverse() * v.basis(p_);
    int vmin = std::numeric_limits<int>::max();
    for (const auto& x : m.e)
        if (auto vx = valuation(x, p_)) vmin = std::min(vmin, *vx);
    return *valuation(m.det(), p_) - 2 * vmin;
}

PadicVertex PadicTreeGeometry::apply_vertex(const Isometry& g, const Vertex& v) const {
    return canonical_vertex(g * v.basis(p_));
}

int PadicTreeGeometry::displacement(const Isometry& g, const Vertex& v) const {
    return vertex_distance(v, apply_vertex(g, v));
}

std::vector<PadicVertex> PadicTreeGeometry::neighbors(const Vertex& v) const {
    PadicMatrix h = v.basis(p_);
    std::vector<PadicVertex> out;
    for (int j = 0; j < p_; ++j)
        out.push_back(canonical_vertex(h * PadicMatrix{{Rational(p_), Rational(j), Rational(0), Rational(1)}}));
    out.push_back(canonical_vertex(h * PadicMatrix{{Rational(1), Rational(0), Rational(0), Rational(p_)}}));
    return out;
}

double PadicTreeGeometry::distance(const Point& x, const Point& y) const {
    return quarter_distance(x, y, [this](const Vertex& u, const Vertex& v) { return vertex_distance(u, v); }) / 4.0;
}

PadicPoint PadicTreeGeometry::apply(const Isometry& g, const Point& x) const {
    return {apply_vertex(g, x.a), x.is_vertex() ? apply_vertex(g, x.a) : apply_vertex(g, x.b), x.quarter};
}

double PadicTreeGeometry::translation_length(const Isometry& g) const {
    auto v = valuation(g.trace(), p_);
    if (!v) return 0.0;
    return std::max(0, -2 * *v);
}

std::string PadicTreeGeometry::canonical_key(const Isometry& g) const {
    std::string s;
    for (int i = 0; i < 4; ++i) {
        if (i) s += ",";
        s += rational_str(g.e[i]);
    }
    return s;
}

void PadicTreeGeometry::check_isometry(const Isometry& g) const {
    if (g.det() != 1) throw InputError("p-adic matrix must have determinant 1: " + canonical_key(g));
}

void PadicTreeGeometry::check_point(const Point& x) const {
    if (x.quarter < 0 || x.quarter > 3) throw InputError("tree point offset out of range");
    if (!x.is_vertex() && vertex_distance(x.a, x.b) != 1) throw InputError("tree point endpoints are not adjacent");
}

std::string PadicTreeGeometry::describe(const Point& x) const {
    if (x.is_vertex()) return "vertex " + vertex_key(x.a);
    static const char* frac[] = {"0", "1/4", "1/2", "3/4"};
    return std::string(frac[x.quarter]) + " of [" + vertex_key(x.a) + ", " + vertex_key(x.b) + "]";
}

MinimizeResult<PadicPoint> PadicTreeGeometry::minimize(std::span<const Isometry> set, const MinimizeOptions& opts,
                                                       std::optional<Point> start) const {
    Vertex root = start ? start->a : Vertex{};
    int radius = opts.radius;
    if (radius < 0) {
        radius = 1;
        for (const auto& g : set) radius = std::max(radius, displacement(g, root) + 1);
    }
    TreeSearch<PadicTreeGeometry> search{*this, set};
    return search.descend(root, radius);
}

}  // namespace jd::tree
