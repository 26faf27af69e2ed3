#include <cmath>
#include <random>

#include "jointdisp/core/errors.hpp"
#include "jointdisp/graph/graph.hpp"

namespace jd::graph {

namespace {

using LD = long double;

// Points are Fermi coordinates (t, u) about the axis of g: foot of the perpendicular at arclength t,
// signed distance u. Hyperboloid form (cosh u cosh t, cosh u sinh t, sinh u).
struct Fermi {
    LD t, u;
};

LD fermi_distance(Fermi a, Fermi b) {
    LD dt = std::fabs(a.t - b.t);
    LD A = std::cosh(a.u) * std::cosh(b.u);
    if (dt <= 40) {
        // cosh d − 1 = 2A sinh²(Δt/2) + 2 sinh²(Δu/2), no cancellation for nearby points
        LD sh = std::sinh(dt / 2), su = std::sinh((a.u - b.u) / 2);
        LD half = A * sh * sh + su * su;
        return 2 * std::asinh(std::sqrt(half));
    }
    LD B = std::sinh(a.u) * std::sinh(b.u);
    // cosh d = A cosh Δt − B with e^{Δt} far beyond range
    return dt + std::log(A) + std::log1p(std::exp(-2 * dt) - 2 * (B / A) * std::exp(-dt));
}

// Geodesic through two points at equal offset u, a distance span apart along the axis.
// Returns its length and the offset of its midpoint.
std::pair<LD, LD> symmetric_chord(LD span, LD u) {
    LD len = fermi_distance({0, u}, {span, u});
    return {len, std::asinh(std::sinh(u) / std::cosh(len / 2))};
}

}  // namespace

QuasiAxisReport quasi_axis_check(double ell, double x_offset, double delta, int samples, std::uint64_t seed) {
    if (!(delta > 0)) throw InputError("delta must be positive");
    if (!(ell > 1000 * delta))
        throw PreconditionError("quasi_axis_check needs L(g) > 1000δ = " + std::to_string(1000 * delta) +
                                ", got " + std::to_string(ell));
    if (ell > 20000) throw PreconditionError("quasi_axis_check handles L(g) ≤ 20000 in long double");
    if (!(std::fabs(x_offset) <= 50)) throw InputError("x must lie within distance 50 of the axis");
    if (samples < 1) throw InputError("samples must be positive");

    QuasiAxisReport r;
    r.ell = ell;
    r.delta = delta;
    r.x_offset = x_offset;
    const LD L = ell;
    // x = (0, u0); m is the midpoint of [x, g x], the closest point of that chord to the axis
    LD um = symmetric_chord(L, x_offset).second;
    auto [D, ustar] = symmetric_chord(L, um);
    r.midpoint_offset = static_cast<double>(std::fabs(um));
    r.piece_length = static_cast<double>(D);

    // γ(s): piece n joins gⁿm to gⁿ⁺¹m; σ is arclength from the piece's midpoint
    auto gamma = [&](LD s) {
        LD n = std::floor(s / D);
        LD sigma = s - n * D - D / 2;
        LD u = std::asinh(std::cosh(sigma) * std::sinh(ustar));
        LD t = L * (n + 1) + std::asinh(std::sinh(sigma) / std::cosh(u));
        return Fermi{t, u};
    };

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pick(-2.0, 2.0);
    std::vector<LD> grid;
    for (int k = -8; k <= 8; ++k) grid.push_back(k * D / 4);
    r.worst_quasi_margin = INFINITY;
    auto test = [&](LD s, LD t) {
        LD m = fermi_distance(gamma(s), gamma(t)) - LD(0.9) * std::fabs(t - s) + 24 * LD(delta);
        ++r.pairs_checked;
        if (m < r.worst_quasi_margin) {
            r.worst_quasi_margin = static_cast<double>(m);
            r.worst_s = static_cast<double>(s);
            r.worst_t = static_cast<double>(t);
        }
    };
    for (LD s : grid)
        for (LD t : grid)
            if (s < t) test(s, t);
    for (int i = 0; i < samples; ++i) test(pick(rng) * D, pick(rng) * D);

    // |u| along γ peaks at the piece ends. Chords stay in that neighbourhood of the axis (convexity),
    // and a point of γ and a chord point over the same foot are at most 2|u|max apart.
    r.hausdorff_bound = 2 * r.midpoint_offset;
    r.hausdorff_margin = 12 * delta - r.hausdorff_bound;
    return r;
}

QuasiAxisReport quasi_axis_check(const freeness::BigMoebius& g, std::complex<double> x, double delta, int samples,
                                 std::uint64_t seed) {
    auto e = g.exact();
    if (!e.hyperbolic_type()) throw PreconditionError("quasi_axis_check needs a hyperbolic map");
    if (!(x.imag() > 0)) throw InputError("x must lie in the upper half-plane");
    double ell = e.translation_length().convert_to<double>();
    auto [att, rep] = e.fixed_angles();
    // send the axis to the imaginary axis: w = (x − p)/(x − q), then sinh(dist) = |Re w|/|Im w|
    auto endpoint = [](double th) { return std::fabs(std::fabs(th) - M_PI) < 1e-15 ? INFINITY : std::tan(th / 2); };
    double p = endpoint(rep), q = endpoint(att);
    std::complex<double> w = std::isinf(p) ? 1.0 / (x - q) : (std::isinf(q) ? x - p : (x - p) / (x - q));
    double off = std::asinh(std::fabs(w.real()) / std::fabs(w.imag()));
    return quasi_axis_check(ell, off, delta, samples, seed);
}

}  // namespace jd::graph
