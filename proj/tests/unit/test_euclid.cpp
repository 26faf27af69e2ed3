#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "jointdisp/core/battery.hpp"
#include "jointdisp/core/errors.hpp"
#include "jointdisp/core/power_set.hpp"
#include "jointdisp/euclidean/euclidean.hpp"

using namespace jd;
using namespace jd::euclid;

namespace {

Matrix rot2(double th) {
    Matrix r(2, 2);
    r << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    return r;
}

Vector v2(double x, double y) {
    Vector v(2);
    v << x, y;
    return v;
}

// coarse-to-fine grid search over the max displacement in the plane
double grid_L(const std::vector<EuclideanIsometry>& s, double half_width) {
    Vector c = v2(0, 0);
    double h = half_width, best = 1e300;
    for (int level = 0; level < 60; ++level) {
        Vector bc = c;
        for (int i = -20; i <= 20; ++i)
            for (int j = -20; j <= 20; ++j) {
                Vector x = c + v2(i * h / 20, j * h / 20);
                double m = 0;
                for (const auto& g : s) m = std::max(m, (g(x) - x).norm());
                if (m < best) {
                    best = m;
                    bc = x;
                }
            }
        c = bc;
        h /= 2;
    }
    return best;
}

// min over x of Σ w_i ‖(R_i − I)x + t_i‖², a lower bound for L² whenever w is a probability vector
double weighted_floor(const std::vector<EuclideanIsometry>& s, const std::vector<double>& w) {
    Matrix h = Matrix::Zero(2, 2);
    Vector g = Vector::Zero(2);
    double c = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        Matrix a = s[i].R - Matrix::Identity(2, 2);
        h += w[i] * a.transpose() * a;
        g += w[i] * a.transpose() * s[i].t;
        c += w[i] * s[i].t.squaredNorm();
    }
    Vector x = h.completeOrthogonalDecomposition().solve(-g);
    return std::max(0.0, c + g.dot(x));
}

// best floor over a simplex grid of weights
double dual_L(const std::vector<EuclideanIsometry>& s, int steps) {
    const int n = static_cast<int>(s.size());
    std::vector<int> k(n, 0);
    double best = 0;
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n - 1) {
            k[i] = left;
            std::vector<double> w(n);
            for (int j = 0; j < n; ++j) w[j] = double(k[j]) / steps;
            best = std::max(best, weighted_floor(s, w));
            return;
        }
        for (int v = 0; v <= left; ++v) {
            k[i] = v;
            rec(i + 1, left - v);
        }
    };
    rec(0, steps);
    return std::sqrt(best);
}

EuclideanIsometry random_isometry(std::mt19937_64& rng, int d) {
    std::normal_distribution<double> n(0, 1);
    Matrix q = random_orthogonal(d, rng());
    Vector t(d);
    for (int i = 0; i < d; ++i) t(i) = n(rng);
    return {q, t};
}

}  // namespace

TEST_CASE("fixed sets of planar isometries") {
    auto rot = EuclideanIsometry::linear(rot2(0.7));
    auto fs = fixed_set(rot);
    REQUIRE_FALSE(fs.empty());
    CHECK(fs.dimension() == 0);
    CHECK(fs.base->norm() < 1e-12);

    CHECK(fixed_set(EuclideanIsometry::translation(v2(1, 0))).empty());

    auto half = EuclideanIsometry::about(rot2(M_PI), v2(1, 0));
    auto fh = fixed_set(half);
    REQUIRE_FALSE(fh.empty());
    CHECK((*fh.base - v2(1, 0)).norm() < 1e-10);

    auto id = fixed_set(EuclideanIsometry::linear(Matrix::Identity(2, 2)));
    CHECK(id.dimension() == 2);
}

TEST_CASE("two half-turns and a translation") {
    EuclideanGeometry geo(2);
    auto a = EuclideanIsometry::about(rot2(M_PI), v2(1, 0));
    auto b = EuclideanIsometry::about(rot2(M_PI), v2(-1, 0));
    EuclidSet s(geo, {a, b});
    auto r = euclid_minimal_displacement(s);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(r.point.norm() < 1e-6);
    CHECK_FALSE(common_fixed_point(s).has_value());

    EuclidSet t(geo, {EuclideanIsometry::translation(v2(1, 0))});
    CHECK(euclid_minimal_displacement(t).value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(geo.translation_length(t[0]) == doctest::Approx(1.0));
}

TEST_CASE("planar minimization sits between grid and dual bounds") {
    std::mt19937_64 rng(11);
    EuclideanGeometry geo(2);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<EuclideanIsometry> el;
        int n = 2 + trial % 3;
        for (int i = 0; i < n; ++i) el.push_back(random_isometry(rng, 2));
        EuclidSet s = EuclidSet::deduplicated(geo, el);
        double got = euclid_minimal_displacement(s).value;
        double upper = grid_L(el, 50.0);
        double lower = dual_L(el, 60);
        CHECK(got <= upper + 1e-7);
        CHECK(got >= lower - 1e-9);
        CHECK(got - lower <= 2e-2 * (1 + got));
    }
}

TEST_CASE("single element displacement equals translation length") {
    std::mt19937_64 rng(3);
    for (int d : {2, 3, 4, 5}) {
        EuclideanGeometry geo(d);
        for (int trial = 0; trial < 20; ++trial) {
            auto g = random_isometry(rng, d);
            // force a kernel direction half the time
            if (trial % 2 == 0) {
                Matrix q = random_orthogonal(d, rng());
                std::vector<double> angles(d / 2, 1.1);
                if (d % 2 == 0) angles.back() = 0.0;
                g.R = block_rotation(q, angles);
            }
            EuclidSet s(geo, {g});
            auto r = euclid_minimal_displacement(s);
            CHECK(r.value == doctest::Approx(geo.translation_length(g)).epsilon(1e-7).scale(1.0));
        }
    }
}

TEST_CASE("common fixed point detected") {
    EuclideanGeometry geo(3);
    std::mt19937_64 rng(5);
    Vector c(3);
    c << 1, -2, 0.5;
    std::vector<EuclideanIsometry> el;
    for (int i = 0; i < 4; ++i) el.push_back(EuclideanIsometry::about(random_orthogonal(3, rng()), c));
    EuclidSet s(geo, el);
    auto p = common_fixed_point(s);
    REQUIRE(p.has_value());
    CHECK((*p - c).norm() < 1e-8);
    CHECK(euclid_minimal_displacement(s).value < 1e-7);
}

TEST_CASE("greedy escape bound below the true rate") {
    EuclideanGeometry geo(2);
    EuclidSet t(geo, {EuclideanIsometry::translation(v2(1, 0)), EuclideanIsometry::translation(v2(0, 1))});
    // greedy keeps stepping along the first axis
    double g = greedy_escape_lower_bound(t, v2(0, 0), 100);
    CHECK(g == doctest::Approx(1.0));
    CHECK(g <= euclid_minimal_displacement(t).value + 1e-9);
    CHECK_THROWS_AS(greedy_escape_lower_bound(t, v2(0, 0), 0), InputError);
}

TEST_CASE("Bass example: elliptic powers, no fixed point") {
    auto ex = bass_example(6, 1);
    const auto& r = ex.report;
    CHECK(r.eigen_margin > 1e-6);
    CHECK(r.words_checked == 4 * (1 + 3 + 9 + 27 + 81 + 243));
    CHECK(r.lambda_N == 0.0);
    CHECK_FALSE(r.common_fixed_point);
    CHECK(r.greedy_bound > 0.1);
    CHECK(r.L_upper >= r.L_lower_linear - 1e-7);
    CHECK(r.L_upper >= r.L_lower - 1e-7);
    CHECK(r.greedy_bound >= 0.3);
    CHECK(r.greedy_bound <= r.L_upper + 1e-9);

    auto centred = bass_example(6, 1, true);
    CHECK(centred.report.common_fixed_point);
    CHECK(centred.report.L_upper < 1e-7);
}

TEST_CASE("Bass example: sine bound holds on every seed, the linear-angle bound need not") {
    bool linear_fails = false;
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        auto r = bass_example(6, seed).report;
        CHECK(r.L_upper >= r.L_lower - 1e-7);
        CHECK(r.L_lower <= r.L_lower_linear + 1e-12);
        CHECK(r.lambda_N == 0.0);
        CHECK(r.greedy_bound > 0.1);
        if (r.L_upper < r.L_lower_linear - 1e-3) linear_fails = true;
    }
    // seed 2 draws all angles above 2.1 rad
    CHECK(linear_fails);
}

TEST_CASE("Bass example at depth 4, seed 7") {
    auto r = bass_example(4, 7).report;
    CHECK(r.lambda_N == 0.0);
    CHECK(r.words_checked == 4 * (1 + 3 + 9 + 27));
}

TEST_CASE("planar commutator is a translation") {
    auto a = EuclideanIsometry::about(rot2(M_PI / 2), v2(0, 0));
    auto b = EuclideanIsometry::about(rot2(M_PI / 2), v2(1, 0));
    auto c = planar_commutator_check(a, b);
    CHECK((c.R - Matrix::Identity(2, 2)).norm() < 1e-12);
    CHECK(c.t.norm() > 0.5);
    CHECK_THROWS_AS(planar_commutator_check(a, a), PreconditionError);
    CHECK_THROWS_AS(planar_commutator_check(a, EuclideanIsometry::translation(v2(1, 0))), PreconditionError);
}

TEST_CASE("Euclidean battery holds") {
    std::mt19937_64 rng(9);
    EuclideanGeometry geo(3);
    std::vector<EuclideanIsometry> el;
    for (int i = 0; i < 2; ++i) el.push_back(random_isometry(rng, 3));
    EuclidSet s(geo, el);
    auto rep = analyze(s, 2, geo.hyperbolicity(), MinimizeOptions{}, 200000);
    for (const auto& sl : rep.battery.slacks) CHECK_MESSAGE(sl.ok(), sl.name << " " << sl.value);
}

TEST_CASE("trichotomy on random sets") {
    std::mt19937_64 rng(2024);
    int with_fixed = 0;
    for (int trial = 0; trial < 200; ++trial) {
        int d = 2 + trial % 3;
        EuclideanGeometry geo(d);
        std::vector<EuclideanIsometry> el;
        int n = 1 + trial % 3;
        // a third of the sets share a centre
        bool shared = trial % 3 == 0;
        Vector c = Vector::Random(d);
        for (int i = 0; i < n; ++i) {
            auto g = random_isometry(rng, d);
            if (shared) g = EuclideanIsometry::about(g.R, c);
            el.push_back(g);
        }
        EuclidSet s = EuclidSet::deduplicated(geo, el);
        bool fixed = common_fixed_point(s).has_value();
        double L = euclid_minimal_displacement(s).value;
        CHECK(fixed == (L <= 1e-6));
        if (!fixed) CHECK(greedy_escape_lower_bound(s, Vector::Zero(d), 2000) > 1e-3);
        with_fixed += fixed;
    }
    CHECK(with_fixed >= 60);
}

TEST_CASE("square-root growth on symmetric sets") {
    std::mt19937_64 rng(77);
    for (int d : {2, 3}) {
        EuclideanGeometry geo(d);
        for (int trial = 0; trial < 5; ++trial) {
            auto a = random_isometry(rng, d);
            EuclidSet s(geo, {a, geo.invert(a)});
            double q = minimal_displacement(quotient_set(s)).value;
            PowerTower<EuclideanGeometry> tower(s);
            for (int n = 1; n <= 16; ++n) {
                double Ln = minimal_displacement(tower.level(n)).value;
                CHECK(Ln >= std::sqrt(n) / 2 * q - 1e-7 * (1 + q));
            }
            auto b = random_isometry(rng, d);
            EuclidSet two(geo, {a, geo.invert(a), b, geo.invert(b)});
            double q2 = minimal_displacement(quotient_set(two)).value;
            PowerTower<EuclideanGeometry> t2(two);
            for (int n = 1; n <= 5; ++n) {
                double Ln = minimal_displacement(t2.level(n)).value;
                CHECK(Ln >= std::sqrt(n) / 2 * q2 - 1e-7 * (1 + q2));
            }
        }
    }
}

TEST_CASE("greedy escape is at least every translation length") {
    std::mt19937_64 rng(115);
    for (int trial = 0; trial < 60; ++trial) {
        int d = 2 + trial % 3;
        EuclideanGeometry geo(d);
        EuclidSet s = EuclidSet::deduplicated(geo, {random_isometry(rng, d), random_isometry(rng, d)});
        double bound = greedy_escape_lower_bound(s, Vector::Zero(d), 500);
        for (const auto& g : s.elements()) CHECK(bound >= geo.translation_length(g) - 1e-9);
    }
}
