#include <cmath>
#include <random>

#include "doctest.h"
#include "jointdisp/freeness/freeness.hpp"
#include "jointdisp/app/experiments.hpp"

using namespace jd;
using namespace jd::freeness;
using tree::FreeTreeGeometry;
using tree::FreeWord;

namespace {

FreeWord w(const char* s) { return FreeWord::parse(s); }

GeneratingSet<FreeTreeGeometry> fset(std::vector<FreeWord> v, int rank = 2) {
    return GeneratingSet<FreeTreeGeometry>(FreeTreeGeometry(rank), std::move(v));
}

Rational q(long n, long d = 1) { return Rational(n, d); }

BigMoebius bm(double a, double b, double c, double d) { return {a, b, c, d}; }

}  // namespace

TEST_CASE("half-trees: membership, inclusion, disjointness") {
    HalfTree hx{w(""), w("x")}, hy{w(""), w("y")};
    CHECK(hx.contains(w("xy")));
    CHECK_FALSE(hx.contains(w("y")));
    CHECK_FALSE(hx.contains(w("")));
    CHECK(HalfTree{w("x"), w("xx")}.within(hx));
    CHECK_FALSE(hx.within(HalfTree{w("x"), w("xx")}));
    CHECK_FALSE(hx.meets(hy));
    CHECK(hx.meets(HalfTree{w("xy"), w("x")}));
}

TEST_CASE("tree ping-pong for x and y") {
    TreeRegions r{{{w(""), w("x")}}, {{w(""), w("y")}}};
    // x sends H(e→y) into H(x→xy) ⊂ H(e→x)
    auto c = pingpong_certificate(w("x"), w("y"), r);
    CHECK(c.verdict == Verdict::certified);
    auto bad = pingpong_certificate(w("x"), w("X"), r);
    CHECK(bad.verdict == Verdict::inconclusive);
    TreeRegions overlap{{{w(""), w("x")}}, {{w(""), w("x")}}};
    CHECK_THROWS_AS(pingpong_certificate(w("x"), w("y"), overlap), InputError);
    CHECK_THROWS_AS(pingpong_certificate(w("x"), w("y"), TreeRegions{{}, {{w(""), w("y")}}}), InputError);
}

TEST_CASE("boundary arcs on the extended line") {
    Arc a{q(1), std::nullopt};  // [1, ∞]
    CHECK(a.contains(q(5)));
    CHECK(a.contains(std::nullopt));
    CHECK_FALSE(a.contains(q(0)));
    Arc wrap{q(1), q(-1)};  // through ∞
    CHECK(wrap.contains(q(-7)));
    CHECK_FALSE(wrap.contains(q(0)));
    CHECK(a.within(wrap));
    CHECK_FALSE(wrap.within(a));
    CHECK_FALSE(a.meets(Arc{q(-1), q(0)}));
    CHECK(a.meets(Arc{q(0), q(2)}));
    RationalMoebius g{q(1), q(2), q(0), q(1)};
    CHECK(g(Arc{q(-1), q(0)}).start == q(1));
    CHECK_FALSE(g(std::nullopt).has_value());
}

TEST_CASE("H2 ping-pong for the level-2 congruence generators") {
    BigMoebius g = bm(1, 2, 0, 1), h = bm(1, 0, 2, 1);
    // h sends [1, ∞] to [1/3, 1/2], outside [−1, 0]
    auto c1 = pingpong_certificate(g, h, ArcRegions{{{q(1), std::nullopt}}, {{q(-1), q(0)}}});
    CHECK(c1.verdict == Verdict::inconclusive);
    auto c2 = pingpong_certificate(g, h, ArcRegions{{{q(1), std::nullopt}}, {{q(0), q(1, 2)}}});
    CHECK(c2.verdict == Verdict::certified);
    CHECK_THROWS_AS(pingpong_certificate(g, h, ArcRegions{{{q(0), std::nullopt}}, {{q(0), q(1, 2)}}}), InputError);
}

TEST_CASE("exact rational conversion is lossless") {
    CHECK(exact_rational(0.375) == q(3, 8));
    CHECK(exact_rational(BigFloat(-2.5)) == q(-5, 2));
    BigMoebius m = BigMoebius::hyperbolic(0.0, 1.0, 3.0);
    CHECK(std::abs(m.translation_length().convert_to<double>() - 3.0) < 1e-12);
    auto [att, rep] = m.fixed_angles();
    CHECK(std::abs(att - 2 * std::atan(1.0)) < 1e-12);
    CHECK(std::abs(rep) < 1e-12);
}

TEST_CASE("word distinctness") {
    FreeTreeGeometry f2(2);
    auto c = word_distinctness(f2, w("x"), w("y"), 12);
    CHECK(c.verdict == Verdict::certified);
    CHECK(c.note.find("8190") != std::string::npos);
    CHECK(word_distinctness(f2, w("x"), w("x"), 3).verdict == Verdict::refuted);
    CHECK(word_distinctness(f2, w("x"), w("xx"), 3).verdict == Verdict::refuted);
    CHECK_THROWS_AS(word_distinctness(f2, w("x"), w("y"), 30, 1000), BudgetError);

    h2::H2Geometry hg;
    auto d = word_distinctness(hg, h2::dilation(1.0), h2::dilation(2.0), 4);
    CHECK(d.verdict == Verdict::refuted);
    auto e = word_distinctness(hg, h2::Moebius::make(1, 2, 0, 1), h2::Moebius::make(1, 0, 2, 1), 8);
    CHECK(e.verdict == Verdict::inconclusive);  // floating keys never certify
}

TEST_CASE("entropy sequence counts balls") {
    auto one = entropy_sequence(fset({w(""), w("x"), w("X")}, 1), 6);
    for (const auto& p : one) CHECK(p.size == std::size_t(2 * p.n + 1));
    auto two = entropy_sequence(fset({w(""), w("x"), w("X"), w("y"), w("Y")}), 8);
    for (const auto& p : two) CHECK(p.size == std::size_t(1 + 2 * (std::pow(3, p.n) - 1)));
    CHECK(std::abs(two.back().rate - std::log(3.0)) < 0.2);
    auto line = entropy_sequence(fset({w(""), w("xy")}), 7);
    for (const auto& p : line) CHECK(p.size == std::size_t(p.n + 1));
    // without the identity, Sⁿ keeps only the words of the parity of n
    auto f2 = entropy_sequence(fset({w("x"), w("X"), w("y"), w("Y")}), 8);
    for (const auto& p : f2) CHECK(p.size == std::size_t((std::pow(3, p.n + 1) - 1) / 2));
}

TEST_CASE("ends of hyperbolic words") {
    auto [att, rep] = word_ends(w("xyX"));
    CHECK(same_end(att.first, att.second, w("x"), w("y")));
    CHECK(same_end(rep.first, rep.second, w("x"), w("Y")));
    CHECK(same_end(w(""), w("xy"), w("x"), w("yx")));
    CHECK_FALSE(same_end(w(""), w("xy"), w(""), w("yx")));
    CHECK_THROWS_AS(word_ends(w("")), PreconditionError);
}

TEST_CASE("semigroup certificates on random tree sets pass distinctness") {
    std::mt19937_64 rng(12);
    FreeTreeGeometry f2(2);
    int certified = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<FreeWord> gens;
        int k = 2 + trial % 2;
        for (int i = 0; i < k; ++i) {
            std::vector<int> letters;
            int len = 1 + rng() % 4;
            for (int j = 0; j < len; ++j) {
                int gen = 1 + rng() % 2;
                letters.push_back(rng() % 2 ? gen : -gen);
            }
            gens.push_back(FreeWord(letters));
        }
        auto s = GeneratingSet<FreeTreeGeometry>::deduplicated(f2, gens);
        auto cert = semigroup_from_displacement(s);
        if (cert.verdict != Verdict::certified) {
            CAPTURE(cert.note);
            // only sets inside a cyclic subgroup may fail
            continue;
        }
        ++certified;
        auto check = word_distinctness(f2, FreeWord::parse(cert.u), FreeWord::parse(cert.v), 12);
        CAPTURE(cert.u);
        CAPTURE(cert.v);
        CHECK(check.verdict == Verdict::certified);
    }
    CHECK(certified >= 80);
}

TEST_CASE("semigroup from displacement in H2") {
    SUBCASE("strong hyperbolics") {
        std::vector<BigMoebius> s{BigMoebius::hyperbolic(0.0, 1.0, 20500.0), BigMoebius::hyperbolic(2.0, 3.0, 3.0)};
        auto c = semigroup_from_displacement(s, h2::kDelta);
        CAPTURE(c.note);
        CHECK(c.verdict == Verdict::certified);
        CHECK(c.kind == CertificateKind::pingpong);
        CHECK_FALSE(c.below_proven_threshold);
    }
    SUBCASE("all elliptic is inconclusive with the full shortfall") {
        h2::H2Set s(h2::H2Geometry{}, {h2::rotation_about(1.0, 0.3), h2::rotation_about(1.0, 0.7)});
        auto c = semigroup_from_displacement(s, h2::kDelta);
        CHECK(c.verdict == Verdict::inconclusive);
        CHECK(c.shortfall == doctest::Approx(kProvenDelta * h2::kDelta));
    }
    SUBCASE("lowered threshold is flagged") {
        h2::H2Set s(h2::H2Geometry{}, {h2::Moebius::make(1, 2, 0, 1), h2::Moebius::make(1, 0, 2, 1)});
        SemigroupOptions o;
        o.Delta = 0.5;
        auto c = semigroup_from_displacement(s, h2::kDelta, o);
        CHECK(c.below_proven_threshold);
        CHECK(c.verdict != Verdict::refuted);
    }
}

TEST_CASE("constructive semigroup pair") {
    FreeTreeGeometry geo(2);
    auto w = [](const char* t) { return FreeWord::parse(t); };
    auto xy = semigroup_pair(GeneratingSet<FreeTreeGeometry>(geo, {w("x"), w("y")}));
    CHECK(xy.verdict == Verdict::certified);
    CHECK(xy.u == "x");
    CHECK(xy.v == "yxY");
    CHECK(xy.depth == 12);

    auto pr = semigroup_pair(GeneratingSet<FreeTreeGeometry>(geo, {w("xy"), w("yx")}));
    CHECK(pr.verdict == Verdict::certified);
    CHECK(w(pr.u.c_str()) * w(pr.v.c_str()) != w(pr.v.c_str()) * w(pr.u.c_str()));

    CHECK_THROWS_AS(semigroup_pair(GeneratingSet<FreeTreeGeometry>(geo, {w("x"), w("X")})), PreconditionError);
    CHECK_THROWS_AS(semigroup_pair(GeneratingSet<FreeTreeGeometry>(geo, {w("xy"), w("YX"), w("xyxy")})),
                    PreconditionError);
    CHECK_THROWS_AS(semigroup_pair(GeneratingSet<FreeTreeGeometry>(geo, {w("1")})), PreconditionError);

    // every non-elementary random set yields a certified pair
    app::Rng rng(41);
    for (int i = 0; i < 40; ++i) {
        auto s = app::random_noncyclic_free_set(rng, 2, 3, 4);
        auto c = semigroup_pair(s, 10);
        CHECK_MESSAGE(c.verdict == Verdict::certified, c.u << " " << c.v << " " << c.v_word << " " << c.note);
    }
}
