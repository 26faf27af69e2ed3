#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jointdisp/core/errors.hpp"
#include "jointdisp/core/generating_set.hpp"
#include "jointdisp/core/power_set.hpp"
#include "jointdisp/freeness/arcs.hpp"
#include "jointdisp/hyperbolic/h2.hpp"
#include "jointdisp/tree/free_tree.hpp"

namespace jd::freeness {

// Threshold above which a displacement gap is known to force a free semigroup.
inline constexpr double kProvenDelta = 10000.0;

enum class Verdict { certified, refuted, inconclusive };
std::string to_string(Verdict v);

enum class CertificateKind { pingpong, distinctness };
std::string to_string(CertificateKind k);

// Half of the tree cut at the edge a–b, on the side of b (a, b adjacent).
struct HalfTree {
    tree::FreeWord a, b;

    bool contains(const tree::FreeWord& v) const;
    bool within(const HalfTree& o) const;
    bool meets(const HalfTree& o) const;
    HalfTree image(const tree::FreeWord& g) const { return {g * a, g * b}; }
    std::string str() const { return "(" + a.str() + " -> " + b.str() + ")"; }
};

template <class Piece>
struct Regions {
    std::vector<Piece> A, B;
};

using TreeRegions = Regions<HalfTree>;
using ArcRegions = Regions<Arc>;

struct FreenessCertificate {
    CertificateKind kind = CertificateKind::pingpong;
    Verdict verdict = Verdict::inconclusive;
    int depth = 0;                  // distinctness depth
    std::string u, v;               // the certified pair, as words or matrices
    std::string u_word, v_word;     // how the pair is built from the generating set
    std::vector<std::string> A, B;  // region pieces
    std::string note;
    double shortfall = 0.0;  // Δδ minus the best translation length found, when none qualified
    bool below_proven_threshold = false;
};

// Exact ping-pong test: g(A ∪ B) ⊂ A, h(A ∪ B) ⊂ B, A ∩ B = ∅.
// Throws InputError when A and B meet or a region is empty.
FreenessCertificate pingpong_certificate(const tree::FreeWord& g, const tree::FreeWord& h, const TreeRegions& r);
FreenessCertificate pingpong_certificate(const BigMoebius& g, const BigMoebius& h, const ArcRegions& r);
FreenessCertificate pingpong_certificate(const RationalMoebius& g, const RationalMoebius& h, const ArcRegions& r);

struct SemigroupOptions {
    double Delta = kProvenDelta;
    int max_power = 8;
    int distinctness_depth = 12;
};

FreenessCertificate semigroup_from_displacement(const GeneratingSet<tree::FreeTreeGeometry>& s,
                                                const SemigroupOptions& opts = {});
// The constructive pair (g, s g s⁻¹): g the first hyperbolic element of S ∪ S², s ∈ S moving g's
// attracting end. Certified by distinctness to the given depth, which is conclusive in a free group.
// Throws PreconditionError ("elementary subgroup") when ⟨S⟩ fixes a point or an end.
FreenessCertificate semigroup_pair(const GeneratingSet<tree::FreeTreeGeometry>& s, int depth = 12);

// Entries are rounded to exact rationals once; every later product is exact.
FreenessCertificate semigroup_from_displacement(const std::vector<BigMoebius>& s, double delta,
                                                const SemigroupOptions& opts = {});
FreenessCertificate semigroup_from_displacement(const h2::H2Set& s, double delta, const SemigroupOptions& opts = {});

// Do two ends u·c^{+∞} of the tree coincide? Both must be in the reduced form word_ends returns.
bool same_end(const tree::FreeWord& u1, const tree::FreeWord& c1, const tree::FreeWord& u2, const tree::FreeWord& c2);
// Ends (attracting, repelling) of a hyperbolic word as (u, c) with the end u·c^{+∞}.
std::pair<std::pair<tree::FreeWord, tree::FreeWord>, std::pair<tree::FreeWord, tree::FreeWord>>
word_ends(const tree::FreeWord& g);

// Are the positive words of length ≤ n in {u, v} pairwise distinct?
// Exact geometries compare canonical keys; otherwise key collisions are re-checked entrywise.
template <Geometry G>
FreenessCertificate word_distinctness(const G& geo, const typename G::Isometry& u, const typename G::Isometry& v, int n,
                                      std::size_t budget = kDefaultBudget) {
    if (n < 1) throw InputError("word_distinctness needs n >= 1");
    if (n > 40 || (std::size_t(1) << (n + 1)) > budget) throw BudgetError("word_distinctness: 2^(n+1) words exceed the budget", budget);
    using I = typename G::Isometry;
    FreenessCertificate cert;
    cert.kind = CertificateKind::distinctness;
    cert.depth = n;
    std::map<std::string, std::string> seen;
    std::vector<std::pair<std::string, I>> layer{{"", geo.identity()}};
    for (int len = 1; len <= n; ++len) {
        std::vector<std::pair<std::string, I>> next;
        next.reserve(layer.size() * 2);
        for (const auto& [w, g] : layer) {
            for (int side = 0; side < 2; ++side) {
                I p = geo.compose(g, side ? v : u);
                std::string word = w + (side ? "v" : "u");
                std::string key = geo.canonical_key(p);
                auto [it, fresh] = seen.emplace(key, word);
                if (!fresh) {
                    cert.verdict = Verdict::refuted;
                    cert.note = "words " + it->second + " and " + word + " coincide" +
                                (G::kExact ? "" : " (floating keys, equal up to rounding)");
                    return cert;
                }
                next.emplace_back(std::move(word), std::move(p));
            }
        }
        layer = std::move(next);
    }
    cert.verdict = G::kExact ? Verdict::certified : Verdict::inconclusive;
    cert.note = "all " + std::to_string(seen.size()) + " positive words of length <= " + std::to_string(n) + " distinct";
    return cert;
}

struct EntropyPoint {
    int n;
    std::size_t size;
    double rate;  // log|Sⁿ|/n
};

template <Geometry G>
std::vector<EntropyPoint> entropy_sequence(const GeneratingSet<G>& s, int n_max, std::size_t budget = kDefaultBudget) {
    if (n_max < 1) throw InputError("entropy_sequence needs n_max >= 1");
    PowerTower<G> tower(s, budget);
    std::vector<EntropyPoint> out;
    for (int n = 1; n <= n_max; ++n) {
        std::size_t k = tower.level(n).size();
        out.push_back({n, k, std::log(double(k)) / n});
    }
    return out;
}

}  // namespace jd::freeness
