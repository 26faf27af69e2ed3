#pragma once

#include <cstddef>
#include <string>
#include <unordered_set>
#include <vector>

#include "jointdisp/core/errors.hpp"
#include "jointdisp/core/generating_set.hpp"

namespace jd {

// Lazily built tower S, S², S³, ... sharing one product budget.
template <Geometry G>
class PowerTower {
public:
    using Isometry = typename G::Isometry;

    explicit PowerTower(GeneratingSet<G> base, std::size_t budget = kDefaultBudget)
        : budget_(budget) {
        levels_.push_back(std::move(base));
    }

    const GeneratingSet<G>& base() const { return levels_.front(); }

    // S^n for n ≥ 1
    const GeneratingSet<G>& level(int n) {
        if (n < 1) throw PreconditionError("power index must be positive");
        while (static_cast<int>(levels_.size()) < n) extend();
        return levels_[n - 1];
    }

    int computed_levels() const { return static_cast<int>(levels_.size()); }
    std::size_t products_used() const { return used_; }
    std::size_t budget() const { return budget_; }

private:
    void extend() {
        const auto& prev = levels_.back();
        const auto& s = levels_.front();
        std::size_t needed = prev.size() * s.size();
        if (used_ + needed > budget_) {
            throw BudgetError("power set S^" + std::to_string(levels_.size() + 1) + " needs " +
                                  std::to_string(used_ + needed) + " products",
                              budget_);
        }
        used_ += needed;
        const G& geo = s.geometry();
        std::vector<Isometry> out;
        std::unordered_set<std::string> seen;
        out.reserve(needed);
        for (const auto& a : prev.elements()) {
            for (const auto& b : s.elements()) {
                Isometry ab = geo.compose(a, b);
                if (seen.insert(geo.canonical_key(ab)).second) out.push_back(std::move(ab));
            }
        }
        levels_.push_back(GeneratingSet<G>::deduplicated(geo, std::move(out)));
    }

    std::vector<GeneratingSet<G>> levels_;
    std::size_t budget_;
    std::size_t used_ = 0;
};

// All products of exactly n elements of S, deduplicated by canonical key.
template <Geometry G>
GeneratingSet<G> power_set(const GeneratingSet<G>& s, int n, std::size_t budget = kDefaultBudget) {
    PowerTower<G> tower(s, budget);
    return tower.level(n);
}

// S·T = {st}
template <Geometry G>
GeneratingSet<G> product_set(const GeneratingSet<G>& s, const GeneratingSet<G>& t) {
    const G& geo = s.geometry();
    std::vector<typename G::Isometry> out;
    for (const auto& a : s.elements())
        for (const auto& b : t.elements()) out.push_back(geo.compose(a, b));
    return GeneratingSet<G>::deduplicated(geo, std::move(out));
}

// S·S⁻¹ = {s t⁻¹}
template <Geometry G>
GeneratingSet<G> quotient_set(const GeneratingSet<G>& s) {
    const G& geo = s.geometry();
    std::vector<typename G::Isometry> out;
    for (const auto& a : s.elements())
        for (const auto& b : s.elements()) out.push_back(geo.compose(a, geo.invert(b)));
    return GeneratingSet<G>::deduplicated(geo, std::move(out));
}

}  // namespace jd
