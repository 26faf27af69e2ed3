#pragma once

#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "jointdisp/core/errors.hpp"
#include "jointdisp/core/geometry.hpp"

namespace jd {

template <Geometry G>
class GeneratingSet {
public:
    using Isometry = typename G::Isometry;
    using Point = typename G::Point;

    // Rejects empty input and duplicate canonical keys.
    GeneratingSet(G geometry, std::vector<Isometry> elements) : geometry_(std::move(geometry)) {
        if (elements.empty()) throw InputError("generating set is empty");
        for (auto& g : elements) {
            geometry_.check_isometry(g);
            std::string key = geometry_.canonical_key(g);
            if (index_.count(key)) throw InputError("duplicate element in generating set: " + key);
            push(std::move(key), std::move(g));
        }
        finish();
    }

    // Keeps the first occurrence of each canonical key.
    static GeneratingSet deduplicated(G geometry, std::vector<Isometry> elements) {
        GeneratingSet s(std::move(geometry));
        for (auto& g : elements) {
            std::string key = s.geometry_.canonical_key(g);
            if (!s.index_.count(key)) s.push(std::move(key), std::move(g));
        }
        if (s.elements_.empty()) throw InputError("generating set is empty");
        s.finish();
        return s;
    }

    const G& geometry() const { return geometry_; }
    const std::vector<Isometry>& elements() const { return elements_; }
    const std::vector<std::string>& keys() const { return keys_; }
    std::size_t size() const { return elements_.size(); }
    const Isometry& operator[](std::size_t i) const { return elements_[i]; }
    bool is_symmetric() const { return symmetric_; }
    bool contains_identity() const { return has_identity_; }
    GeometryKind geometry_tag() const { return geometry_.kind(); }
    bool contains_key(const std::string& key) const { return index_.count(key) > 0; }

    // S ∪ S⁻¹
    GeneratingSet symmetrized() const {
        std::vector<Isometry> all = elements_;
        for (const auto& g : elements_) all.push_back(geometry_.invert(g));
        return deduplicated(geometry_, std::move(all));
    }

    GeneratingSet with_identity() const {
        std::vector<Isometry> all{geometry_.identity()};
        all.insert(all.end(), elements_.begin(), elements_.end());
        return deduplicated(geometry_, std::move(all));
    }

private:
    explicit GeneratingSet(G geometry) : geometry_(std::move(geometry)) {}

    void push(std::string key, Isometry g) {
        index_.emplace(key, elements_.size());
        keys_.push_back(std::move(key));
        elements_.push_back(std::move(g));
    }

    void finish() {
        has_identity_ = index_.count(geometry_.canonical_key(geometry_.identity())) > 0;
        symmetric_ = true;
        for (const auto& g : elements_) {
            if (!index_.count(geometry_.canonical_key(geometry_.invert(g)))) {
                symmetric_ = false;
                break;
            }
        }
    }

    G geometry_;
    std::vector<Isometry> elements_;
    std::vector<std::string> keys_;
    std::unordered_map<std::string, std::size_t> index_;
    bool symmetric_ = false;
    bool has_identity_ = false;
};

}  // namespace jd
