#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace jd::tree {

inline constexpr int kMaxRank = 4;

// Reduced word in the free group on x, y, z, w. Letter k > 0 is the k-th
// generator, -k its inverse. Words are always kept freely reduced.
class FreeWord {
public:
    FreeWord() = default;
    explicit FreeWord(std::vector<int> letters);

    // "xY" style; "", "1" and "e" denote the identity.
    static FreeWord parse(const std::string& text);
    static FreeWord generator(int k) { return FreeWord(std::vector<int>{k}); }

    const std::vector<int>& letters() const { return letters_; }
    int length() const { return static_cast<int>(letters_.size()); }
    bool empty() const { return letters_.empty(); }
    int max_generator() const;
    int front() const { return letters_.front(); }
    int back() const { return letters_.back(); }

    FreeWord inverse() const;
    FreeWord operator*(const FreeWord& other) const;
    FreeWord prefix(int n) const;
    FreeWord suffix_from(int n) const;
    bool operator==(const FreeWord& o) const { return letters_ == o.letters_; }
    bool operator!=(const FreeWord& o) const { return !(*this == o); }
    bool operator<(const FreeWord& o) const;

    std::string str() const;

    // w = u c u⁻¹ with c cyclically reduced.
    std::pair<FreeWord, FreeWord> cyclic_decomposition() const;
    int cyclic_length() const { return cyclic_decomposition().second.length(); }

private:
    std::vector<int> letters_;
};

char letter_char(int letter);

}  // namespace jd::tree
