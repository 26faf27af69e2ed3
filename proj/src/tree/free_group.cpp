#include "jointdisp/tree/free_group.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "jointdisp/core/errors.hpp"

namespace jd::tree {

namespace {

constexpr const char* kLetters = "xyzw";

void push_reduced(std::vector<int>& out, int l) {
    if (!out.empty() && out.back() == -l)
        out.pop_back();
    else
        out.push_back(l);
}

}  // namespace

char letter_char(int letter) {
    char c = kLetters[std::abs(letter) - 1];
    return letter > 0 ? c : static_cast<char>(std::toupper(c));
}

FreeWord::FreeWord(std::vector<int> letters) {
    for (int l : letters) {
        if (l == 0 || std::abs(l) > kMaxRank) throw InputError("free group letter out of range");
        push_reduced(letters_, l);
    }
}

FreeWord FreeWord::parse(const std::string& text) {
    if (text.empty() || text == "1" || text == "e") return {};
    std::vector<int> ls;
    for (char c : text) {
        char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        const char* p = std::find(kLetters, kLetters + kMaxRank, lc);
        if (p == kLetters + kMaxRank) throw InputError(std::string("bad free group letter '") + c + "' in \"" + text + "\"");
        int k = static_cast<int>(p - kLetters) + 1;
        ls.push_back(std::isupper(static_cast<unsigned char>(c)) ? -k : k);
    }
    return FreeWord(std::move(ls));
}

int FreeWord::max_generator() const {
    int m = 0;
    for (int l : letters_) m = std::max(m, std::abs(l));
    return m;
}

FreeWord FreeWord::inverse() const {
    FreeWord r;
    r.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) r.letters_.push_back(-*it);
    return r;
}

FreeWord FreeWord::operator*(const FreeWord& other) const {
    FreeWord r = *this;
    for (int l : other.letters_) push_reduced(r.letters_, l);
    return r;
}

FreeWord FreeWord::prefix(int n) const {
    FreeWord r;
    r.letters_.assign(letters_.begin(), letters_.begin() + std::min(n, length()));
    return r;
}

FreeWord FreeWord::suffix_from(int n) const {
    FreeWord r;
    if (n < length()) r.letters_.assign(letters_.begin() + n, letters_.end());
    return r;
}

bool FreeWord::operator<(const FreeWord& o) const {
    if (length() != o.length()) return length() < o.length();
    return letters_ < o.letters_;
}

std::string FreeWord::str() const {
    if (letters_.empty()) return "1";
    std::string s;
    for (int l : letters_) s.push_back(letter_char(l));
    return s;
}

std::pair<FreeWord, FreeWord> FreeWord::cyclic_decomposition() const {
    int i = 0, j = length() - 1;
    while (i < j && letters_[i] == -letters_[j]) {
        ++i;
        --j;
    }
    FreeWord u, c;
    u.letters_.assign(letters_.begin(), letters_.begin() + i);
    if (i <= j) c.letters_.assign(letters_.begin() + i, letters_.begin() + j + 1);
    return {u, c};
}

}  // namespace jd::tree
