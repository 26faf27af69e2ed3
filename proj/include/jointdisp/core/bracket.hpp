#pragma once

#include <string>

namespace jd {

inline constexpr double kCompareTol = 1e-9;
inline constexpr double kMinimizeTol = 1e-6;
inline constexpr std::size_t kDefaultBudget = 2'000'000;

struct Bracket {
    double lower = 0.0;
    double upper = 0.0;
    std::string lower_source;
    std::string upper_source;

    double width() const { return upper - lower; }
    bool contains(double v, double tol = 0.0) const { return v >= lower - tol && v <= upper + tol; }
    bool consistent(double tol) const { return lower <= upper + tol; }
};

}  // namespace jd
