#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jointdisp/core/bracket.hpp"
#include "jointdisp/core/generating_set.hpp"
#include "jointdisp/core/geometry.hpp"

namespace jd::matrix {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

inline constexpr int kMaxDim = 6;

// Integer matrix with overflow-checked products.
struct IntMatrix {
    int d = 0;
    std::vector<std::int64_t> a;  // row-major

    std::int64_t operator()(int i, int j) const { return a[i * d + j]; }
    // nullopt on int64 overflow
    std::optional<IntMatrix> times(const IntMatrix& o) const;
    std::optional<std::int64_t> det() const;
    CMatrix to_complex() const;
};

// Element of SL_d (entries real or complex). |det| = 1 is required; exact integer entries
// are carried along when the input had them and products did not overflow.
struct MatrixIsometry {
    CMatrix m;
    std::optional<IntMatrix> exact;

    static MatrixIsometry from_int(int d, std::vector<std::int64_t> row_major);
    static MatrixIsometry from_real(const Eigen::MatrixXd& m);
    int dim() const { return static_cast<int>(m.rows()); }
    bool is_real() const;
};

MatrixIsometry multiply(const MatrixIsometry& g, const MatrixIsometry& h);
MatrixIsometry inverse(const MatrixIsometry& g);

// Hermitian positive definite, det 1.
struct PosDefPoint {
    CMatrix x;
};

PosDefPoint basepoint(int d);
// g·x = g x g*
PosDefPoint act(const MatrixIsometry& g, const PosDefPoint& p);

double operator_norm(const CMatrix& m);
// log of the largest eigenvalue modulus
double spectral_lambda(const MatrixIsometry& g);
// √Σ (log |λ_i|)²
double pd_translation_length(const MatrixIsometry& g);
// √Σ (log σ_i)² of x^{-1/2} y^{1/2}, i.e. half the norm of the log generalized eigenvalues
double pd_distance(const PosDefPoint& x, const PosDefPoint& y);
// log ‖g⁻¹h‖, the displacement form d(g·x₀, h·x₀) on P_d^∞
double pinf_distance(const MatrixIsometry& g, const MatrixIsometry& h);
// same metric on points; not symmetric for d ≥ 3
double pinf_point_distance(const PosDefPoint& x, const PosDefPoint& y);

enum class Metric { riemannian, finsler };

template <Metric M>
class MatrixGeometry {
public:
    using Isometry = MatrixIsometry;
    using Point = PosDefPoint;
    static constexpr bool kExact = false;

    explicit MatrixGeometry(int dim);

    int dim() const { return dim_; }
    GeometryKind kind() const {
        return M == Metric::riemannian ? GeometryKind::pd_riemannian : GeometryKind::pd_finsler;
    }
    bool is_cat0() const { return M == Metric::riemannian; }
    double hyperbolicity() const;

    double distance(const Point& x, const Point& y) const;
    Point apply(const Isometry& g, const Point& x) const { return act(g, x); }
    Isometry compose(const Isometry& g, const Isometry& h) const { return multiply(g, h); }
    Isometry invert(const Isometry& g) const { return inverse(g); }
    Isometry identity() const;
    double translation_length(const Isometry& g) const;
    std::string canonical_key(const Isometry& g) const;
    Point base_point() const { return basepoint(dim_); }
    void check_point(const Point& x) const;
    void check_isometry(const Isometry& g) const;
    std::string describe(const Point& x) const;
    MinimizeResult<Point> minimize(std::span<const Isometry> set, const MinimizeOptions& opts,
                                   std::optional<Point> start) const;

private:
    int dim_;
};

using PdGeometry = MatrixGeometry<Metric::riemannian>;
using PinfGeometry = MatrixGeometry<Metric::finsler>;
using PdSet = GeneratingSet<PdGeometry>;
using PinfSet = GeneratingSet<PinfGeometry>;

PinfSet as_finsler(const PdSet& s);

MinimizeResult<PosDefPoint> pd_minimal_displacement(const PdSet& s, const MinimizeOptions& opts = {});

// Joint spectral radius bracket in multiplicative form, from all products up to length n_max.
// Also records the best normalized Riemannian translation length seen, which bounds ℓ^{P_d} below.
struct JsrResult {
    Bracket bracket;
    std::vector<double> lower_by_level;  // running max of Λ^{1/j}
    std::vector<double> upper_by_level;  // running min of max ‖g‖^{1/j}
    double pd_lambda = 0.0;              // max_j max_g ℓ^{P_d}(g)/j
    std::size_t words = 0;
};

JsrResult jsr_bracket(const PdSet& s, int n_max, std::size_t budget = kDefaultBudget);

struct BochiGap {
    double gap = 0.0;  // log R_upper − log max_{j≤k0} max Λ^{1/j}
    double log_R_upper = 0.0;
    double log_lambda_k0 = 0.0;
};

BochiGap bochi_gap(const PdSet& s, int k0, int n_max = 12, std::size_t budget = kDefaultBudget);

struct ComparisonSlacks {
    double slack1 = 0.0;  // log R ≤ L ≤ √d log(√(2d) R)
    double slack2 = 0.0;  // L/√d − log √d ≤ ℓ ≤ L together with log R ≤ ℓ ≤ √d log R
    double L = 0.0;
    Bracket log_R;
    Bracket ell;
    MinimizeStatus status = MinimizeStatus::converged;
    std::optional<std::string> skipped;  // reason when the minimization failed
};

ComparisonSlacks comparison_check(const PdSet& s, int n_max = 10, std::size_t budget = kDefaultBudget);

}  // namespace jd::matrix
