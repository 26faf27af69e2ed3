#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "jointdisp/core/generating_set.hpp"
#include "jointdisp/core/geometry.hpp"

namespace jd::euclid {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr int kMaxDim = 8;

// x ↦ R x + t
struct EuclideanIsometry {
    Matrix R;
    Vector t;

    static EuclideanIsometry translation(const Vector& t);
    static EuclideanIsometry linear(const Matrix& R);
    // rotation R about the centre c: x ↦ R(x − c) + c
    static EuclideanIsometry about(const Matrix& R, const Vector& c);
    int dim() const { return static_cast<int>(t.size()); }
    Vector operator()(const Vector& x) const { return R * x + t; }
};

class EuclideanGeometry {
public:
    using Isometry = EuclideanIsometry;
    using Point = Vector;
    static constexpr bool kExact = false;

    explicit EuclideanGeometry(int dim = 2);

    int dim() const { return dim_; }
    GeometryKind kind() const { return GeometryKind::euclidean; }
    bool is_cat0() const { return true; }
    double hyperbolicity() const;

    double distance(const Point& x, const Point& y) const { return (x - y).norm(); }
    Point apply(const Isometry& g, const Point& x) const { return g(x); }
    Isometry compose(const Isometry& g, const Isometry& h) const { return {g.R * h.R, g.R * h.t + g.t}; }
    Isometry invert(const Isometry& g) const;
    Isometry identity() const;
    // norm of the component of t along ker(I − R)
    double translation_length(const Isometry& g) const;
    std::string canonical_key(const Isometry& g) const;
    Point base_point() const { return Vector::Zero(dim_); }
    void check_point(const Point& x) const;
    void check_isometry(const Isometry& g) const;
    std::string describe(const Point& x) const;
    MinimizeResult<Point> minimize(std::span<const Isometry> set, const MinimizeOptions& opts,
                                   std::optional<Point> start) const;

private:
    int dim_;
};

using EuclidSet = GeneratingSet<EuclideanGeometry>;

struct AffineFixedSet {
    std::optional<Vector> base;  // empty when there is no fixed point
    Matrix directions;           // orthonormal columns spanning ker(I − R)
    bool empty() const { return !base.has_value(); }
    int dimension() const { return empty() ? -1 : static_cast<int>(directions.cols()); }
};

AffineFixedSet fixed_set(const EuclideanIsometry& g);
std::optional<Vector> common_fixed_point(const EuclidSet& s);

MinimizeResult<Vector> euclid_minimal_displacement(const EuclidSet& s, const MinimizeOptions& opts = {});

// Greedy word s_n ⋯ s_1 pushing x0 away; returns the best d(w x0, x0)/n over block lengths 1..3
// and the constant words gⁿ.
// Each value is a lower bound for L(Sⁿ, x0)/n.
double greedy_escape_lower_bound(const EuclidSet& s, const Vector& x0, int n);

// Rotation of ℝ^2k with the given block angles, conjugated by q.
Matrix block_rotation(const Matrix& q, std::span<const double> angles);
Matrix random_orthogonal(int d, std::uint64_t seed);

struct BassReport {
    std::uint64_t seed_used = 0;
    int depth = 0;
    long long words_checked = 0;
    double eigen_margin = 0.0;  // min over words of min |eig(R_w) − 1|
    double lambda_N = 0.0;
    bool common_fixed_point = false;
    double greedy_bound = 0.0;  // at n = 2000
    double L_upper = 0.0;
    double L_lower_linear = 0.0;  // ½‖p_A − p_B‖ min θ, can exceed L for wide angles
    double L_lower = 0.0;        // ‖p_A − p_B‖ sin(min θ / 2), always valid
    double center_distance = 0.0;
    double min_angle = 0.0;
};

struct BassExample {
    EuclidSet set;  // {1, A, A⁻¹, B, B⁻¹}
    EuclideanIsometry A, B;
    BassReport report;
};

// Two rotations of ℝ⁴ about different centres whose words up to length N all fix a point.
// Retries successive seeds (at most 16) until the eigenvalue margin exceeds 1e-6.
BassExample bass_example(int N, std::uint64_t seed, bool centred = false);

// [a, b] = a b a⁻¹ b⁻¹ for two nontrivial planar rotations with distinct centres.
EuclideanIsometry planar_commutator_check(const EuclideanIsometry& a, const EuclideanIsometry& b);

}  // namespace jd::euclid
