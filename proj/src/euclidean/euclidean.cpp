#include "jointdisp/euclidean/euclidean.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "jointdisp/core/errors.hpp"
#include "jointdisp/core/minimax.hpp"
#include "jointdisp/core/quantities.hpp"

namespace jd::euclid {

namespace {

constexpr double kKernelThresh = 1e-10;

// orthonormal basis of ker(I − R)
Matrix fixed_directions(const Matrix& R) {
    const int d = static_cast<int>(R.rows());
    Eigen::JacobiSVD<Matrix> svd(Matrix::Identity(d, d) - R, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int k = 0;
    for (int i = 0; i < d; ++i)
        if (sv(i) <= kKernelThresh) ++k;
    return svd.matrixV().rightCols(k);
}

}  // namespace

EuclideanIsometry EuclideanIsometry::translation(const Vector& t) {
    return {Matrix::Identity(t.size(), t.size()), t};
}

EuclideanIsometry EuclideanIsometry::linear(const Matrix& R) { return {R, Vector::Zero(R.rows())}; }

EuclideanIsometry EuclideanIsometry::about(const Matrix& R, const Vector& c) { return {R, c - R * c}; }

EuclideanGeometry::EuclideanGeometry(int dim) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim) throw InputError("Euclidean dimension must be in [1, 8]");
}

double EuclideanGeometry::hyperbolicity() const {
    return dim_ == 1 ? 0.0 : std::numeric_limits<double>::infinity();
}

EuclideanIsometry EuclideanGeometry::invert(const Isometry& g) const {
    Matrix rt = g.R.transpose();
    return {rt, -(rt * g.t)};
}

EuclideanIsometry EuclideanGeometry::identity() const { return EuclideanIsometry::linear(Matrix::Identity(dim_, dim_)); }

double EuclideanGeometry::translation_length(const Isometry& g) const {
    Matrix k = fixed_directions(g.R);
    if (k.cols() == 0) return 0.0;
    return (k.transpose() * g.t).norm();
}

std::string EuclideanGeometry::canonical_key(const Isometry& g) const {
    std::string key;
    char buf[32];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%lld,", std::llround(v * 1e9));
        key += buf;
    };
    for (int i = 0; i < g.R.rows(); ++i)
        for (int j = 0; j < g.R.cols(); ++j) put(g.R(i, j));
    key += "|";
    for (int i = 0; i < g.t.size(); ++i) put(g.t(i));
    return key;
}

void EuclideanGeometry::check_point(const Point& x) const {
    if (x.size() != dim_) throw InputError("point dimension does not match the geometry");
    if (!x.allFinite()) throw InputError("point has non-finite coordinates");
}

void EuclideanGeometry::check_isometry(const Isometry& g) const {
    if (g.R.rows() != dim_ || g.R.cols() != dim_ || g.t.size() != dim_)
        throw InputError("isometry dimension does not match the geometry");
    if ((g.R.transpose() * g.R - Matrix::Identity(dim_, dim_)).norm() > 1e-10)
        throw InputError("rotation part is not orthogonal");
    if (!g.t.allFinite()) throw InputError("translation has non-finite entries");
}

std::string EuclideanGeometry::describe(const Point& x) const {
    std::string s = "(";
    char buf[40];
    for (int i = 0; i < x.size(); ++i) {
        std::snprintf(buf, sizeof buf, i ? ", %.12g" : "%.12g", x(i));
        s += buf;
    }
    return s + ")";
}

namespace {

// least-squares point for the stacked systems (I − R_s) x = t_s
Vector stacked_solution(std::span<const EuclideanIsometry> set, int d) {
    Matrix a(d * set.size(), d);
    Vector b(d * set.size());
    for (std::size_t i = 0; i < set.size(); ++i) {
        a.block(i * d, 0, d, d) = Matrix::Identity(d, d) - set[i].R;
        b.segment(i * d, d) = set[i].t;
    }
    // absolute cutoff: a near-identity rotation part must not blow the solution up
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    Vector coef = svd.matrixU().transpose() * b;
    for (int i = 0; i < sv.size(); ++i) coef(i) = sv(i) > kKernelThresh ? coef(i) / sv(i) : 0.0;
    return svd.matrixV() * coef;
}

struct EuclidSpace {
    using Point = Vector;
    std::span<const EuclideanIsometry> set;
    int d;

    int dimension() const { return d; }

    void evaluate(const Vector& x, std::vector<double>& f, std::vector<Eigen::VectorXd>* grads) const {
        f.resize(set.size());
        if (grads) grads->resize(set.size());
        for (std::size_t i = 0; i < set.size(); ++i) {
            Vector r = set[i].R * x + set[i].t - x;
            f[i] = r.squaredNorm();
            if (grads) (*grads)[i] = 2.0 * (set[i].R.transpose() * r - r);
        }
    }

    Vector retract(const Vector& x, const Eigen::VectorXd& v) const { return x + v; }
    double distance(const Vector& x, const Vector& y) const { return (x - y).norm(); }
};

}  // namespace

MinimizeResult<Vector> EuclideanGeometry::minimize(std::span<const Isometry> set, const MinimizeOptions& opts,
                                                   std::optional<Point> start) const {
    Vector x0 = start ? *start : stacked_solution(set, dim_);
    double scale = 1.0 + x0.norm();
    for (const auto& g : set) scale += g.t.norm();
    MinimaxSettings st;
    st.max_iterations = opts.max_iterations;
    st.escape_radius = 1e6 * scale;
    st.max_step = 10.0 * scale;
    auto r = minimize_max(EuclidSpace{set, dim_}, x0, st);
    r.value = std::sqrt(std::max(r.value, 0.0));
    return r;
}

AffineFixedSet fixed_set(const EuclideanIsometry& g) {
    const int d = g.dim();
    AffineFixedSet out;
    out.directions = fixed_directions(g.R);
    Vector along = out.directions * (out.directions.transpose() * g.t);
    if (along.norm() > 1e-8 * (1.0 + g.t.norm())) return out;
    Vector x = stacked_solution(std::span<const EuclideanIsometry>(&g, 1), d);
    if ((g(x) - x).norm() > 1e-8) return out;
    out.base = x;
    return out;
}

std::optional<Vector> common_fixed_point(const EuclidSet& s) {
    const int d = s.geometry().dim();
    Vector x = stacked_solution(s.elements(), d);
    for (const auto& g : s.elements())
        if ((g(x) - x).norm() > 1e-8) return std::nullopt;
    return x;
}

MinimizeResult<Vector> euclid_minimal_displacement(const EuclidSet& s, const MinimizeOptions& opts) {
    return minimal_displacement(s, opts);
}

double greedy_escape_lower_bound(const EuclidSet& s, const Vector& x0, int n) {
    if (n < 1 || n > 10000) throw InputError("greedy escape length must be in [1, 10000]");
    const auto& el = s.elements();
    const auto& geo = s.geometry();
    double best = 0.0;
    for (int block = 1; block <= 3; ++block) {
        Vector x = x0;
        int done = 0;
        while (done < n) {
            int b = std::min(block, n - done);
            // all words of length b, first maximizer kept
            std::vector<int> idx(b, 0);
            Vector best_y = x;
            double best_d = -1.0;
            while (true) {
                Vector y = x;
                for (int i = 0; i < b; ++i) y = el[idx[i]](y);
                double dist = geo.distance(y, x0);
                if (dist > best_d) {
                    best_d = dist;
                    best_y = y;
                }
                int pos = 0;
                while (pos < b && ++idx[pos] == static_cast<int>(el.size())) idx[pos++] = 0;
                if (pos == b) break;
            }
            x = best_y;
            done += b;
        }
        best = std::max(best, geo.distance(x, x0) / n);
    }
    // the walk can circle a rotation forever; gⁿ is also in Sⁿ and escapes at rate ℓ(g)
    for (const auto& g : el) {
        Vector x = x0;
        for (int i = 0; i < n; ++i) x = g(x);
        best = std::max(best, geo.distance(x, x0) / n);
    }
    return best;
}

Matrix block_rotation(const Matrix& q, std::span<const double> angles) {
    const int d = static_cast<int>(q.rows());
    Matrix blocks = Matrix::Identity(d, d);
    for (std::size_t k = 0; k < angles.size(); ++k) {
        int i = 2 * static_cast<int>(k);
        double c = std::cos(angles[k]), s = std::sin(angles[k]);
        blocks(i, i) = c;
        blocks(i, i + 1) = -s;
        blocks(i + 1, i) = s;
        blocks(i + 1, i + 1) = c;
    }
    return q * blocks * q.transpose();
}

Matrix random_orthogonal(int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = n(rng);
    Eigen::HouseholderQR<Matrix> qr(m);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j)
        if (r(j, j) < 0) q.col(j) *= -1;
    return q;
}

namespace {

double eigen_one_margin(const Matrix& r) {
    Eigen::EigenSolver<Matrix> es(r, false);
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < es.eigenvalues().size(); ++i) m = std::min(m, std::abs(es.eigenvalues()(i) - 1.0));
    return m;
}

// min margin over all nontrivial reduced words of length ≤ depth; counts them
double word_margin(const Matrix& ra, const Matrix& rb, int depth, long long& count) {
    Matrix gens[4] = {ra, ra.transpose(), rb, rb.transpose()};
    const int inverse_of[4] = {1, 0, 3, 2};
    struct Node {
        Matrix m;
        int last;
    };
    std::vector<Node> layer{{Matrix::Identity(ra.rows(), ra.cols()), -1}};
    double margin = std::numeric_limits<double>::infinity();
    count = 0;
    for (int len = 1; len <= depth; ++len) {
        std::vector<Node> next;
        next.reserve(layer.size() * 3);
        for (const auto& nd : layer)
            for (int g = 0; g < 4; ++g) {
                if (nd.last >= 0 && g == inverse_of[nd.last]) continue;
                Matrix m = nd.m * gens[g];
                margin = std::min(margin, eigen_one_margin(m));
                ++count;
                next.push_back({m, g});
            }
        layer = std::move(next);
    }
    return margin;
}

double block_angles_min(std::span<const double> a) {
    double m = M_PI;
    for (double x : a) m = std::min(m, std::min(x, 2 * M_PI - x));
    return m;
}

}  // namespace

BassExample bass_example(int N, std::uint64_t seed, bool centred) {
    if (N < 1 || N > 10) throw InputError("bass_example depth must be in [1, 10]");
    EuclideanGeometry geo(4);
    for (std::uint64_t attempt = 0; attempt < 16; ++attempt) {
        std::uint64_t sd = seed + attempt;
        std::mt19937_64 rng(sd);
        std::uniform_real_distribution<double> ang(0.5, M_PI - 0.5);
        double angles[4] = {ang(rng), ang(rng), ang(rng), ang(rng)};
        Matrix qa = random_orthogonal(4, rng()), qb = random_orthogonal(4, rng());
        Matrix ra = block_rotation(qa, std::span<const double>(angles, 2));
        Matrix rb = block_rotation(qb, std::span<const double>(angles + 2, 2));
        std::normal_distribution<double> nd(0.0, 1.0);
        Vector dir(4);
        for (int i = 0; i < 4; ++i) dir(i) = nd(rng);
        Vector pa = Vector::Zero(4);
        Vector pb = centred ? Vector(Vector::Zero(4)) : Vector(2.0 * dir.normalized());

        long long count = 0;
        double margin = word_margin(ra, rb, N, count);
        if (!(margin > 1e-6)) continue;

        auto A = EuclideanIsometry::about(ra, pa), B = EuclideanIsometry::about(rb, pb);
        EuclidSet s = EuclidSet::deduplicated(geo, {geo.identity(), A, geo.invert(A), B, geo.invert(B)});
        BassReport rep;
        rep.seed_used = sd;
        rep.depth = N;
        rep.words_checked = count;
        rep.eigen_margin = margin;
        rep.lambda_N = lambda_k(s, N);
        rep.common_fixed_point = common_fixed_point(s).has_value();
        rep.greedy_bound = greedy_escape_lower_bound(s, pa, 2000);
        rep.L_upper = euclid_minimal_displacement(s).value;
        rep.center_distance = (pa - pb).norm();
        rep.min_angle = block_angles_min(angles);
        rep.L_lower_linear = 0.5 * rep.center_distance * rep.min_angle;
        rep.L_lower = rep.center_distance * std::sin(0.5 * rep.min_angle);
        return {s, A, B, rep};
    }
    throw PreconditionError("bass_example: eigenvalue margin failed for 16 consecutive seeds");
}

EuclideanIsometry planar_commutator_check(const EuclideanIsometry& a, const EuclideanIsometry& b) {
    if (a.dim() != 2 || b.dim() != 2) throw PreconditionError("planar_commutator_check needs d = 2");
    for (const auto* g : {&a, &b}) {
        if (g->R.determinant() < 0) throw PreconditionError("hypothesis violated: not a rotation");
        if ((g->R - Matrix::Identity(2, 2)).norm() <= 1e-12) throw PreconditionError("hypothesis violated: trivial rotation");
    }
    Vector ca = (Matrix::Identity(2, 2) - a.R).inverse() * a.t;
    Vector cb = (Matrix::Identity(2, 2) - b.R).inverse() * b.t;
    if ((ca - cb).norm() <= 1e-12) throw PreconditionError("hypothesis violated: rotations share their centre");
    EuclideanGeometry geo(2);
    auto c = geo.compose(geo.compose(a, b), geo.compose(geo.invert(a), geo.invert(b)));
    if ((c.R - Matrix::Identity(2, 2)).norm() > 1e-12)
        throw PreconditionError("commutator rotation part is not the identity");
    return c;
}

}  // namespace jd::euclid
