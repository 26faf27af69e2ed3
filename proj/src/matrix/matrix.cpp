#include "jointdisp/matrix/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "jointdisp/core/errors.hpp"
#include "jointdisp/core/minimax.hpp"
#include "jointdisp/core/power_set.hpp"
#include "jointdisp/core/quantities.hpp"

namespace jd::matrix {

std::optional<IntMatrix> IntMatrix::times(const IntMatrix& o) const {
    IntMatrix r{d, std::vector<std::int64_t>(d * d, 0)};
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            std::int64_t acc = 0;
            for (int k = 0; k < d; ++k) {
                std::int64_t p;
                if (__builtin_mul_overflow((*this)(i, k), o(k, j), &p)) return std::nullopt;
                if (__builtin_add_overflow(acc, p, &acc)) return std::nullopt;
            }
            r.a[i * d + j] = acc;
        }
    return r;
}

std::optional<std::int64_t> IntMatrix::det() const {
    // fraction-free elimination (Bareiss), exact for integer input
    std::vector<__int128> m(a.begin(), a.end());
    __int128 prev = 1;
    int sign = 1;
    for (int k = 0; k < d - 1; ++k) {
        if (m[k * d + k] == 0) {
            int p = k + 1;
            while (p < d && m[p * d + k] == 0) ++p;
            if (p == d) return 0;
            for (int j = 0; j < d; ++j) std::swap(m[k * d + j], m[p * d + j]);
            sign = -sign;
        }
        for (int i = k + 1; i < d; ++i)
            for (int j = k + 1; j < d; ++j) {
                __int128 v = m[i * d + j] * m[k * d + k] - m[i * d + k] * m[k * d + j];
                m[i * d + j] = v / prev;
            }
        prev = m[k * d + k];
    }
    __int128 r = sign * m[d * d - 1];
    if (r > std::numeric_limits<std::int64_t>::max() || r < std::numeric_limits<std::int64_t>::min())
        return std::nullopt;
    return static_cast<std::int64_t>(r);
}

CMatrix IntMatrix::to_complex() const {
    CMatrix m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = static_cast<double>((*this)(i, j));
    return m;
}

MatrixIsometry MatrixIsometry::from_int(int d, std::vector<std::int64_t> row_major) {
    if (d < 1 || d > kMaxDim) throw InputError("matrix dimension must be in [1, 6]");
    if (static_cast<int>(row_major.size()) != d * d) throw InputError("matrix needs d² entries");
    IntMatrix im{d, std::move(row_major)};
    return {im.to_complex(), im};
}

MatrixIsometry MatrixIsometry::from_real(const Eigen::MatrixXd& m) { return {m.cast<Complex>(), std::nullopt}; }

bool MatrixIsometry::is_real() const { return m.imag().cwiseAbs().maxCoeff() == 0.0; }

MatrixIsometry multiply(const MatrixIsometry& g, const MatrixIsometry& h) {
    MatrixIsometry r{g.m * h.m, std::nullopt};
    if (g.exact && h.exact) {
        // past int64 the product silently becomes a floating element
        r.exact = g.exact->times(*h.exact);
        if (r.exact) r.m = r.exact->to_complex();
    }
    return r;
}

MatrixIsometry inverse(const MatrixIsometry& g) {
    MatrixIsometry r{g.m.inverse(), std::nullopt};
    if (g.exact && g.exact->d == 2) {
        auto det = g.exact->det();
        if (det && (*det == 1 || *det == -1)) {
            const auto& e = *g.exact;
            r.exact = IntMatrix{2, {*det * e(1, 1), -*det * e(0, 1), -*det * e(1, 0), *det * e(0, 0)}};
        }
    } else if (g.exact) {
        // integer with det ±1 has an integer inverse; round and verify
        IntMatrix cand{g.exact->d, {}};
        bool ok = true;
        for (int i = 0; i < g.dim() && ok; ++i)
            for (int j = 0; j < g.dim(); ++j) {
                double v = r.m(i, j).real();
                if (std::abs(v) > 9e15) ok = false;
                cand.a.push_back(std::llround(v));
            }
        if (ok) {
            auto prod = g.exact->times(cand);
            bool id = prod.has_value();
            for (int i = 0; id && i < g.dim(); ++i)
                for (int j = 0; j < g.dim(); ++j) id = id && (*prod)(i, j) == (i == j ? 1 : 0);
            if (id) r.exact = cand;
        }
    }
    if (r.exact) r.m = r.exact->to_complex();
    return r;
}

PosDefPoint basepoint(int d) { return {CMatrix::Identity(d, d)}; }

PosDefPoint act(const MatrixIsometry& g, const PosDefPoint& p) {
    CMatrix y = g.m * p.x * g.m.adjoint();
    return {0.5 * (y + y.adjoint())};
}

namespace {

Eigen::VectorXd singular_values(const CMatrix& m) {
    if (m.rows() == 2) {
        // closed form: σ² are the roots of t² − ‖m‖_F² t + |det|²
        double f = m.squaredNorm();
        double det = std::abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
        double disc = std::sqrt(std::max(0.0, (f - 2 * det) * (f + 2 * det)));
        double s1 = std::sqrt((f + disc) / 2);
        Eigen::VectorXd s(2);
        s << s1, s1 > 0 ? det / s1 : 0.0;
        return s;
    }
    return Eigen::JacobiSVD<CMatrix>(m).singularValues();
}

Eigen::VectorXcd eigenvalues(const MatrixIsometry& g) {
    if (g.dim() == 2) {
        Complex tr, det;
        if (g.exact) {
            const auto& e = *g.exact;
            tr = static_cast<double>(e(0, 0) + e(1, 1));
            det = static_cast<double>(*e.det());
        } else {
            tr = g.m.trace();
            det = g.m.determinant();
        }
        Complex root = std::sqrt(tr * tr - 4.0 * det);
        // avoid cancellation: take the larger root first
        Complex l1 = std::abs(tr + root) >= std::abs(tr - root) ? (tr + root) / 2.0 : (tr - root) / 2.0;
        Complex l2 = std::abs(l1) > 0 ? det / l1 : Complex(0);
        Eigen::VectorXcd v(2);
        v << l1, l2;
        return v;
    }
    return Eigen::ComplexEigenSolver<CMatrix>(g.m, false).eigenvalues();
}

// inverse square root of a Hermitian positive definite matrix, and the square root
std::pair<CMatrix, CMatrix> sqrt_pair(const CMatrix& x) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(x);
    Eigen::VectorXd ev = es.eigenvalues();
    CMatrix q = es.eigenvectors();
    Eigen::VectorXd s = ev.cwiseSqrt(), si = s.cwiseInverse();
    return {q * si.cast<Complex>().asDiagonal() * q.adjoint(), q * s.cast<Complex>().asDiagonal() * q.adjoint()};
}

}  // namespace

double operator_norm(const CMatrix& m) { return singular_values(m)(0); }

double spectral_lambda(const MatrixIsometry& g) {
    double r = eigenvalues(g).cwiseAbs().maxCoeff();
    return std::log(r);
}

double pd_translation_length(const MatrixIsometry& g) {
    Eigen::VectorXcd ev = eigenvalues(g);
    double s = 0;
    for (int i = 0; i < ev.size(); ++i) {
        double l = std::log(std::abs(ev(i)));
        s += l * l;
    }
    return std::sqrt(s);
}

double pd_distance(const PosDefPoint& x, const PosDefPoint& y) {
    auto [xi, xs] = sqrt_pair(x.x);
    (void)xs;
    CMatrix m = xi * y.x * xi;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    double s = 0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        double mu = es.eigenvalues()(i);
        if (!(mu > 0)) throw InputError("pd_distance: point is not positive definite");
        double l = std::log(mu);
        s += l * l;
    }
    return 0.5 * std::sqrt(s);
}

double pinf_distance(const MatrixIsometry& g, const MatrixIsometry& h) {
    if (std::abs(g.m.determinant()) < 1e-300 || std::abs(h.m.determinant()) < 1e-300)
        throw InputError("pinf_distance: singular matrix");
    return std::log(operator_norm(g.m.inverse() * h.m));
}

double pinf_point_distance(const PosDefPoint& x, const PosDefPoint& y) {
    auto xi = sqrt_pair(x.x).first;
    auto ys = sqrt_pair(y.x).second;
    return std::log(operator_norm(xi * ys));
}

namespace {

// orthonormal basis (Frobenius) of traceless Hermitian matrices; real symmetric ones when real_only
std::vector<CMatrix> tangent_basis(int d, bool real_only) {
    std::vector<CMatrix> out;
    const double r2 = std::sqrt(0.5);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            CMatrix e = CMatrix::Zero(d, d);
            e(i, j) = e(j, i) = r2;
            out.push_back(e);
            if (!real_only) {
                CMatrix f = CMatrix::Zero(d, d);
                f(i, j) = Complex(0, r2);
                f(j, i) = Complex(0, -r2);
                out.push_back(f);
            }
        }
    // traceless diagonals: (1, …, 1, −k, 0, …)/√(k(k+1))
    for (int k = 1; k < d; ++k) {
        CMatrix e = CMatrix::Zero(d, d);
        double n = std::sqrt(double(k) * (k + 1));
        for (int i = 0; i < k; ++i) e(i, i) = 1.0 / n;
        e(k, k) = -double(k) / n;
        out.push_back(e);
    }
    return out;
}

CMatrix hermitian_exp(const CMatrix& v) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (v + v.adjoint()));
    Eigen::VectorXd e = es.eigenvalues().array().exp();
    return es.eigenvectors() * e.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

// Point stored as a frame a with x = a a*; a ↦ a e^{V/2} moves along the geodesic with speed ‖V‖/2.
template <Metric M>
struct MatrixSpace {
    using Point = CMatrix;
    std::span<const MatrixIsometry> set;
    std::vector<CMatrix> basis;

    int dimension() const { return static_cast<int>(basis.size()); }

    void evaluate(const CMatrix& a, std::vector<double>& f, std::vector<Eigen::VectorXd>* grads) const {
        f.resize(set.size());
        if (grads) grads->resize(set.size());
        CMatrix ai = a.inverse();
        for (std::size_t i = 0; i < set.size(); ++i) {
            CMatrix m = ai * set[i].m * a;
            Eigen::JacobiSVD<CMatrix> svd(m, grads ? Eigen::ComputeFullU | Eigen::ComputeFullV : 0);
            const auto& s = svd.singularValues();
            CMatrix g;
            if constexpr (M == Metric::riemannian) {
                double v = 0;
                for (int k = 0; k < s.size(); ++k) v += std::log(s(k)) * std::log(s(k));
                f[i] = v;
                if (grads) {
                    g = CMatrix::Zero(m.rows(), m.cols());
                    for (int k = 0; k < s.size(); ++k) {
                        auto u = svd.matrixU().col(k);
                        auto w = svd.matrixV().col(k);
                        g += std::log(s(k)) * (w * w.adjoint() - u * u.adjoint());
                    }
                }
            } else {
                f[i] = std::log(s(0));
                if (grads) {
                    auto u = svd.matrixU().col(0);
                    auto w = svd.matrixV().col(0);
                    g = 0.5 * (w * w.adjoint() - u * u.adjoint());
                }
            }
            if (grads) {
                Eigen::VectorXd gv(basis.size());
                // tangent vector V = 2 Σ v_k E_k has unit speed per unit coefficient
                for (std::size_t k = 0; k < basis.size(); ++k) gv(k) = 2.0 * (g * basis[k]).trace().real();
                (*grads)[i] = gv;
            }
        }
    }

    CMatrix retract(const CMatrix& a, const Eigen::VectorXd& v) const {
        CMatrix t = CMatrix::Zero(a.rows(), a.cols());
        for (std::size_t k = 0; k < basis.size(); ++k) t += v(k) * basis[k];
        return a * hermitian_exp(t);  // e^{V/2} with V = 2 Σ v_k E_k
    }

    double distance(const CMatrix& a, const CMatrix& b) const {
        Eigen::VectorXd s = Eigen::JacobiSVD<CMatrix>(a.inverse() * b).singularValues();
        return std::sqrt(s.array().log().square().sum());
    }
};

std::string quantized_key(const CMatrix& m) {
    double mx = m.cwiseAbs().maxCoeff();
    double scale = 1.0;
    while (scale < mx) scale *= 2;
    double step = 1e-10 * scale;
    std::string key = "F";
    char buf[48];
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof buf, ",%lld:%lld", std::llround(m(i, j).real() / step),
                          std::llround(m(i, j).imag() / step));
            key += buf;
        }
    return key;
}

}  // namespace

namespace {
constexpr double kNumericHorizon = 12.0;
}

template <Metric M>
MatrixGeometry<M>::MatrixGeometry(int dim) : dim_(dim) {
    if (dim < 2 || dim > kMaxDim) throw InputError("matrix dimension must be in [2, 6]");
}

template <Metric M>
double MatrixGeometry<M>::hyperbolicity() const {
    // P_2 is the hyperbolic plane scaled by 1/√2
    if (M == Metric::riemannian && dim_ == 2) return 2.0 / std::sqrt(2.0);
    return std::numeric_limits<double>::infinity();
}

template <Metric M>
double MatrixGeometry<M>::distance(const Point& x, const Point& y) const {
    return M == Metric::riemannian ? pd_distance(x, y) : pinf_point_distance(x, y);
}

template <Metric M>
MatrixIsometry MatrixGeometry<M>::identity() const {
    std::vector<std::int64_t> e(dim_ * dim_, 0);
    for (int i = 0; i < dim_; ++i) e[i * dim_ + i] = 1;
    return MatrixIsometry::from_int(dim_, e);
}

template <Metric M>
double MatrixGeometry<M>::translation_length(const Isometry& g) const {
    return M == Metric::riemannian ? pd_translation_length(g) : std::max(0.0, spectral_lambda(g));
}

template <Metric M>
std::string MatrixGeometry<M>::canonical_key(const Isometry& g) const {
    if (!g.exact) return quantized_key(g.m);
    std::string key = "E";
    for (auto v : g.exact->a) key += "," + std::to_string(v);
    return key;
}

template <Metric M>
void MatrixGeometry<M>::check_point(const Point& p) const {
    if (p.x.rows() != dim_ || p.x.cols() != dim_) throw InputError("point dimension does not match");
    if ((p.x - p.x.adjoint()).norm() > 1e-9 * (1 + p.x.norm())) throw InputError("point is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(p.x, Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues().minCoeff() > 0)) throw InputError("point is not positive definite");
    if (std::abs(es.eigenvalues().array().log().sum()) > 1e-9) throw InputError("point does not have det 1");
}

template <Metric M>
void MatrixGeometry<M>::check_isometry(const Isometry& g) const {
    if (g.dim() != dim_) throw InputError("matrix dimension does not match the geometry");
    if (!g.m.allFinite()) throw InputError("matrix has non-finite entries");
    if (g.exact) {
        auto det = g.exact->det();
        if (!det || (*det != 1 && *det != -1)) throw InputError("exact matrix must have determinant ±1");
        return;
    }
    if (std::abs(std::abs(g.m.determinant()) - 1.0) > 1e-9) throw InputError("matrix must have |det| = 1");
}

template <Metric M>
std::string MatrixGeometry<M>::describe(const Point& p) const {
    std::string s = "[";
    char buf[64];
    for (int i = 0; i < dim_; ++i) {
        s += i ? "; " : "";
        for (int j = 0; j < dim_; ++j) {
            Complex z = p.x(i, j);
            if (z.imag() == 0)
                std::snprintf(buf, sizeof buf, j ? ", %.10g" : "%.10g", z.real());
            else
                std::snprintf(buf, sizeof buf, j ? ", %.10g%+.10gi" : "%.10g%+.10gi", z.real(), z.imag());
            s += buf;
        }
    }
    return s + "]";
}

template <Metric M>
MinimizeResult<PosDefPoint> MatrixGeometry<M>::minimize(std::span<const Isometry> set, const MinimizeOptions& opts,
                                                        std::optional<Point> start) const {
    bool real = std::all_of(set.begin(), set.end(), [](const Isometry& g) { return g.is_real(); });
    CMatrix a0 = CMatrix::Identity(dim_, dim_);
    if (start) {
        check_point(*start);
        a0 = sqrt_pair(start->x).second;
        real = real && start->x.imag().cwiseAbs().maxCoeff() == 0.0;
    }
    MatrixSpace<M> space{set, tangent_basis(dim_, real)};
    MinimaxSettings st;
    st.max_iterations = opts.max_iterations;
    // beyond this distance a⁻¹ s a loses too many digits to compare displacements
    st.escape_radius = std::min(opts.escape_radius, kNumericHorizon);
    auto r = minimize_max(space, a0, st);
    CMatrix x = r.point * r.point.adjoint();
    x = 0.5 * (x + x.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(x, Eigen::EigenvaluesOnly);
    x *= std::exp(-es.eigenvalues().array().log().sum() / dim_);
    double v = M == Metric::riemannian ? std::sqrt(std::max(r.value, 0.0)) : std::max(r.value, 0.0);
    return {PosDefPoint{x}, v, r.status, r.iterations};
}

template class MatrixGeometry<Metric::riemannian>;
template class MatrixGeometry<Metric::finsler>;

PinfSet as_finsler(const PdSet& s) {
    return PinfSet(PinfGeometry(s.geometry().dim()), {s.elements().begin(), s.elements().end()});
}

MinimizeResult<PosDefPoint> pd_minimal_displacement(const PdSet& s, const MinimizeOptions& opts) {
    return minimal_displacement(s, opts);
}

JsrResult jsr_bracket(const PdSet& s, int n_max, std::size_t budget) {
    if (n_max < 1) throw InputError("jsr_bracket needs n_max >= 1");
    PowerTower<PdGeometry> tower(s, budget);
    JsrResult out;
    double lower = 0.0, upper = std::numeric_limits<double>::infinity();
    int lower_level = 1, upper_level = 1;
    for (int j = 1; j <= n_max; ++j) {
        const auto& level = tower.level(j);
        double max_norm = 0.0;
        for (const auto& g : level.elements()) {
            double lam = std::exp(spectral_lambda(g) / j);
            if (lam > lower) {
                lower = lam;
                lower_level = j;
            }
            max_norm = std::max(max_norm, operator_norm(g.m));
            out.pd_lambda = std::max(out.pd_lambda, pd_translation_length(g) / j);
        }
        out.words += level.size();
        // small outward pad keeps the endpoints certified against rounding in the norms
        double up = std::pow(max_norm, 1.0 / j) * (1 + 1e-12);
        if (up < upper) {
            upper = up;
            upper_level = j;
        }
        out.lower_by_level.push_back(lower * (1 - 1e-12));
        out.upper_by_level.push_back(upper);
    }
    out.bracket = {lower * (1 - 1e-12), upper, "spectral radius of a word of length " + std::to_string(lower_level),
                   "norm bound at length " + std::to_string(upper_level)};
    return out;
}

BochiGap bochi_gap(const PdSet& s, int k0, int n_max, std::size_t budget) {
    if (k0 < 1) throw InputError("bochi_gap needs k0 >= 1");
    auto jsr = jsr_bracket(s, std::max(n_max, k0), budget);
    BochiGap out;
    out.log_R_upper = std::log(jsr.bracket.upper);
    out.log_lambda_k0 = std::log(jsr.lower_by_level[k0 - 1]);
    out.gap = out.log_R_upper - out.log_lambda_k0;
    return out;
}

ComparisonSlacks comparison_check(const PdSet& s, int n_max, std::size_t budget) {
    const double d = s.geometry().dim();
    ComparisonSlacks out;
    auto jsr = jsr_bracket(s, n_max, budget);
    out.log_R = {std::log(jsr.bracket.lower), std::log(jsr.bracket.upper), jsr.bracket.lower_source,
                 jsr.bracket.upper_source};
    auto r = pd_minimal_displacement(s);
    out.status = r.status;
    if (r.status == MinimizeStatus::iteration_limit) {
        out.skipped = "minimization hit the iteration cap";
        return out;
    }
    // an escaping descent still leaves a valid upper value
    out.L = r.value;
    double ell_up = out.L;
    try {
        ell_up = std::min(ell_up, minimal_displacement(power_set(s, 2, budget)).value / 2);
    } catch (const BudgetError&) {
    }
    out.ell = {std::max(jsr.pd_lambda, out.log_R.lower), ell_up, "best normalized word length", "L(S²)/2"};
    // each inequality A ≤ B is tested as A_lower ≤ B_upper, so a negative slack refutes it
    out.slack1 = std::min(out.L - out.log_R.lower, std::sqrt(d) * std::log(std::sqrt(2 * d) * jsr.bracket.upper) - out.L);
    out.slack2 = std::min({out.ell.upper - (out.L / std::sqrt(d) - std::log(std::sqrt(d))), out.L - out.ell.lower,
                           out.ell.upper - out.log_R.lower, std::sqrt(d) * out.log_R.upper - out.ell.lower});
    return out;
}

}  // namespace jd::matrix
