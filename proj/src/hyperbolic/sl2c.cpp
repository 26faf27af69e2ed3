#include "jointdisp/hyperbolic/sl2c.hpp"

#include <cmath>

#include "jointdisp/core/errors.hpp"

namespace jd::h2 {

namespace {

constexpr double kTol = 1e-9;

CMatrix inv2(const CMatrix& m) {
    CMatrix r;
    r << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return r / (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
}

bool real_in_band(std::complex<double> t) {
    return std::abs(t.imag()) <= kTol && t.real() >= -2 - kTol && t.real() <= 2 + kTol;
}

// Eigenvectors of a 2×2 matrix; both columns when it is scalar.
std::vector<Eigen::Vector2cd> eigenvectors(const CMatrix& m) {
    std::vector<Eigen::Vector2cd> out;
    if ((m - m(0, 0) * CMatrix::Identity()).norm() <= kTol) {
        out.push_back(Eigen::Vector2cd(1, 0));
        out.push_back(Eigen::Vector2cd(0, 1));
        return out;
    }
    std::complex<double> tr = m.trace(), det = m.determinant();
    std::complex<double> disc = std::sqrt(tr * tr - 4.0 * det);
    for (auto lam : {(tr + disc) / 2.0, (tr - disc) / 2.0}) {
        // (m − λ) v = 0
        Eigen::Vector2cd v;
        if (std::abs(m(0, 1)) + std::abs(m(0, 0) - lam) > std::abs(m(1, 0)) + std::abs(m(1, 1) - lam))
            v << m(0, 1), lam - m(0, 0);
        else
            v << lam - m(1, 1), m(1, 0);
        out.push_back(v.normalized());
    }
    return out;
}

bool shares_eigenvector(const CMatrix& a, const CMatrix& b) {
    for (const auto& v : eigenvectors(a)) {
        Eigen::Vector2cd w = b * v;
        if (std::abs(v(0) * w(1) - v(1) * w(0)) <= kTol * std::max(1.0, w.norm())) return true;
    }
    return false;
}

// Hermitian M = [[p, q + ir], [q − ir, s]] ↔ (p, q, r, s)
CMatrix hermitian(const Eigen::Vector4d& x) {
    CMatrix m;
    m << x(0), std::complex<double>(x(1), x(2)), std::complex<double>(x(1), -x(2)), x(3);
    return m;
}

Eigen::Vector4d hermitian_coords(const CMatrix& m) {
    return {m(0, 0).real(), m(0, 1).real(), m(0, 1).imag(), m(1, 1).real()};
}

}  // namespace

std::complex<double> trace_commutator(const CMatrix& a, const CMatrix& b) {
    std::complex<double> x = a.trace() / 2.0, y = b.trace() / 2.0, z = (a * b).trace() / 2.0;
    return 2.0 * (x * x + y * y + z * z) - 4.0 * x * y * z - 1.0;
}

std::complex<double> half_trace_commutator_direct(const CMatrix& a, const CMatrix& b) {
    return (a * b * inv2(a) * inv2(b)).trace() / 2.0;
}

std::string to_string(PairForm f) {
    switch (f) {
        case PairForm::common_unitary_form: return "common_unitary_form";
        case PairForm::common_triangular_form: return "common_triangular_form";
        case PairForm::loxodromic_commutator: return "loxodromic_commutator";
        case PairForm::indeterminate: return "indeterminate";
    }
    return "unknown";
}

TrichotomyResult pair_trichotomy(const CMatrix& a, const CMatrix& b) {
    for (const CMatrix* m : {&a, &b})
        if (std::abs(m->determinant() - 1.0) > 1e-9) throw InputError("pair_trichotomy: determinant must be 1");
    if (!real_in_band(a.trace()) || !real_in_band(b.trace()) || !real_in_band((a * b).trace()))
        throw PreconditionError("hypothesis violated: traces of a, b, ab must be real and in [-2, 2]");

    TrichotomyResult res;
    res.commutator_trace = 2.0 * trace_commutator(a, b);
    if (!real_in_band(res.commutator_trace)) {
        res.form = PairForm::loxodromic_commutator;
        return res;
    }
    if (shares_eigenvector(a, b)) {
        res.form = PairForm::common_triangular_form;
        return res;
    }
    // linear map M ↦ (a*Ma − M, b*Mb − M) on Hermitian forms
    Eigen::Matrix<double, 8, 4> L;
    for (int k = 0; k < 4; ++k) {
        Eigen::Vector4d e = Eigen::Vector4d::Zero();
        e(k) = 1.0;
        CMatrix m = hermitian(e);
        L.block<4, 1>(0, k) = hermitian_coords(a.adjoint() * m * a - m);
        L.block<4, 1>(4, k) = hermitian_coords(b.adjoint() * m * b - m);
    }
    Eigen::JacobiSVD<Eigen::Matrix<double, 8, 4>> svd(L, Eigen::ComputeFullV);
    Eigen::Vector4d x = svd.matrixV().col(3);
    CMatrix m = hermitian(x);
    if (m.trace().real() < 0) m = -m;
    double det = m.determinant().real();
    if (det <= kTol) {
        res.note = "no positive definite invariant form found";
        return res;
    }
    m /= std::sqrt(det);
    res.residual = std::max((a.adjoint() * m * a - m).norm(), (b.adjoint() * m * b - m).norm());
    res.witness = m;
    if (res.residual > 1e-8) {
        res.note = "invariant form residual above 1e-8";
        return res;
    }
    res.form = PairForm::common_unitary_form;
    return res;
}

}  // namespace jd::h2
