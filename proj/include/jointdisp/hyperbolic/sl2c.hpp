#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

namespace jd::h2 {

using CMatrix = Eigen::Matrix2cd;

// 2(x² + y² + z²) − 4xyz − 1 with x, y, z the half-traces of a, b, ab; equals ½ tr[a, b].
std::complex<double> trace_commutator(const CMatrix& a, const CMatrix& b);
// ½ tr(a b a⁻¹ b⁻¹) by direct multiplication.
std::complex<double> half_trace_commutator_direct(const CMatrix& a, const CMatrix& b);

enum class PairForm { common_unitary_form, common_triangular_form, loxodromic_commutator, indeterminate };
std::string to_string(PairForm f);

struct TrichotomyResult {
    PairForm form = PairForm::indeterminate;
    std::complex<double> commutator_trace;  // tr[a, b]
    CMatrix witness = CMatrix::Identity();  // invariant Hermitian form for the unitary case
    double residual = 0.0;
    std::string note;
};

// Requires tr a, tr b, tr ab real and in [−2, 2].
TrichotomyResult pair_trichotomy(const CMatrix& a, const CMatrix& b);

}  // namespace jd::h2
