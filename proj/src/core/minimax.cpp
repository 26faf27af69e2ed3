#include "jointdisp/core/minimax.hpp"

#include <limits>

namespace jd {

namespace {

// Affine minimizer of ‖Σ a_i p_i‖ subject to Σ a_i = 1.
Eigen::VectorXd affine_min(const std::vector<Eigen::VectorXd>& pts, const std::vector<int>& idx) {
    const int m = static_cast<int>(idx.size());
    Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(m + 1, m + 1);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) sys(i, j) = pts[idx[i]].dot(pts[idx[j]]);
        sys(i, m) = 1.0;
        sys(m, i) = 1.0;
    }
    rhs(m) = 1.0;
    Eigen::VectorXd sol = sys.completeOrthogonalDecomposition().solve(rhs);
    return sol.head(m);
}

}  // namespace

Eigen::VectorXd min_norm_point(const std::vector<Eigen::VectorXd>& pts) {
    if (pts.empty()) return {};
    const int n = static_cast<int>(pts.size());
    if (n == 1) return pts[0];
    double pmax = 0.0;
    int first = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        double nn = pts[i].squaredNorm();
        pmax = std::max(pmax, nn);
        if (nn < best) {
            best = nn;
            first = i;
        }
    }
    const double tol = 1e-12 * std::max(pmax, 1e-300);
    std::vector<int> corral{first};
    std::vector<double> lam{1.0};
    Eigen::VectorXd x = pts[first];

    for (int major = 0; major < 1000; ++major) {
        int j = -1;
        double jmin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            double v = x.dot(pts[i]);
            if (v < jmin) {
                jmin = v;
                j = i;
            }
        }
        if (x.squaredNorm() - jmin <= tol) break;
        if (std::find(corral.begin(), corral.end(), j) != corral.end()) break;
        if (static_cast<int>(corral.size()) > x.size()) break;
        corral.push_back(j);
        lam.push_back(0.0);
        for (int minor = 0; minor < 1000; ++minor) {
            Eigen::VectorXd a = affine_min(pts, corral);
            bool interior = true;
            for (int i = 0; i < a.size(); ++i)
                if (a(i) <= 1e-14) interior = false;
            if (interior) {
                for (int i = 0; i < a.size(); ++i) lam[i] = a(i);
                break;
            }
            double theta = 1.0;
            for (int i = 0; i < a.size(); ++i) {
                if (a(i) <= 1e-14 && lam[i] - a(i) > 0) theta = std::min(theta, lam[i] / (lam[i] - a(i)));
            }
            std::vector<int> nc;
            std::vector<double> nl;
            for (int i = 0; i < a.size(); ++i) {
                double v = (1 - theta) * lam[i] + theta * a(i);
                if (v > 1e-14) {
                    nc.push_back(corral[i]);
                    nl.push_back(v);
                }
            }
            if (nc.empty()) {
                nc.push_back(j);
                nl.push_back(1.0);
            }
            corral = nc;
            lam = nl;
        }
        double s = 0.0;
        for (double v : lam) s += v;
        x = Eigen::VectorXd::Zero(pts[0].size());
        for (std::size_t i = 0; i < corral.size(); ++i) x += (lam[i] / s) * pts[corral[i]];
    }
    return x;
}

}  // namespace jd
