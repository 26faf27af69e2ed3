#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "jointdisp/core/geometry.hpp"

namespace jd {

// Point of least norm in the convex hull of pts (Wolfe's algorithm).
Eigen::VectorXd min_norm_point(const std::vector<Eigen::VectorXd>& pts);

struct MinimaxSettings {
    int max_iterations = 4000;
    double escape_radius = 40.0;
    double grad_tol = 1e-10;  // relative to the largest active gradient
    double value_tol = 1e-13; // relative floor for the active-set width
    double max_step = 10.0;   // longest step in the local frame
};

// Minimizes x ↦ max_i f_i(x) by ε-active steepest descent.
// Space must provide
//   int dimension() const;
//   void evaluate(const Point&, std::vector<double>& f, std::vector<Eigen::VectorXd>* grads) const;
//   Point retract(const Point&, const Eigen::VectorXd& step) const;
//   double distance(const Point&, const Point&) const;
// Returns the final iterate and max_i f_i there.
template <class Space>
MinimizeResult<typename Space::Point> minimize_max(const Space& space, typename Space::Point x,
                                                   const MinimaxSettings& st) {
    using Point = typename Space::Point;
    const Point start = x;
    std::vector<double> f;
    std::vector<Eigen::VectorXd> grads;
    auto fmax = [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); };

    space.evaluate(x, f, &grads);
    double F = fmax(f);
    double t = 1.0;
    MinimizeResult<Point> res{x, F, MinimizeStatus::iteration_limit, 0};
    std::vector<double> fy;
    std::vector<Eigen::VectorXd> active;
    int stall = 0;

    for (int it = 0; it < st.max_iterations; ++it) {
        res.iterations = it + 1;
        if (F <= 0.0) {
            res.status = MinimizeStatus::converged;
            break;
        }
        // Try the nested ε-active sets from wide to narrow and keep the step that gains most.
        // A wide band alone jams near a curved ridge; a narrow band alone zigzags across it.
        const double eps_min = st.value_tol * (1.0 + std::abs(F));
        bool stationary = false;
        bool found = false;
        Point best_y = x;
        double best_F = F, best_t = t;
        std::size_t prev_count = 0;
        for (double eps = 0.1 * (1.0 + std::abs(F));; eps *= 0.1) {
            const double e = std::max(eps, eps_min);
            active.clear();
            double gscale = 0.0;
            for (std::size_t i = 0; i < f.size(); ++i) {
                if (f[i] >= F - e) {
                    active.push_back(grads[i]);
                    gscale = std::max(gscale, grads[i].norm());
                }
            }
            const bool last = e <= eps_min;
            if (active.size() != prev_count || last) {
                prev_count = active.size();
                Eigen::VectorXd d = -min_norm_point(active);
                double nd = d.norm();
                if (nd <= st.grad_tol * gscale) {
                    if (last) stationary = true;
                } else {
                    // start no shorter than the step whose predicted gain would use up the band
                    double tt = std::min(std::max(t, e / (nd * nd)), st.max_step / nd);
                    for (int tries = 0; tries < 80; ++tries) {
                        Point y = space.retract(x, tt * d);
                        space.evaluate(y, fy, nullptr);
                        double Fy = fmax(fy);
                        if (std::isfinite(Fy) && Fy <= F - 0.25 * tt * nd * nd) {
                            if (Fy < best_F) {
                                best_F = Fy;
                                best_y = y;
                                best_t = tt;
                                found = true;
                            }
                            break;
                        }
                        tt *= 0.5;
                        if (tt * nd < 1e-17) break;
                    }
                }
            }
            if (last) break;
        }
        if (stationary || !found) {
            res.status = MinimizeStatus::converged;
            break;
        }
        t = 4.0 * best_t;
        stall = (F - best_F <= 1e-15 * std::abs(F)) ? stall + 1 : 0;
        x = best_y;
        space.evaluate(x, f, &grads);
        F = fmax(f);
        if (space.distance(start, x) > st.escape_radius) {
            res.status = MinimizeStatus::no_interior_minimum;
            break;
        }
        if (stall > 50) {
            res.status = MinimizeStatus::converged;
            break;
        }
    }
    res.point = x;
    res.value = F;
    return res;
}

}  // namespace jd
