#include "jointdisp/core/geometry.hpp"

namespace jd {

std::string to_string(GeometryKind kind) {
    switch (kind) {
        case GeometryKind::tree_free: return "tree-free";
        case GeometryKind::tree_padic: return "tree-padic";
        case GeometryKind::h2: return "h2";
        case GeometryKind::euclidean: return "euclidean";
        case GeometryKind::pd_riemannian: return "pd-matrix";
        case GeometryKind::pd_finsler: return "pd-finsler";
    }
    return "unknown";
}

std::string to_string(MinimizeStatus status) {
    switch (status) {
        case MinimizeStatus::exact: return "exact";
        case MinimizeStatus::converged: return "converged";
        case MinimizeStatus::iteration_limit: return "iteration-limit";
        case MinimizeStatus::no_interior_minimum: return "no-interior-minimum";
    }
    return "unknown";
}

}  // namespace jd
