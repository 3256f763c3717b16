#pragma once

#include <cstddef>
#include <functional>

namespace hammerstein {

struct AdaptiveResult {
    double value = 0.0;
    double error = 0.0;  ///< summed |K15 - G7| over the final panels
    std::size_t evaluations = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [lo, hi].
///
/// Bisects the panel with the largest error estimate until the summed estimate is
/// at most `tol`. Endpoints are never evaluated, so integrable endpoint
/// singularities are fine. Throws QuadratureError once `max_evals` is exceeded.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                  double tol, std::size_t max_evals = 1'000'000);

}  // namespace hammerstein
