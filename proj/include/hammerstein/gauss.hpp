#pragma once

#include <cstddef>
#include <vector>

namespace hammerstein {

/// Gauss-Legendre rule mapped to [0,1]: nodes ascending, weights sum to 1.
/// Nodes/weights are computed in long double and kept at that precision.
struct GaussRule {
    std::vector<long double> nodes;
    std::vector<long double> weights;
};

/// Cached per point count; thread-safe.
const GaussRule& gauss_legendre01(std::size_t points);

}  // namespace hammerstein
