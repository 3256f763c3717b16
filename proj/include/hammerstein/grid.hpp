#pragma once

#include <cstddef>
#include <vector>

namespace hammerstein {

/// Uniform partition a = t_0 < t_1 < ... < t_n = b.
struct Grid {
    double a = 0.0;
    double b = 1.0;
    std::size_t n = 1;
    double h = 1.0;
    std::vector<double> nodes;

    std::size_t size() const noexcept { return nodes.size(); }
};

/// Throws DomainError unless a < b and n >= 1. nodes[0] == a and nodes[n] == b exactly.
Grid make_grid(double a, double b, std::size_t n);

}  // namespace hammerstein
