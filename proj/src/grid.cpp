#include "hammerstein/grid.hpp"

#include <cmath>
#include <string>

#include "hammerstein/errors.hpp"

namespace hammerstein {

Grid make_grid(double a, double b, std::size_t n) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        throw DomainError("grid: require finite a < b, got a=" + std::to_string(a) +
                          " b=" + std::to_string(b));
    }
    if (n == 0) throw DomainError("grid: subinterval count must be >= 1");

    Grid g;
    g.a = a;
    g.b = b;
    g.n = n;
    g.h = (b - a) / static_cast<double>(n);
    g.nodes.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j) g.nodes[j] = a + static_cast<double>(j) * g.h;
    g.nodes[n] = b;
    return g;
}

}  // namespace hammerstein
