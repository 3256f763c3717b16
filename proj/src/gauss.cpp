#include "hammerstein/gauss.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "hammerstein/errors.hpp"

namespace hammerstein {
namespace {

GaussRule build(std::size_t m) {
    // Newton iteration on P_m from the Chebyshev-like initial guess.
    GaussRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    const long double pi = std::numbers::pi_v<long double>;
    for (std::size_t i = 0; i < (m + 1) / 2; ++i) {
        long double x = std::cos(pi * (i + 0.75L) / (m + 0.5L));
        long double dp = 0.0L;
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1.0L, p1 = x;
            for (std::size_t k = 2; k <= m; ++k) {
                const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0L);
            const long double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-19L) break;
        }
        // recompute derivative at the converged root
        long double p0 = 1.0L, p1 = x;
        for (std::size_t k = 2; k <= m; ++k) {
            const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = m * (x * p1 - p0) / (x * x - 1.0L);
        const long double w = 2.0L / ((1.0L - x * x) * dp * dp);
        // [-1,1] -> [0,1]
        rule.nodes[i] = 0.5L * (1.0L - x);
        rule.nodes[m - 1 - i] = 0.5L * (1.0L + x);
        rule.weights[i] = 0.5L * w;
        rule.weights[m - 1 - i] = 0.5L * w;
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_legendre01(std::size_t points) {
    if (points < 1) throw DomainError("Gauss-Legendre rule needs at least one point");
    static std::mutex mu;
    static std::map<std::size_t, GaussRule> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(points);
    if (it == cache.end()) it = cache.emplace(points, build(points)).first;
    return it->second;
}

}  // namespace hammerstein
