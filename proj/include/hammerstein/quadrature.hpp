#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hammerstein/functions.hpp"
#include "hammerstein/grid.hpp"
#include "hammerstein/kernel.hpp"
#include "hammerstein/problem.hpp"
#include "hammerstein/sampled_function.hpp"

namespace hammerstein {

/// int_c^d H(s,t) dt. Closed form for the singular kinds; composite Gauss-Legendre
/// for smooth kernels. Requires c <= d.
double moment0(const SingularKernel& kernel, double s, double c, double d);

/// int_c^d H(s,t) t dt, same evaluation strategy as moment0.
double moment1(const SingularKernel& kernel, double s, double c, double d);

/// Product-trapezoidal weights w_{n,j}(s): the integral of H(s,.) against the
/// hat function of node j.
struct WeightVector {
    double s = 0.0;
    std::vector<double> w;
};

WeightVector product_weights(const Grid& grid, const SingularKernel& kernel, double s);

/// sum_j w_{n,j}(s) L(s,t_j) dF(t_j, x(t_j)) h_values[j]. Grid nodes must be points of x.
double apply_Tn(const Grid& grid, const HammersteinProblem& problem, const SampledFunction& x,
                std::span<const double> h_values, double s);

enum class KMode { FineProductRule, SingularitySubtraction };

struct QuadratureConfig {
    std::size_t n_fine = 4096;
    KMode mode = KMode::FineProductRule;
    std::size_t gl_points = 16;

    /// Throws DomainError unless n_fine >= 2 and gl_points >= 2.
    void validate() const;
};

const char* to_string(KMode mode);

/// K(x)(s) = int_a^b H(s,t) L(s,t) F(t, x(t)) dt.
///
/// FineProductRule: product-trapezoidal rule on a uniform grid of cfg.n_fine panels.
/// SingularitySubtraction: int H(s,t)(g(t) - g(s)) dt by composite Gauss-Legendre on
/// panels graded geometrically towards t = s, plus g(s) * moment0(s, a, b).
double eval_K(const HammersteinProblem& problem, const SampledFunction& x, double s,
              const QuadratureConfig& cfg);

/// K(x)(s) by adaptive Gauss-Kronrod split at t = s, to absolute tolerance tol.
/// Throws QuadratureError when max_evals integrand evaluations do not suffice.
double eval_K_reference(const HammersteinProblem& problem, const ScalarFunction& x, double s,
                        double tol, std::size_t max_evals = 1'000'000);

/// Nodes and weights of the composite rule used in subtraction mode for a given s:
/// int_a^b f(t) dt ~= sum_q weight[q] f(node[q]). Exposed for testing.
struct PanelRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
PanelRule graded_rule(double a, double b, double s, std::size_t gl_points);

/// Batched K evaluation on a fixed set of target points.
///
/// In FineProductRule mode the products w_j(s) L(s,t_j) are tabulated once per
/// target, so each apply() is a dense matrix-vector product. Results are bitwise
/// identical to calling eval_K at each target.
class KOperator {
public:
    KOperator(const HammersteinProblem& problem, const QuadratureConfig& cfg,
              std::vector<double> targets);

    /// Points at which apply() reads its argument (the fine grid in
    /// FineProductRule mode, empty otherwise).
    const std::vector<double>& quadrature_nodes() const noexcept { return quad_nodes_; }
    const std::vector<double>& targets() const noexcept { return targets_; }

    std::vector<double> apply(const SampledFunction& x) const;

private:
    HammersteinProblem problem_;
    QuadratureConfig cfg_;
    std::vector<double> targets_;
    std::vector<double> quad_nodes_;
    std::vector<double> table_;  // targets x quad nodes, row-major
};

}  // namespace hammerstein
