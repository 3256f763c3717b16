#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "hammerstein/grid.hpp"
#include "hammerstein/problem.hpp"
#include "hammerstein/quadrature.hpp"
#include "hammerstein/report.hpp"
#include "hammerstein/sampled_function.hpp"

namespace hammerstein {

// Linearize-then-discretize: Newton's method on phi - K(phi) = y in function space,
// with each linearized equation discretized by the product trapezoidal rule on the
// grid. Given phi^{(k)}, the nodal values x^{(k+1)} solve
//
//   (I - A^{(k)}) x^{(k+1)} = K(phi^{(k)})(t_i) + y(t_i) - A^{(k)} x^{(k)},
//   A^{(k)}(i,j) = w_j(t_i) L(t_i,t_j) dF(t_j, x^{(k)}_j),
//
// and phi^{(k+1)} off the grid comes from
//
//   phi^{(k+1)}(s) = sum_j w_j(s) L(s,t_j) dF(t_j, x^{(k)}_j) (x^{(k+1)}_j - x^{(k)}_j)
//                    + K(phi^{(k)})(s) + y(s).
//
// The limit solves phi - K(phi) = y up to the accuracy of K evaluation, whatever n is.

struct LDSettings {
    double tol = 1e-12;  ///< stop once ||x^{(k+1)} - x^{(k)}||_inf <= tol
    int max_iter = 30;
    int min_iter = 0;  ///< never stop on tol before this many steps
    QuadratureConfig quad;
    std::size_t sample_count = 201;
    bool record_timing = false;

    void validate() const;
};

/// Everything that stays fixed during one solve.
struct LDContext {
    Grid grid;
    std::vector<double> eval_points;  ///< nodes, K quadrature nodes and samples, sorted
    std::vector<std::size_t> node_index;
    std::vector<std::size_t> sample_index;
    std::vector<double> y_values;  ///< y on eval_points
    std::vector<double> coarse;    ///< eval_points x (n+1), entries w_j(s) L(s,t_j)
    KOperator K;
};

struct LDState {
    std::shared_ptr<const LDContext> ctx;
    SampledFunction iterate;    ///< phi^{(k)} on ctx->eval_points
    std::vector<double> nodal;  ///< x^{(k)}; equals iterate at the grid nodes exactly
    int k = 0;
};

/// phi0 defaults to y.
LDState ld_init(const HammersteinProblem& problem, const Grid& grid,
                const std::optional<ScalarFunction>& phi0, const LDSettings& settings);

/// One Newton step. Throws SingularMatrixError if I - A^{(k)} is numerically singular.
LDState ld_step(const LDState& state, const HammersteinProblem& problem);

/// phi^{(k)}(t_i) - K(phi^{(k)})(t_i) - y(t_i) at the grid nodes.
std::vector<double> ld_residual(const LDState& state);

/// Iterates to the step tolerance. A singular Newton matrix ends the solve with
/// status Singular; the report keeps every completed iteration.
SolveResult ld_solve(const HammersteinProblem& problem, const Grid& grid,
                     const LDSettings& settings,
                     const std::optional<ScalarFunction>& phi0 = std::nullopt);

}  // namespace hammerstein
