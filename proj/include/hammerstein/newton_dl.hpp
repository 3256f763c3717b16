#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hammerstein/dense.hpp"
#include "hammerstein/grid.hpp"
#include "hammerstein/problem.hpp"
#include "hammerstein/report.hpp"

namespace hammerstein {

// Discretize-then-linearize baseline: product integration first turns the equation
// into X - A F(X) = Y with A(i,j) = w_j(t_i) L(t_i,t_j), then finite-dimensional
// Newton solves that system. The limit is the discrete solution psi_n, so the
// attainable accuracy is bounded by the grid.

struct DLSettings {
    double tol = 1e-12;
    int max_iter = 30;
    int min_iter = 0;
    std::size_t sample_count = 201;
    bool record_timing = false;

    void validate() const;
};

struct DLState {
    Grid grid;
    std::vector<double> X;  ///< nodal values of psi_n
    int k = 0;
    DenseMatrix A;          ///< independent of X and k
    std::vector<double> Y;  ///< y at the nodes
};

std::pair<DenseMatrix, std::vector<double>> dl_assemble(const HammersteinProblem& problem,
                                                        const Grid& grid);

/// X0 defaults to Y.
DLState dl_init(const HammersteinProblem& problem, const Grid& grid,
                std::optional<std::vector<double>> X0 = std::nullopt);

/// X - A F(X) - Y
std::vector<double> dl_residual(const DLState& state, const HammersteinProblem& problem);

/// Solves (I - A diag(dF(t_j, X_j))) delta = -residual and returns X + delta.
DLState dl_newton_step(const DLState& state, const HammersteinProblem& problem);

/// Nystrom extension psi(s) = y(s) + sum_j w_j(s) L(s,t_j) F(t_j, X_j).
std::vector<double> dl_extend(const DLState& state, const HammersteinProblem& problem,
                              std::span<const double> points);

/// Newton to tolerance from X0 (default Y); the returned function is the Nystrom
/// extension sampled on the output grid together with the nodes.
SolveResult dl_solve(const HammersteinProblem& problem, const Grid& grid,
                     const DLSettings& settings,
                     std::optional<std::vector<double>> X0 = std::nullopt);

}  // namespace hammerstein
