#include "hammerstein/newton_dl.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "hammerstein/errors.hpp"
#include "hammerstein/quadrature.hpp"

namespace hammerstein {
namespace {

std::vector<double> nonlinear_values(const DLState& st, const HammersteinProblem& problem) {
    std::vector<double> fx(st.X.size());
    for (std::size_t j = 0; j < fx.size(); ++j) fx[j] = problem.nonlin.F(st.grid.nodes[j], st.X[j]);
    return fx;
}

// Rows w_j(s) L(s,t_j) for a fixed point set.
std::vector<double> extension_table(const HammersteinProblem& problem, const Grid& grid,
                                    std::span<const double> points) {
    const std::size_t width = grid.n + 1;
    std::vector<double> table(points.size() * width);
    for (std::size_t p = 0; p < points.size(); ++p) {
        const auto w = product_weights(grid, problem.singular, points[p]).w;
        for (std::size_t j = 0; j < width; ++j)
            table[p * width + j] = w[j] * problem.L(points[p], grid.nodes[j]);
    }
    return table;
}

std::vector<double> extend_with(const std::vector<double>& table, const std::vector<double>& yv,
                                const std::vector<double>& fx) {
    const std::size_t width = fx.size();
    std::vector<double> out(yv.size());
    for (std::size_t p = 0; p < yv.size(); ++p) {
        double acc = 0.0;
        for (std::size_t j = 0; j < width; ++j) acc += table[p * width + j] * fx[j];
        out[p] = yv[p] + acc;
    }
    return out;
}

}  // namespace

void DLSettings::validate() const {
    if (!(tol > 0.0)) throw DomainError("dl settings: tol must be positive");
    if (max_iter < 1) throw DomainError("dl settings: max_iter must be >= 1");
    if (min_iter < 0 || min_iter > max_iter)
        throw DomainError("dl settings: min_iter must lie in [0, max_iter]");
    if (sample_count < 2) throw DomainError("dl settings: sample_count must be >= 2");
}

std::pair<DenseMatrix, std::vector<double>> dl_assemble(const HammersteinProblem& problem,
                                                        const Grid& grid) {
    if (grid.a != problem.a || grid.b != problem.b)
        throw DomainError("dl_assemble: grid and problem domains differ");
    const std::size_t m = grid.n + 1;
    DenseMatrix A(m, m, extension_table(problem, grid, grid.nodes));
    std::vector<double> Y(m);
    std::transform(grid.nodes.begin(), grid.nodes.end(), Y.begin(), problem.y);
    return {std::move(A), std::move(Y)};
}

DLState dl_init(const HammersteinProblem& problem, const Grid& grid,
                std::optional<std::vector<double>> X0) {
    auto [A, Y] = dl_assemble(problem, grid);
    std::vector<double> X = X0 ? std::move(*X0) : Y;
    if (X.size() != Y.size()) throw DomainError("dl_init: starting vector has wrong length");
    return DLState{grid, std::move(X), 0, std::move(A), std::move(Y)};
}

std::vector<double> dl_residual(const DLState& state, const HammersteinProblem& problem) {
    const auto AF = state.A * nonlinear_values(state, problem);
    std::vector<double> r(state.X.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = state.X[i] - AF[i] - state.Y[i];
    return r;
}

DLState dl_newton_step(const DLState& state, const HammersteinProblem& problem) {
    const std::size_t m = state.X.size();
    const auto r = dl_residual(state, problem);
    DenseMatrix J = DenseMatrix::identity(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double d = problem.nonlin.dF(state.grid.nodes[j], state.X[j]);
        for (std::size_t i = 0; i < m; ++i) J(i, j) -= state.A(i, j) * d;
    }
    std::vector<double> neg(m);
    for (std::size_t i = 0; i < m; ++i) neg[i] = -r[i];
    const auto delta = solve_dense(J, neg);

    DLState next = state;
    for (std::size_t i = 0; i < m; ++i) next.X[i] += delta[i];
    ++next.k;
    return next;
}

std::vector<double> dl_extend(const DLState& state, const HammersteinProblem& problem,
                              std::span<const double> points) {
    std::vector<double> yv(points.size());
    std::transform(points.begin(), points.end(), yv.begin(), problem.y);
    return extend_with(extension_table(problem, state.grid, points), yv,
                       nonlinear_values(state, problem));
}

SolveResult dl_solve(const HammersteinProblem& problem, const Grid& grid,
                     const DLSettings& settings, std::optional<std::vector<double>> X0) {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    settings.validate();

    SolveReport report;
    report.method = "dl";
    report.n = grid.n;

    DLState state = dl_init(problem, grid, std::move(X0));

    // Output points: samples plus nodes.
    const auto samples = make_grid(problem.a, problem.b, settings.sample_count - 1).nodes;
    std::vector<double> out_pts = samples;
    out_pts.insert(out_pts.end(), grid.nodes.begin(), grid.nodes.end());
    std::sort(out_pts.begin(), out_pts.end());
    out_pts.erase(std::unique(out_pts.begin(), out_pts.end()), out_pts.end());

    const auto table = extension_table(problem, grid, out_pts);
    std::vector<double> y_out(out_pts.size());
    std::transform(out_pts.begin(), out_pts.end(), y_out.begin(), problem.y);

    std::vector<std::size_t> sample_index;
    std::vector<double> exact_at_samples;
    for (double s : samples) {
        sample_index.push_back(static_cast<std::size_t>(
            std::lower_bound(out_pts.begin(), out_pts.end(), s) - out_pts.begin()));
        if (problem.exact) exact_at_samples.push_back((*problem.exact)(s));
    }

    auto true_error = [&](const std::vector<double>& psi) -> std::optional<double> {
        if (!problem.exact) return std::nullopt;
        double e = 0.0;
        for (std::size_t i = 0; i < sample_index.size(); ++i)
            e = std::max(e, std::abs(psi[sample_index[i]] - exact_at_samples[i]));
        return e;
    };
    auto elapsed = [&]() -> std::optional<double> {
        if (!settings.record_timing) return std::nullopt;
        return std::chrono::duration<double, std::milli>(clock::now() - start).count();
    };

    auto psi = extend_with(table, y_out, nonlinear_values(state, problem));
    report.records.push_back(
        {0, std::nullopt, norm_inf(dl_residual(state, problem)), true_error(psi), elapsed()});

    while (true) {
        DLState next;
        try {
            next = dl_newton_step(state, problem);
        } catch (const SingularMatrixError& e) {
            report.status = SolveStatus::Singular;
            report.message = e.what();
            break;
        }
        double step = 0.0;
        for (std::size_t i = 0; i < next.X.size(); ++i)
            step = std::max(step, std::abs(next.X[i] - state.X[i]));
        state = std::move(next);
        psi = extend_with(table, y_out, nonlinear_values(state, problem));
        report.records.push_back(
            {state.k, step, norm_inf(dl_residual(state, problem)), true_error(psi), elapsed()});
        if (step <= settings.tol && state.k >= settings.min_iter) {
            report.status = SolveStatus::Converged;
            break;
        }
        if (state.k >= settings.max_iter) {
            report.status = SolveStatus::MaxIter;
            break;
        }
    }
    return {SampledFunction(out_pts, std::move(psi)), std::move(report)};
}

}  // namespace hammerstein
