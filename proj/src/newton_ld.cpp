#include "hammerstein/newton_ld.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "hammerstein/dense.hpp"
#include "hammerstein/errors.hpp"

namespace hammerstein {
namespace {

std::size_t position(const std::vector<double>& sorted, double v) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    return static_cast<std::size_t>(it - sorted.begin());
}

std::vector<double> sample_points(double a, double b, std::size_t count) {
    return make_grid(a, b, count - 1).nodes;
}

struct StepOutput {
    LDState next;
    double step_norm;
};

StepOutput step_with(const LDState& state, const HammersteinProblem& problem,
                     const std::vector<double>& Kv) {
    const LDContext& ctx = *state.ctx;
    const std::size_t m = ctx.grid.n + 1;
    const std::size_t width = m;
    const auto& x0 = state.nodal;

    std::vector<double> fk(m);
    for (std::size_t j = 0; j < m; ++j) fk[j] = problem.nonlin.dF(ctx.grid.nodes[j], x0[j]);

    DenseMatrix A(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        const double* row = ctx.coarse.data() + ctx.node_index[i] * width;
        for (std::size_t j = 0; j < m; ++j) A(i, j) = row[j] * fk[j];
    }
    const auto Ax0 = A * x0;
    std::vector<double> rhs(m);
    DenseMatrix M = DenseMatrix::identity(m);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t p = ctx.node_index[i];
        rhs[i] = Kv[p] + ctx.y_values[p] - Ax0[i];
        for (std::size_t j = 0; j < m; ++j) M(i, j) -= A(i, j);
    }
    const auto x1 = solve_dense(M, rhs);

    std::vector<double> d(m);
    for (std::size_t j = 0; j < m; ++j) d[j] = fk[j] * (x1[j] - x0[j]);

    const std::size_t npts = ctx.eval_points.size();
    std::vector<double> vals(npts);
    for (std::size_t p = 0; p < npts; ++p) {
        const double* row = ctx.coarse.data() + p * width;
        double acc = 0.0;
        for (std::size_t j = 0; j < m; ++j) acc += row[j] * d[j];
        vals[p] = acc + Kv[p] + ctx.y_values[p];
    }
    // The recovery formula reproduces x1 at the nodes up to roundoff; pin it exactly.
    for (std::size_t j = 0; j < m; ++j) vals[ctx.node_index[j]] = x1[j];

    double step = 0.0;
    for (std::size_t j = 0; j < m; ++j) step = std::max(step, std::abs(x1[j] - x0[j]));

    LDState next{state.ctx, state.iterate.with_values(std::move(vals)), x1, state.k + 1};
    return {std::move(next), step};
}

std::vector<double> residual_with(const LDState& state, const std::vector<double>& Kv) {
    const LDContext& ctx = *state.ctx;
    std::vector<double> r(state.nodal.size());
    for (std::size_t j = 0; j < r.size(); ++j) {
        const std::size_t p = ctx.node_index[j];
        r[j] = state.nodal[j] - Kv[p] - ctx.y_values[p];
    }
    return r;
}

}  // namespace

void LDSettings::validate() const {
    if (!(tol > 0.0)) throw DomainError("ld settings: tol must be positive");
    if (max_iter < 1) throw DomainError("ld settings: max_iter must be >= 1");
    if (min_iter < 0 || min_iter > max_iter)
        throw DomainError("ld settings: min_iter must lie in [0, max_iter]");
    if (sample_count < 2) throw DomainError("ld settings: sample_count must be >= 2");
    quad.validate();
}

LDState ld_init(const HammersteinProblem& problem, const Grid& grid,
                const std::optional<ScalarFunction>& phi0, const LDSettings& settings) {
    settings.validate();
    if (grid.a != problem.a || grid.b != problem.b)
        throw DomainError("ld_init: grid and problem domains differ");

    const auto samples = sample_points(problem.a, problem.b, settings.sample_count);
    std::vector<double> pts = grid.nodes;
    const auto fine = make_grid(problem.a, problem.b, settings.quad.n_fine).nodes;
    pts.insert(pts.end(), fine.begin(), fine.end());
    pts.insert(pts.end(), samples.begin(), samples.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    auto ctx = std::make_shared<LDContext>(
        LDContext{grid, pts, {}, {}, {}, {}, KOperator(problem, settings.quad, pts)});
    for (double t : grid.nodes) ctx->node_index.push_back(position(pts, t));
    for (double s : samples) ctx->sample_index.push_back(position(pts, s));

    ctx->y_values.resize(pts.size());
    std::transform(pts.begin(), pts.end(), ctx->y_values.begin(), problem.y);

    const std::size_t width = grid.n + 1;
    ctx->coarse.resize(pts.size() * width);
    for (std::size_t p = 0; p < pts.size(); ++p) {
        const auto w = product_weights(grid, problem.singular, pts[p]).w;
        for (std::size_t j = 0; j < width; ++j)
            ctx->coarse[p * width + j] = w[j] * problem.L(pts[p], grid.nodes[j]);
    }

    std::vector<double> vals;
    if (phi0) {
        vals.resize(pts.size());
        std::transform(pts.begin(), pts.end(), vals.begin(), *phi0);
    } else {
        vals = ctx->y_values;
    }
    std::vector<double> nodal(width);
    for (std::size_t j = 0; j < width; ++j) nodal[j] = vals[ctx->node_index[j]];

    LDState state{ctx, SampledFunction(pts, std::move(vals)), std::move(nodal), 0};
    return state;
}

LDState ld_step(const LDState& state, const HammersteinProblem& problem) {
    const auto Kv = state.ctx->K.apply(state.iterate);
    return step_with(state, problem, Kv).next;
}

std::vector<double> ld_residual(const LDState& state) {
    return residual_with(state, state.ctx->K.apply(state.iterate));
}

SolveResult ld_solve(const HammersteinProblem& problem, const Grid& grid,
                     const LDSettings& settings, const std::optional<ScalarFunction>& phi0) {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();

    SolveReport report;
    report.method = "ld";
    report.n = grid.n;
    report.n_fine = settings.quad.n_fine;
    report.mode = to_string(settings.quad.mode);

    LDState state = ld_init(problem, grid, phi0, settings);
    const LDContext& ctx = *state.ctx;

    std::vector<double> exact_at_samples;
    if (problem.exact) {
        for (std::size_t idx : ctx.sample_index)
            exact_at_samples.push_back((*problem.exact)(ctx.eval_points[idx]));
    }
    auto true_error = [&](const LDState& st) -> std::optional<double> {
        if (!problem.exact) return std::nullopt;
        double e = 0.0;
        const auto vals = st.iterate.values();
        for (std::size_t i = 0; i < ctx.sample_index.size(); ++i)
            e = std::max(e, std::abs(vals[ctx.sample_index[i]] - exact_at_samples[i]));
        return e;
    };
    auto elapsed = [&]() -> std::optional<double> {
        if (!settings.record_timing) return std::nullopt;
        return std::chrono::duration<double, std::milli>(clock::now() - start).count();
    };

    auto Kv = ctx.K.apply(state.iterate);
    report.records.push_back({0, std::nullopt, norm_inf(residual_with(state, Kv)), true_error(state),
                              elapsed()});

    while (true) {
        StepOutput out{state, 0.0};
        try {
            out = step_with(state, problem, Kv);
        } catch (const SingularMatrixError& e) {
            report.status = SolveStatus::Singular;
            report.message = e.what();
            break;
        }
        state = std::move(out.next);
        Kv = ctx.K.apply(state.iterate);
        report.records.push_back({state.k, out.step_norm, norm_inf(residual_with(state, Kv)),
                                  true_error(state), elapsed()});
        if (out.step_norm <= settings.tol && state.k >= settings.min_iter) {
            report.status = SolveStatus::Converged;
            break;
        }
        if (state.k >= settings.max_iter) {
            report.status = SolveStatus::MaxIter;
            break;
        }
    }
    return {state.iterate, std::move(report)};
}

}  // namespace hammerstein
