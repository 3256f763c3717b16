#include "hammerstein/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hammerstein/adaptive.hpp"
#include "hammerstein/errors.hpp"
#include "hammerstein/gauss.hpp"

namespace hammerstein {
namespace {

// Below this distance the antiderivative terms take their limit value 0.
constexpr double kCancellationGuard = 1e-300;
// Gauss-Legendre points per panel for smooth kernels.
constexpr std::size_t kSmoothPoints = 20;
constexpr std::size_t kSmoothMomentPanels = 8;
// Panels whose midpoint lies at least this many panel lengths from s use the
// far-field series instead of differencing antiderivatives.
constexpr double kFarFieldRatio = 2.0;

// Antiderivatives in u = t - s of H and of H*u.
double antideriv0(const SingularKernel& k, double u) {
    const double au = std::abs(u);
    if (au < kCancellationGuard) return 0.0;
    if (k.kind() == KernelKind::Logarithmic) return u * (std::log(au) - 1.0);
    const double e = 1.0 - k.beta();
    const double p = std::pow(au, e) / e;
    return u < 0.0 ? -p : p;
}

double antideriv1(const SingularKernel& k, double u) {
    const double au = std::abs(u);
    if (au < kCancellationGuard) return 0.0;
    if (k.kind() == KernelKind::Logarithmic) {
        const double u2 = u * u;
        return 0.5 * u2 * std::log(au) - 0.25 * u2;
    }
    const double e = 2.0 - k.beta();
    return std::pow(au, e) / e;
}

void require_ordered(double c, double d) {
    if (!(c <= d))
        throw DomainError("moment: require c <= d, got c=" + std::to_string(c) +
                          " d=" + std::to_string(d));
}

// Composite Gauss-Legendre for a smooth kernel: int_c^d H(s,t) t^power dt.
double smooth_moment(const SingularKernel& k, double s, double c, double d, int power) {
    const auto& rule = gauss_legendre01(kSmoothPoints);
    const double len = (d - c) / kSmoothMomentPanels;
    long double total = 0.0L;
    for (std::size_t p = 0; p < kSmoothMomentPanels; ++p) {
        const double lo = c + static_cast<double>(p) * len;
        long double acc = 0.0L;
        for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
            const double t = lo + static_cast<double>(len * rule.nodes[g]);
            acc += rule.weights[g] * k(s, t) * (power == 0 ? 1.0 : t);
        }
        total += acc * len;
    }
    return static_cast<double>(total);
}

struct HatPair {
    double left;   // int H(s,t) (d - t)/len dt
    double right;  // int H(s,t) (t - c)/len dt
};

// Far-field expansion around the panel midpoint: H(s, m+v) as a power series in
// v/U with U = m - s, integrated term by term over |v| <= len/2.
HatPair far_field_hats(const SingularKernel& k, double U, double len) {
    const double aU = std::abs(U);
    const double sigma = U < 0.0 ? -1.0 : 1.0;
    const double q = len / (2.0 * aU);
    double even = 0.0;
    double odd = 0.0;
    double qk = 1.0;
    if (k.kind() == KernelKind::Logarithmic) {
        for (int n = 1; n <= 80; ++n) {
            qk *= q;
            if (n % 2 == 0)
                even += qk / (static_cast<double>(n) * (n + 1));
            else
                odd += qk / (static_cast<double>(n) * (n + 2));
            if (qk < 1e-18) break;
        }
        const double I0 = len * (std::log(aU) - even);
        const double I1 = 0.5 * len * len * sigma * odd;
        return {0.5 * I0 - I1 / len, 0.5 * I0 + I1 / len};
    }
    // (1+x)^{-beta} = sum c_n x^n
    const double beta = k.beta();
    double cn = 1.0;
    even = 1.0;
    for (int n = 1; n <= 120; ++n) {
        cn *= (-beta - (n - 1)) / n;
        qk *= q;
        const double term = cn * qk;
        if (n % 2 == 0)
            even += term / (n + 1);
        else
            odd += term / (n + 2);
        if (std::abs(term) < 1e-18) break;
    }
    const double amp = std::pow(aU, -beta);
    const double I0 = amp * len * even;
    const double I1 = amp * 0.5 * len * len * sigma * odd;
    return {0.5 * I0 - I1 / len, 0.5 * I0 + I1 / len};
}

HatPair singular_hats(const SingularKernel& k, double s, double c, double d) {
    const double len = d - c;
    const double U = (c + 0.5 * len) - s;
    if (std::abs(U) >= kFarFieldRatio * len) return far_field_hats(k, U, len);
    const double uc = c - s;
    const double ud = d - s;
    const double m0 = antideriv0(k, ud) - antideriv0(k, uc);
    const double m1 = antideriv1(k, ud) - antideriv1(k, uc);
    return {(ud * m0 - m1) / len, (m1 - uc * m0) / len};
}

// Hat integrals for a smooth kernel on [c, c+len], accumulated in long double.
HatPair smooth_hats(const SingularKernel& k, double s, double c, double len) {
    const auto& rule = gauss_legendre01(kSmoothPoints);
    long double left = 0.0L;
    long double right = 0.0L;
    for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
        const double t = c + static_cast<double>(len * rule.nodes[g]);
        const long double wh = rule.weights[g] * static_cast<long double>(k(s, t));
        left += wh * (1.0L - rule.nodes[g]);
        right += wh * rule.nodes[g];
    }
    return {static_cast<double>(left * len), static_cast<double>(right * len)};
}

// w_j(s) L(s, t_j) for every node of `fine`.
std::vector<double> fine_row(const HammersteinProblem& problem, const Grid& fine, double s) {
    auto row = product_weights(fine, problem.singular, s).w;
    for (std::size_t j = 0; j < row.size(); ++j) row[j] *= problem.L(s, fine.nodes[j]);
    return row;
}

double dot(const double* row, const std::vector<double>& v) {
    double acc = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) acc += row[j] * v[j];
    return acc;
}

double subtraction_K(const HammersteinProblem& problem, const SampledFunction& x, double s,
                     std::size_t gl_points) {
    const auto& F = problem.nonlin.F;
    auto g = [&](double t) { return problem.L(s, t) * F(t, x(t)); };
    const double gs = g(s);
    const PanelRule rule = graded_rule(problem.a, problem.b, s, gl_points);
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double t = rule.nodes[q];
        acc += rule.weights[q] * problem.singular(s, t) * (g(t) - gs);
    }
    return acc + gs * moment0(problem.singular, s, problem.a, problem.b);
}

void require_in_domain(double s, double a, double b) {
    if (!(s >= a && s <= b))
        throw DomainError("evaluation point " + std::to_string(s) + " outside [" +
                          std::to_string(a) + ", " + std::to_string(b) + "]");
}

}  // namespace

double moment0(const SingularKernel& kernel, double s, double c, double d) {
    require_ordered(c, d);
    if (c == d) return 0.0;
    if (kernel.kind() == KernelKind::Smooth) return smooth_moment(kernel, s, c, d, 0);
    return antideriv0(kernel, d - s) - antideriv0(kernel, c - s);
}

double moment1(const SingularKernel& kernel, double s, double c, double d) {
    require_ordered(c, d);
    if (c == d) return 0.0;
    if (kernel.kind() == KernelKind::Smooth) return smooth_moment(kernel, s, c, d, 1);
    // int H t dt = int H (u + s) du
    const double m1 = antideriv1(kernel, d - s) - antideriv1(kernel, c - s);
    return m1 + s * moment0(kernel, s, c, d);
}

WeightVector product_weights(const Grid& grid, const SingularKernel& kernel, double s) {
    require_in_domain(s, grid.a, grid.b);
    WeightVector out{s, std::vector<double>(grid.n + 1, 0.0)};
    const bool smooth = kernel.kind() == KernelKind::Smooth;
    for (std::size_t i = 0; i < grid.n; ++i) {
        const HatPair hp = smooth ? smooth_hats(kernel, s, grid.nodes[i], grid.h)
                                  : singular_hats(kernel, s, grid.nodes[i], grid.nodes[i + 1]);
        out.w[i] += hp.left;
        out.w[i + 1] += hp.right;
    }
    return out;
}

double apply_Tn(const Grid& grid, const HammersteinProblem& problem, const SampledFunction& x,
                std::span<const double> h_values, double s) {
    if (h_values.size() != grid.n + 1)
        throw DomainError("apply_Tn: expected " + std::to_string(grid.n + 1) + " values");
    const auto w = product_weights(grid, problem.singular, s).w;
    double acc = 0.0;
    for (std::size_t j = 0; j <= grid.n; ++j) {
        const double t = grid.nodes[j];
        const auto idx = x.index_of(t);
        if (!idx) throw DomainError("apply_Tn: grid node " + std::to_string(t) + " not sampled");
        acc += w[j] * problem.L(s, t) * problem.nonlin.dF(t, x.values()[*idx]) * h_values[j];
    }
    return acc;
}

void QuadratureConfig::validate() const {
    if (n_fine < 2) throw DomainError("quadrature: n_fine must be >= 2");
    if (gl_points < 2) throw DomainError("quadrature: gl_points must be >= 2");
}

const char* to_string(KMode mode) {
    return mode == KMode::FineProductRule ? "fine" : "subtraction";
}

PanelRule graded_rule(double a, double b, double s, std::size_t gl_points) {
    require_in_domain(s, a, b);
    const auto& rule = gauss_legendre01(gl_points);
    const double max_len = (b - a) / 8.0;
    const double min_dist = 1e-10 * (b - a);
    PanelRule out;

    auto add_panel = [&](double lo, double hi) {
        const double len = hi - lo;
        for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
            const double t = std::clamp(lo + static_cast<double>(len * rule.nodes[g]), a, b);
            out.nodes.push_back(t);
            out.weights.push_back(static_cast<double>(len * rule.weights[g]));
        }
    };
    // One side at a time: distances from s halve down to min_dist.
    for (const double dir : {1.0, -1.0}) {
        const double reach = dir > 0 ? b - s : s - a;
        if (reach <= 0.0) continue;
        double outer = reach;
        while (true) {
            const double inner = outer > 2.0 * min_dist ? 0.5 * outer : 0.0;
            const double len = outer - inner;
            const auto pieces = static_cast<std::size_t>(std::ceil(len / max_len));
            for (std::size_t p = 0; p < std::max<std::size_t>(pieces, 1); ++p) {
                const double d0 = inner + len * p / std::max<std::size_t>(pieces, 1);
                const double d1 = inner + len * (p + 1) / std::max<std::size_t>(pieces, 1);
                if (dir > 0)
                    add_panel(s + d0, s + d1);
                else
                    add_panel(s - d1, s - d0);
            }
            if (inner == 0.0) break;
            outer = inner;
        }
    }
    return out;
}

double eval_K(const HammersteinProblem& problem, const SampledFunction& x, double s,
              const QuadratureConfig& cfg) {
    cfg.validate();
    require_in_domain(s, problem.a, problem.b);
    if (cfg.mode == KMode::SingularitySubtraction) return subtraction_K(problem, x, s, cfg.gl_points);

    const Grid fine = make_grid(problem.a, problem.b, cfg.n_fine);
    const auto row = fine_row(problem, fine, s);
    std::vector<double> fv(fine.size());
    for (std::size_t j = 0; j < fine.size(); ++j)
        fv[j] = problem.nonlin.F(fine.nodes[j], x(fine.nodes[j]));
    return dot(row.data(), fv);
}

double eval_K_reference(const HammersteinProblem& problem, const ScalarFunction& x, double s,
                        double tol, std::size_t max_evals) {
    if (!(tol > 0.0)) throw DomainError("reference quadrature: tol must be positive");
    require_in_domain(s, problem.a, problem.b);
    // Integrate in u = t - s so the kernel never sees a rounded-away offset.
    auto integrand = [&](double u) {
        const double t = std::clamp(s + u, problem.a, problem.b);
        return problem.singular.at_offset(s, u) * problem.L(s, t) * problem.nonlin.F(t, x(t));
    };
    const double lo = problem.a - s;
    const double hi = problem.b - s;
    if (lo < 0.0 && hi > 0.0) {
        const auto left = integrate_adaptive(integrand, lo, 0.0, 0.5 * tol, max_evals);
        const auto right = integrate_adaptive(integrand, 0.0, hi, 0.5 * tol,
                                              max_evals - std::min(max_evals, left.evaluations));
        return left.value + right.value;
    }
    return integrate_adaptive(integrand, lo, hi, tol, max_evals).value;
}

KOperator::KOperator(const HammersteinProblem& problem, const QuadratureConfig& cfg,
                     std::vector<double> targets)
    : problem_(problem), cfg_(cfg), targets_(std::move(targets)) {
    cfg_.validate();
    for (double s : targets_) require_in_domain(s, problem_.a, problem_.b);
    if (cfg_.mode != KMode::FineProductRule) return;

    const Grid fine = make_grid(problem_.a, problem_.b, cfg_.n_fine);
    quad_nodes_ = fine.nodes;
    const std::size_t width = quad_nodes_.size();
    table_.resize(targets_.size() * width);
    for (std::size_t i = 0; i < targets_.size(); ++i) {
        const auto row = fine_row(problem_, fine, targets_[i]);
        std::copy(row.begin(), row.end(), table_.begin() + static_cast<std::ptrdiff_t>(i * width));
    }
}

std::vector<double> KOperator::apply(const SampledFunction& x) const {
    std::vector<double> out(targets_.size());
    if (cfg_.mode == KMode::SingularitySubtraction) {
        for (std::size_t i = 0; i < targets_.size(); ++i)
            out[i] = subtraction_K(problem_, x, targets_[i], cfg_.gl_points);
        return out;
    }
    std::vector<double> fv(quad_nodes_.size());
    for (std::size_t j = 0; j < quad_nodes_.size(); ++j)
        fv[j] = problem_.nonlin.F(quad_nodes_[j], x(quad_nodes_[j]));
    for (std::size_t i = 0; i < targets_.size(); ++i)
        out[i] = dot(table_.data() + i * quad_nodes_.size(), fv);
    return out;
}

}  // namespace hammerstein
