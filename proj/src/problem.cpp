#include "hammerstein/problem.hpp"

#include <cmath>
#include <string>

#include "hammerstein/errors.hpp"
#include "hammerstein/quadrature.hpp"

namespace hammerstein {

HammersteinProblem make_problem(double a, double b, SingularKernel singular, KernelFunction L,
                                Nonlinearity nonlin, ScalarFunction y,
                                std::optional<ScalarFunction> exact) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw DomainError("problem domain must satisfy a < b");
    if (!L) throw DomainError("problem: smooth kernel factor L is missing");
    if (!nonlin.F || !nonlin.dF || !nonlin.d2F) throw DomainError("problem: nonlinearity incomplete");
    if (!y) throw DomainError("problem: right-hand side y is missing");

    constexpr int lattice = 33;
    for (int i = 0; i < lattice; ++i) {
        const double s = a + (b - a) * i / (lattice - 1);
        for (int j = 0; j < lattice; ++j) {
            const double t = a + (b - a) * j / (lattice - 1);
            if (!std::isfinite(L(s, t)))
                throw DomainError("problem: L(" + std::to_string(s) + ", " + std::to_string(t) +
                                  ") is not finite");
        }
    }
    return HammersteinProblem{a, b, std::move(singular), std::move(L), std::move(nonlin),
                              std::move(y), std::move(exact)};
}

HammersteinProblem manufactured_problem(double a, double b, SingularKernel singular,
                                        KernelFunction L, Nonlinearity nonlin,
                                        ScalarFunction exact, double quad_tol) {
    if (!(quad_tol > 0.0)) throw DomainError("manufactured problem: quad_tol must be positive");
    if (!exact) throw DomainError("manufactured problem: exact solution is missing");

    // y needs the finished problem for K; build with a placeholder first.
    auto problem = make_problem(a, b, std::move(singular), std::move(L), std::move(nonlin),
                                [](double) { return 0.0; }, exact);
    const HammersteinProblem frozen = problem;
    problem.y = [frozen, exact, quad_tol](double s) {
        return exact(s) - eval_K_reference(frozen, exact, s, quad_tol);
    };
    for (int i = 0; i <= 10; ++i) (void)problem.y(a + (b - a) * i / 10.0);
    return problem;
}

}  // namespace hammerstein
