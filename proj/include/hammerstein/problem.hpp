#pragma once

#include <optional>

#include "hammerstein/functions.hpp"
#include "hammerstein/kernel.hpp"
#include "hammerstein/nonlinearity.hpp"

namespace hammerstein {

/// phi(s) - int_a^b H(s,t) L(s,t) F(t, phi(t)) dt = y(s),  s in [a,b].
struct HammersteinProblem {
    double a = 0.0;
    double b = 1.0;
    SingularKernel singular = SingularKernel::logarithmic();
    KernelFunction L;
    Nonlinearity nonlin;
    ScalarFunction y;
    std::optional<ScalarFunction> exact;
};

/// Validates the domain and spot-checks L for finiteness on a 33x33 lattice.
HammersteinProblem make_problem(double a, double b, SingularKernel singular, KernelFunction L,
                                Nonlinearity nonlin, ScalarFunction y,
                                std::optional<ScalarFunction> exact = std::nullopt);

/// Builds y := exact - K(exact) with K evaluated by the adaptive reference quadrature
/// to absolute tolerance quad_tol. Each call of the returned y runs that quadrature, so
/// callers that need y repeatedly should sample it once.
///
/// The quadrature is exercised at 11 equispaced points during construction; a
/// QuadratureError from there propagates.
HammersteinProblem manufactured_problem(double a, double b, SingularKernel singular,
                                        KernelFunction L, Nonlinearity nonlin,
                                        ScalarFunction exact, double quad_tol);

}  // namespace hammerstein
