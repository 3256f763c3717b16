#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace hammerstein {

/// F(t,u) together with its first two u-derivatives.
struct Nonlinearity {
    using Fn = std::function<double(double, double)>;

    std::string name;
    Fn F;
    Fn dF;
    Fn d2F;
};

/// Registry lookup: identity, zero, sin_pi, square, cubic. Throws DomainError otherwise.
Nonlinearity nonlinearity(std::string_view name);

/// F(t,u) = sum_k coeffs[k] u^k (t-independent). Empty coefficients mean F = 0.
Nonlinearity polynomial_nonlinearity(std::vector<double> coeffs);

std::vector<std::string> nonlinearity_names();

}  // namespace hammerstein
