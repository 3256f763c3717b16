#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace hammerstein {

using ScalarFunction = std::function<double(double)>;
using KernelFunction = std::function<double(double, double)>;

// Named closed-form functions referenced from run configurations.
// Unknown names throw DomainError.

/// one, zero, identity, square, cos, sin, exp
ScalarFunction scalar_function(std::string_view name);
std::vector<std::string> scalar_function_names();

/// one, zero, exp_prod (e^{st}), cos_diff (cos(s-t)), sum (s+t)
KernelFunction kernel_function(std::string_view name);
std::vector<std::string> kernel_function_names();

inline ScalarFunction constant_function(double c) {
    return [c](double) { return c; };
}

}  // namespace hammerstein
