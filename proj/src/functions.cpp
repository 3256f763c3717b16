#include "hammerstein/functions.hpp"

#include <cmath>
#include <utility>

#include "hammerstein/errors.hpp"

namespace hammerstein {
namespace {

const std::vector<std::pair<std::string, ScalarFunction>>& scalar_registry() {
    static const std::vector<std::pair<std::string, ScalarFunction>> reg = {
        {"one", [](double) { return 1.0; }},
        {"zero", [](double) { return 0.0; }},
        {"identity", [](double s) { return s; }},
        {"square", [](double s) { return s * s; }},
        {"cos", [](double s) { return std::cos(s); }},
        {"sin", [](double s) { return std::sin(s); }},
        {"exp", [](double s) { return std::exp(s); }},
    };
    return reg;
}

const std::vector<std::pair<std::string, KernelFunction>>& kernel_registry() {
    static const std::vector<std::pair<std::string, KernelFunction>> reg = {
        {"one", [](double, double) { return 1.0; }},
        {"zero", [](double, double) { return 0.0; }},
        {"exp_prod", [](double s, double t) { return std::exp(s * t); }},
        {"cos_diff", [](double s, double t) { return std::cos(s - t); }},
        {"sum", [](double s, double t) { return s + t; }},
    };
    return reg;
}

template <class Registry>
std::vector<std::string> names_of(const Registry& reg) {
    std::vector<std::string> out;
    for (const auto& [name, fn] : reg) out.push_back(name);
    return out;
}

}  // namespace

ScalarFunction scalar_function(std::string_view name) {
    for (const auto& [key, fn] : scalar_registry())
        if (key == name) return fn;
    throw DomainError("unknown function '" + std::string(name) + "'");
}

std::vector<std::string> scalar_function_names() { return names_of(scalar_registry()); }

KernelFunction kernel_function(std::string_view name) {
    for (const auto& [key, fn] : kernel_registry())
        if (key == name) return fn;
    throw DomainError("unknown kernel function '" + std::string(name) + "'");
}

std::vector<std::string> kernel_function_names() { return names_of(kernel_registry()); }

}  // namespace hammerstein
