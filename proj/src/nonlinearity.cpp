#include "hammerstein/nonlinearity.hpp"

#include <cmath>
#include <numbers>

#include "hammerstein/errors.hpp"

namespace hammerstein {
namespace {

constexpr double pi = std::numbers::pi;

std::vector<Nonlinearity> build_registry() {
    return {
        {"identity", [](double, double u) { return u; }, [](double, double) { return 1.0; },
         [](double, double) { return 0.0; }},
        {"zero", [](double, double) { return 0.0; }, [](double, double) { return 0.0; },
         [](double, double) { return 0.0; }},
        {"sin_pi", [](double, double u) { return std::sin(pi * u); },
         [](double, double u) { return pi * std::cos(pi * u); },
         [](double, double u) { return -pi * pi * std::sin(pi * u); }},
        {"square", [](double, double u) { return u * u; }, [](double, double u) { return 2.0 * u; },
         [](double, double) { return 2.0; }},
        {"cubic", [](double, double u) { return u * u * u; },
         [](double, double u) { return 3.0 * u * u; }, [](double, double u) { return 6.0 * u; }},
    };
}

const std::vector<Nonlinearity>& registry() {
    static const std::vector<Nonlinearity> reg = build_registry();
    return reg;
}

// Horner evaluation of sum_k c[k] u^k.
double horner(const std::vector<double>& c, double u) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + *it;
    return acc;
}

std::vector<double> derivative(const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
    return d;
}

}  // namespace

Nonlinearity nonlinearity(std::string_view name) {
    for (const auto& nl : registry())
        if (nl.name == name) return nl;
    throw DomainError("unknown nonlinearity '" + std::string(name) + "'");
}

Nonlinearity polynomial_nonlinearity(std::vector<double> coeffs) {
    for (double c : coeffs)
        if (!std::isfinite(c)) throw DomainError("polynomial coefficients must be finite");
    auto d1 = derivative(coeffs);
    auto d2 = derivative(d1);
    return {"poly", [c = std::move(coeffs)](double, double u) { return horner(c, u); },
            [c = d1](double, double u) { return horner(c, u); },
            [c = std::move(d2)](double, double u) { return horner(c, u); }};
}

std::vector<std::string> nonlinearity_names() {
    std::vector<std::string> out;
    for (const auto& nl : registry()) out.push_back(nl.name);
    out.emplace_back("poly");
    return out;
}

}  // namespace hammerstein
