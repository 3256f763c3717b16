#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hammerstein/functions.hpp"

namespace hammerstein {

/// Values on a sorted point set, piecewise-linear between adjacent points.
///
/// Evaluation at a stored point returns the stored value bit-for-bit.
/// Evaluation outside [points.front(), points.back()] throws DomainError.
class SampledFunction {
public:
    SampledFunction() = default;
    /// Points must be strictly increasing and match values in length.
    SampledFunction(std::vector<double> points, std::vector<double> values);

    static SampledFunction sample(std::vector<double> points, const ScalarFunction& f);

    double operator()(double p) const;

    std::optional<std::size_t> index_of(double p) const;

    std::span<const double> points() const noexcept { return points_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }

    /// Same points, new values (length must match).
    SampledFunction with_values(std::vector<double> values) const;

private:
    std::vector<double> points_;
    std::vector<double> values_;
};

}  // namespace hammerstein
