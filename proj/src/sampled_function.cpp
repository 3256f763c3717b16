#include "hammerstein/sampled_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hammerstein/errors.hpp"

namespace hammerstein {

SampledFunction::SampledFunction(std::vector<double> points, std::vector<double> values)
    : points_(std::move(points)), values_(std::move(values)) {
    if (points_.empty()) throw DomainError("sampled function needs at least one point");
    if (points_.size() != values_.size())
        throw DomainError("sampled function: " + std::to_string(points_.size()) + " points but " +
                          std::to_string(values_.size()) + " values");
    for (std::size_t i = 1; i < points_.size(); ++i)
        if (!(points_[i - 1] < points_[i]))
            throw DomainError("sampled function points must be strictly increasing");
}

SampledFunction SampledFunction::sample(std::vector<double> points, const ScalarFunction& f) {
    std::vector<double> values(points.size());
    std::transform(points.begin(), points.end(), values.begin(), f);
    return SampledFunction(std::move(points), std::move(values));
}

std::optional<std::size_t> SampledFunction::index_of(double p) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), p);
    if (it == points_.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - points_.begin());
}

double SampledFunction::operator()(double p) const {
    if (points_.empty() || !(p >= points_.front() && p <= points_.back()))
        throw DomainError("sampled function evaluated outside its point range at " +
                          std::to_string(p));
    auto it = std::lower_bound(points_.begin(), points_.end(), p);
    const auto i = static_cast<std::size_t>(it - points_.begin());
    if (*it == p) return values_[i];
    // points_[i-1] < p < points_[i]
    const double x0 = points_[i - 1];
    const double x1 = points_[i];
    const double lam = (p - x0) / (x1 - x0);
    return (1.0 - lam) * values_[i - 1] + lam * values_[i];
}

SampledFunction SampledFunction::with_values(std::vector<double> values) const {
    if (values.size() != points_.size())
        throw DomainError("sampled function: value count does not match point count");
    SampledFunction out;
    out.points_ = points_;
    out.values_ = std::move(values);
    return out;
}

}  // namespace hammerstein
