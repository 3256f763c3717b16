#include "hammerstein/kernel.hpp"

#include <cmath>

#include "hammerstein/errors.hpp"

namespace hammerstein {

SingularKernel SingularKernel::logarithmic() {
    return SingularKernel(KernelKind::Logarithmic, 0.0, {}, "log");
}

SingularKernel SingularKernel::algebraic_power(double beta) {
    if (!(beta > 0.0 && beta < 1.0))
        throw DomainError("algebraic kernel exponent must lie in (0,1), got " + std::to_string(beta));
    return SingularKernel(KernelKind::AlgebraicPower, beta, {}, "power");
}

SingularKernel SingularKernel::smooth(KernelFunction H, std::string name) {
    if (!H) throw DomainError("smooth kernel requires a callable");
    return SingularKernel(KernelKind::Smooth, 0.0, std::move(H), std::move(name));
}

double SingularKernel::at_offset(double s, double u) const {
    switch (kind_) {
        case KernelKind::Logarithmic:
            return std::log(std::abs(u));
        case KernelKind::AlgebraicPower:
            return std::pow(std::abs(u), -beta_);
        case KernelKind::Smooth:
            return H_(s, s + u);
    }
    return 0.0;
}

double SingularKernel::operator()(double s, double t) const {
    switch (kind_) {
        case KernelKind::Logarithmic:
            return std::log(std::abs(s - t));
        case KernelKind::AlgebraicPower:
            return std::pow(std::abs(s - t), -beta_);
        case KernelKind::Smooth:
            return H_(s, t);
    }
    return 0.0;
}

}  // namespace hammerstein
