#pragma once

#include <string>

#include "hammerstein/functions.hpp"

namespace hammerstein {

enum class KernelKind { Logarithmic, AlgebraicPower, Smooth };

/// The weakly singular factor H(s,t) of a Hammerstein kernel.
///
/// Logarithmic:     H(s,t) = log|s-t|
/// AlgebraicPower:  H(s,t) = |s-t|^{-beta}, 0 < beta < 1
/// Smooth:          H is an arbitrary continuous callable (no singularity)
///
/// The two singular kinds have closed-form moments (see quadrature.hpp).
class SingularKernel {
public:
    static SingularKernel logarithmic();
    /// Throws DomainError unless 0 < beta < 1.
    static SingularKernel algebraic_power(double beta);
    static SingularKernel smooth(KernelFunction H, std::string name = "smooth");

    KernelKind kind() const noexcept { return kind_; }
    double beta() const noexcept { return beta_; }
    const std::string& name() const noexcept { return name_; }

    /// H(s,t). Singular kinds return -inf / +inf at s == t.
    double operator()(double s, double t) const;
    /// H(s, s + u), taking |u| as given rather than recomputing it from t.
    double at_offset(double s, double u) const;

    /// True when H(s,t) depends only on |s-t|.
    bool translation_invariant() const noexcept { return kind_ != KernelKind::Smooth; }

private:
    SingularKernel(KernelKind kind, double beta, KernelFunction H, std::string name)
        : kind_(kind), beta_(beta), H_(std::move(H)), name_(std::move(name)) {}

    KernelKind kind_;
    double beta_;
    KernelFunction H_;
    std::string name_;
};

}  // namespace hammerstein
