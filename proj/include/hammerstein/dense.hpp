#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hammerstein {

/// Row-major dense matrix of doubles.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> entries() const noexcept { return data_; }

    std::vector<double> operator*(std::span<const double> x) const;

    /// max_i sum_j |a_ij|
    double norm_inf() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

double norm_inf(std::span<const double> v);

/// Solves M x = rhs by LU factorization with partial pivoting on a private copy of M.
/// Throws SingularMatrixError when a pivot magnitude falls below eps * ||M||_inf,
/// DomainError on shape mismatch.
std::vector<double> solve_dense(const DenseMatrix& M, std::span<const double> rhs);

}  // namespace hammerstein
