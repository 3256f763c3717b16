#include "hammerstein/dense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "hammerstein/errors.hpp"

namespace hammerstein {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw DomainError("matrix: expected " + std::to_string(rows_ * cols_) + " entries, got " +
                          std::to_string(data_.size()));
    for (double v : data_)
        if (!std::isfinite(v)) throw DomainError("matrix: entries must be finite");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
    return I;
}

std::vector<double> DenseMatrix::operator*(std::span<const double> x) const {
    if (x.size() != cols_) throw DomainError("matrix-vector product: size mismatch");
    std::vector<double> y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const double* r = data_.data() + i * cols_;
        double acc = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) acc += r[j] * x[j];
        y[i] = acc;
    }
    return y;
}

double DenseMatrix::norm_inf() const {
    double best = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (double v : row(i)) s += std::abs(v);
        best = std::max(best, s);
    }
    return best;
}

double norm_inf(std::span<const double> v) {
    double best = 0.0;
    for (double x : v) best = std::max(best, std::abs(x));
    return best;
}

std::vector<double> solve_dense(const DenseMatrix& M, std::span<const double> rhs) {
    const std::size_t n = M.rows();
    if (M.cols() != n) throw DomainError("solve_dense: matrix must be square");
    if (rhs.size() != n) throw DomainError("solve_dense: rhs length does not match matrix");
    if (n == 0) return {};

    const double threshold = std::numeric_limits<double>::epsilon() * M.norm_inf();
    std::vector<double> lu(M.entries().begin(), M.entries().end());
    std::vector<double> x(rhs.begin(), rhs.end());
    auto at = [&](std::size_t i, std::size_t j) -> double& { return lu[i * n + j]; };

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(at(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(at(i, k)) > best) {
                best = std::abs(at(i, k));
                p = i;
            }
        }
        if (!(best > threshold))
            throw SingularMatrixError("solve_dense: pivot " + std::to_string(best) +
                                      " below threshold at column " + std::to_string(k));
        if (p != k) {
            std::swap_ranges(lu.begin() + k * n, lu.begin() + (k + 1) * n, lu.begin() + p * n);
            std::swap(x[k], x[p]);
        }
        const double pivot = at(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = at(i, k) / pivot;
            if (m == 0.0) continue;
            at(i, k) = m;
            for (std::size_t j = k + 1; j < n; ++j) at(i, j) -= m * at(k, j);
            x[i] -= m * x[k];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        double acc = x[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= at(i, j) * x[j];
        x[i] = acc / at(i, i);
    }
    return x;
}

}  // namespace hammerstein
