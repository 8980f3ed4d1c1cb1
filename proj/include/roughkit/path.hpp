#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "roughkit/grid.hpp"
#include "roughkit/linalg.hpp"

namespace roughkit {

/// Vector-valued path on a time grid: one d-dimensional value per grid point.
class GridPath {
public:
    GridPath(TimeGrid grid, std::size_t dim, std::vector<double> values)
        : grid_(std::move(grid)), dim_(dim), v_(std::move(values)) {
        if (dim_ == 0) throw ParameterError("GridPath: dimension must be positive");
        if (v_.size() != grid_.size() * dim_)
            throw DimensionError("GridPath: values size != n * dim");
        for (double x : v_)
            if (!std::isfinite(x)) throw ParameterError("GridPath: non-finite value");
    }

    static GridPath scalar(TimeGrid grid, std::vector<double> values) {
        return GridPath(std::move(grid), 1, std::move(values));
    }

    const TimeGrid& grid() const { return grid_; }
    std::size_t n() const { return grid_.size(); }
    std::size_t dim() const { return dim_; }

    std::span<const double> value(std::size_t i) const {
        return {v_.data() + i * dim_, dim_};
    }
    std::span<double> value(std::size_t i) { return {v_.data() + i * dim_, dim_}; }
    double scalar_value(std::size_t i) const { return v_[i * dim_]; }
    const std::vector<double>& raw() const { return v_; }
    std::vector<double>& raw() { return v_; }

    /// out = X(j) - X(i)
    void increment(std::size_t i, std::size_t j, double* out) const {
        const double* a = v_.data() + i * dim_;
        const double* b = v_.data() + j * dim_;
        for (std::size_t k = 0; k < dim_; ++k) out[k] = b[k] - a[k];
    }

    double increment_norm(std::size_t i, std::size_t j) const {
        const double* a = v_.data() + i * dim_;
        const double* b = v_.data() + j * dim_;
        double s = 0;
        for (std::size_t k = 0; k < dim_; ++k) {
            const double d = b[k] - a[k];
            s += d * d;
        }
        return std::sqrt(s);
    }

    double sup_norm() const {
        double m = 0;
        for (std::size_t i = 0; i < n(); ++i) m = std::max(m, norm2(value(i)));
        return m;
    }

private:
    TimeGrid grid_;
    std::size_t dim_;
    std::vector<double> v_;
};

/// Matrix-valued path (e.g. a Gubinelli derivative Y': values in L(R^cols, R^rows)).
class MatrixPath {
public:
    MatrixPath(TimeGrid grid, std::size_t rows, std::size_t cols, std::vector<double> values)
        : grid_(std::move(grid)), rows_(rows), cols_(cols), v_(std::move(values)) {
        if (rows_ == 0 || cols_ == 0) throw ParameterError("MatrixPath: zero dimension");
        if (v_.size() != grid_.size() * rows_ * cols_)
            throw DimensionError("MatrixPath: values size != n * rows * cols");
    }

    static MatrixPath zeros(TimeGrid grid, std::size_t rows, std::size_t cols) {
        const std::size_t n = grid.size();
        return MatrixPath(std::move(grid), rows, cols, std::vector<double>(n * rows * cols, 0.0));
    }

    const TimeGrid& grid() const { return grid_; }
    std::size_t n() const { return grid_.size(); }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t stride() const { return rows_ * cols_; }

    ConstMatView value(std::size_t i) const { return {v_.data() + i * stride(), rows_, cols_}; }
    MatView value(std::size_t i) { return {v_.data() + i * stride(), rows_, cols_}; }
    const std::vector<double>& raw() const { return v_; }
    std::vector<double>& raw() { return v_; }

    /// Operator-norm of the increment value(j) - value(i).
    double increment_op_norm(std::size_t i, std::size_t j) const {
        std::vector<double> d(stride());
        const double* a = v_.data() + i * stride();
        const double* b = v_.data() + j * stride();
        for (std::size_t k = 0; k < stride(); ++k) d[k] = b[k] - a[k];
        return spectral_norm({d.data(), rows_, cols_});
    }

    double sup_op_norm() const {
        double m = 0;
        for (std::size_t i = 0; i < n(); ++i) m = std::max(m, spectral_norm(value(i)));
        return m;
    }

private:
    TimeGrid grid_;
    std::size_t rows_, cols_;
    std::vector<double> v_;
};

} // namespace roughkit
