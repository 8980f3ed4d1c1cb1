#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "roughkit/grid.hpp"
#include "roughkit/linalg.hpp"
#include "roughkit/path.hpp"

namespace roughkit {

/// Strictly increasing subsequence of grid indices.
using Partition = std::vector<std::size_t>;

inline void check_partition(const Partition& pi, std::size_t n) {
    if (pi.size() < 2) throw ParameterError("partition needs at least 2 points");
    for (std::size_t k = 0; k < pi.size(); ++k) {
        if (pi[k] >= n) throw IndexError("partition index out of range");
        if (k > 0 && !(pi[k] > pi[k - 1]))
            throw ParameterError("partition indices must be strictly increasing");
    }
}

namespace detail {

// Row offsets of the packed upper triangle (diagonal included).
// Entry (i, j), i <= j, lives at row_offset(i, n) + (j - i); row i is contiguous in j.
inline std::size_t tri_size(std::size_t n) { return n * (n + 1) / 2; }
inline std::size_t row_offset(std::size_t i, std::size_t n) {
    return i * n - i * (i - 1) / 2;
}

inline void check_pair(std::size_t i, std::size_t j, std::size_t n) {
    if (i >= n || j >= n) throw IndexError("field index out of range");
    if (i > j) throw IndexError("field requires i <= j");
}

inline void check_triple(std::size_t i, std::size_t j, std::size_t k, std::size_t n) {
    if (k >= n) throw IndexError("field index out of range");
    if (!(i <= j && j <= k)) throw IndexError("delta requires i <= j <= k");
}

} // namespace detail

/// Scalar two-parameter field A(i, j) on the simplex {i <= j} of a grid.
/// Diagonal entries are identically zero by construction.
class ScalarField2 {
public:
    explicit ScalarField2(TimeGrid grid)
        : grid_(std::move(grid)), n_(grid_.size()), a_(detail::tri_size(n_), 0.0) {}

    static ScalarField2 from_function(TimeGrid grid,
                                      const std::function<double(double, double)>& f) {
        ScalarField2 out(std::move(grid));
        for (std::size_t i = 0; i < out.n_; ++i)
            for (std::size_t j = i + 1; j < out.n_; ++j)
                out.set(i, j, f(out.grid_.t(i), out.grid_.t(j)));
        return out;
    }

    /// chi(i, j) = |f(j) - f(i)| (Euclidean); subadditive by the triangle inequality.
    static ScalarField2 from_path_distance(const GridPath& f) {
        ScalarField2 out(f.grid());
        for (std::size_t i = 0; i < out.n_; ++i)
            for (std::size_t j = i + 1; j < out.n_; ++j)
                out.set(i, j, f.increment_norm(i, j));
        return out;
    }

    const TimeGrid& grid() const { return grid_; }
    std::size_t n() const { return n_; }

    double at(std::size_t i, std::size_t j) const {
        detail::check_pair(i, j, n_);
        return a_[detail::row_offset(i, n_) + (j - i)];
    }
    void set(std::size_t i, std::size_t j, double v) {
        detail::check_pair(i, j, n_);
        if (i == j) {
            if (v != 0.0) throw ParameterError("diagonal entries must be zero");
            return;
        }
        a_[detail::row_offset(i, n_) + (j - i)] = v;
    }

    /// Contiguous row i: entries (i, i), (i, i+1), ..., (i, n-1).
    std::span<const double> row(std::size_t i) const {
        return {a_.data() + detail::row_offset(i, n_), n_ - i};
    }
    std::span<double> row_mut(std::size_t i) {
        return {a_.data() + detail::row_offset(i, n_), n_ - i};
    }

    /// delta A(i,j,k) = A(i,k) - A(i,j) - A(j,k) for i <= j <= k.
    double delta(std::size_t i, std::size_t j, std::size_t k) const {
        detail::check_triple(i, j, k, n_);
        return at(i, k) - at(i, j) - at(j, k);
    }

    double min_entry() const {
        double m = 0;
        for (double v : a_) m = std::min(m, v);
        return m;
    }
    double max_entry() const {
        double m = 0;
        for (double v : a_) m = std::max(m, v);
        return m;
    }

    bool nonnegative(double tol = 0.0) const { return min_entry() >= -tol; }

    /// chi(i,k)^rho <= chi(i,j)^rho + chi(j,k)^rho on all triples (exhaustive for
    /// n <= 64, deterministic sampling above).
    bool rho_subadditive(double rho, double tol = 1e-9) const;
    bool subadditive(double tol = 1e-9) const { return rho_subadditive(1.0, tol); }

    ScalarField2 pow(double r) const {
        ScalarField2 out(grid_);
        for (std::size_t k = 0; k < a_.size(); ++k) out.a_[k] = std::pow(a_[k], r);
        for (std::size_t i = 0; i < n_; ++i) out.a_[detail::row_offset(i, n_)] = 0.0;
        return out;
    }

    const std::vector<double>& raw() const { return a_; }
    std::vector<double>& raw() { return a_; }

private:
    TimeGrid grid_;
    std::size_t n_;
    std::vector<double> a_;
};

/// Tensor- or vector-valued two-parameter field; entries are rows x cols blocks
/// (cols == 1 for vector-valued). Diagonal blocks are zero.
class TensorField2 {
public:
    TensorField2(TimeGrid grid, std::size_t rows, std::size_t cols)
        : grid_(std::move(grid)),
          n_(grid_.size()),
          rows_(rows),
          cols_(cols),
          a_(detail::tri_size(n_) * rows * cols, 0.0) {
        if (rows == 0 || cols == 0) throw ParameterError("TensorField2: zero dimension");
    }

    /// A(i, j) = f(j) - f(i): the additive field of path increments.
    static TensorField2 from_path_increments(const GridPath& f) {
        TensorField2 out(f.grid(), f.dim(), 1);
        for (std::size_t i = 0; i < out.n_; ++i)
            for (std::size_t j = i + 1; j < out.n_; ++j)
                f.increment(i, j, out.entry_mut(i, j).p);
        return out;
    }

    const TimeGrid& grid() const { return grid_; }
    std::size_t n() const { return n_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t stride() const { return rows_ * cols_; }

    ConstMatView entry(std::size_t i, std::size_t j) const {
        detail::check_pair(i, j, n_);
        return {a_.data() + (detail::row_offset(i, n_) + (j - i)) * stride(), rows_, cols_};
    }
    MatView entry_mut(std::size_t i, std::size_t j) {
        detail::check_pair(i, j, n_);
        return {a_.data() + (detail::row_offset(i, n_) + (j - i)) * stride(), rows_, cols_};
    }

    /// out = A(i,k) - A(i,j) - A(j,k), flat block of size stride().
    void delta(std::size_t i, std::size_t j, std::size_t k, double* out) const {
        detail::check_triple(i, j, k, n_);
        const double* ik = entry(i, k).p;
        const double* ij = entry(i, j).p;
        const double* jk = entry(j, k).p;
        for (std::size_t m = 0; m < stride(); ++m) out[m] = ik[m] - ij[m] - jk[m];
    }

    double delta_norm(std::size_t i, std::size_t j, std::size_t k) const {
        detail::check_triple(i, j, k, n_);
        const double* ik = entry(i, k).p;
        const double* ij = entry(i, j).p;
        const double* jk = entry(j, k).p;
        double s = 0;
        for (std::size_t m = 0; m < stride(); ++m) {
            const double d = ik[m] - ij[m] - jk[m];
            s += d * d;
        }
        return std::sqrt(s);
    }

    /// Entrywise Frobenius norm as a scalar field.
    ScalarField2 norm_field() const {
        ScalarField2 out(grid_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                out.set(i, j, frobenius(entry(i, j).p, stride()));
        return out;
    }

    const std::vector<double>& raw() const { return a_; }
    std::vector<double>& raw() { return a_; }

private:
    TimeGrid grid_;
    std::size_t n_;
    std::size_t rows_, cols_;
    std::vector<double> a_;
};

/// Superadditive nonnegative field: omega(s,t) + omega(t,u) <= omega(s,u).
class Control {
public:
    explicit Control(ScalarField2 field, double tol = 1e-9) : w_(std::move(field)) {
        validate(tol);
    }

    const ScalarField2& field() const { return w_; }
    double at(std::size_t i, std::size_t j) const { return w_.at(i, j); }

    /// Checks nonnegativity and superadditivity (exhaustive n <= 64, sampled above).
    void validate(double tol) const;

private:
    ScalarField2 w_;
};

/// Composite control c1 * w1 + c2 * w2 (superadditivity is preserved by
/// nonnegative linear combinations).
Control combine(double c1, const Control& w1, double c2, const Control& w2);

} // namespace roughkit
