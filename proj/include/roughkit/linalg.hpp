#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "roughkit/errors.hpp"

namespace roughkit {

using Vec = std::vector<double>;

/// Mutable view of a row-major rows x cols block.
struct MatView {
    double* p = nullptr;
    std::size_t rows = 0, cols = 0;
    double& operator()(std::size_t i, std::size_t j) const { return p[i * cols + j]; }
    std::size_t size() const { return rows * cols; }
};

struct ConstMatView {
    const double* p = nullptr;
    std::size_t rows = 0, cols = 0;
    ConstMatView() = default;
    ConstMatView(const double* q, std::size_t r, std::size_t c) : p(q), rows(r), cols(c) {}
    ConstMatView(const MatView& m) : p(m.p), rows(m.rows), cols(m.cols) {}
    double operator()(std::size_t i, std::size_t j) const { return p[i * cols + j]; }
    std::size_t size() const { return rows * cols; }
};

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

/// Frobenius norm of a flat block.
inline double frobenius(const double* p, std::size_t m) {
    double s = 0;
    for (std::size_t i = 0; i < m; ++i) s += p[i] * p[i];
    return std::sqrt(s);
}

inline double max_abs(std::span<const double> a) {
    double m = 0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

/// acc += x (x) y, flat row-major nx x ny block.
inline void outer_acc(double* acc, const double* x, std::size_t nx,
                      const double* y, std::size_t ny) {
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) acc[i * ny + j] += x[i] * y[j];
}

/// y = A x for row-major A (rows x cols).
inline void matvec(ConstMatView a, const double* x, double* y) {
    for (std::size_t i = 0; i < a.rows; ++i) {
        double s = 0;
        for (std::size_t j = 0; j < a.cols; ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
}

namespace detail {

// Cyclic Jacobi eigenvalue iteration for a small symmetric matrix (in place).
// Returns the largest eigenvalue. Intended for n <= 8.
inline double jacobi_max_eigenvalue(std::vector<double>& g, std::size_t n) {
    auto at = [&](std::size_t i, std::size_t j) -> double& { return g[i * n + j]; };
    for (int sweep = 0; sweep < 48; ++sweep) {
        double off = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) continue;
                const double tau = (at(q, q) - at(p, p)) / (2 * apq);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
                const double c = 1.0 / std::sqrt(1 + t * t), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    double lam = 0;
    for (std::size_t i = 0; i < n; ++i) lam = std::max(lam, at(i, i));
    return lam;
}

} // namespace detail

/// Spectral (operator 2-) norm of a row-major rows x cols matrix,
/// computed exactly via Jacobi on the smaller Gram matrix.
inline double spectral_norm(ConstMatView a) {
    const std::size_t r = a.rows, c = a.cols;
    if (r == 0 || c == 0) return 0.0;
    if (r == 1 || c == 1) return frobenius(a.p, r * c);
    const std::size_t n = std::min(r, c);
    std::vector<double> g(n * n, 0.0);
    if (c <= r) { // G = A^T A
        for (std::size_t i = 0; i < c; ++i)
            for (std::size_t j = i; j < c; ++j) {
                double s = 0;
                for (std::size_t k = 0; k < r; ++k) s += a(k, i) * a(k, j);
                g[i * c + j] = g[j * c + i] = s;
            }
    } else { // G = A A^T
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = i; j < r; ++j) {
                double s = 0;
                for (std::size_t k = 0; k < c; ++k) s += a(i, k) * a(j, k);
                g[i * r + j] = g[j * r + i] = s;
            }
    }
    const double lam = detail::jacobi_max_eigenvalue(g, n);
    return std::sqrt(std::max(0.0, lam));
}

} // namespace roughkit
