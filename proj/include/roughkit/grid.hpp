#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "roughkit/errors.hpp"

namespace roughkit {

/// A finite strictly increasing time grid t_0 < ... < t_{n-1}, n >= 2.
class TimeGrid {
public:
    explicit TimeGrid(std::vector<double> times) : t_(std::move(times)) {
        if (t_.size() < 2) throw ParameterError("TimeGrid: need at least 2 points");
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (!std::isfinite(t_[i])) throw ParameterError("TimeGrid: non-finite time");
            if (i > 0 && !(t_[i] > t_[i - 1]))
                throw ParameterError("TimeGrid: times must be strictly increasing");
        }
    }

    static TimeGrid uniform(double t0, double t1, std::size_t cells) {
        if (!(t1 > t0) || cells < 1) throw ParameterError("TimeGrid::uniform: bad range");
        std::vector<double> t(cells + 1);
        for (std::size_t i = 0; i <= cells; ++i)
            t[i] = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(cells);
        t.back() = t1;
        return TimeGrid(std::move(t));
    }

    std::size_t size() const { return t_.size(); }
    std::size_t cells() const { return t_.size() - 1; }
    double t(std::size_t i) const { return t_[i]; }
    double t0() const { return t_.front(); }
    double t1() const { return t_.back(); }
    /// Horizon T = t_{n-1} - t_0.
    double horizon() const { return t_.back() - t_.front(); }
    const std::vector<double>& times() const { return t_; }

    bool is_uniform(double rel_tol = 1e-9) const {
        const double h = horizon() / static_cast<double>(cells());
        for (std::size_t i = 0; i + 1 < t_.size(); ++i)
            if (std::abs((t_[i + 1] - t_[i]) - h) > rel_tol * h) return false;
        return true;
    }

    /// Uniform spacing; throws if the grid is not uniform.
    double mesh() const {
        if (!is_uniform()) throw ParameterError("TimeGrid: grid is not uniform");
        return horizon() / static_cast<double>(cells());
    }

    /// Uniform with a power-of-two cell count.
    bool is_dyadic(double rel_tol = 1e-9) const {
        const std::size_t m = cells();
        return is_uniform(rel_tol) && (m & (m - 1)) == 0;
    }

    void check_index(std::size_t i) const {
        if (i >= t_.size()) throw IndexError("grid index out of range");
    }

    bool operator==(const TimeGrid& o) const { return t_ == o.t_; }

private:
    std::vector<double> t_;
};

} // namespace roughkit
