#include "roughkit/generators.hpp"

#include <cmath>
#include <numbers>

namespace roughkit::verify {

double NormalStream::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // 53-bit uniforms; u1 kept away from 0 for the log
    const double u1 =
        (static_cast<double>(rng_() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    const double u2 = static_cast<double>(rng_() >> 11) * (1.0 / 9007199254740992.0);
    const double mag = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    spare_ = mag * std::sin(ang);
    have_spare_ = true;
    return mag * std::cos(ang);
}

PathGenerator::Kind PathGenerator::kind_from_string(const std::string& s) {
    if (s == "gaussian_walk") return Kind::gaussian_walk;
    if (s == "fbm_cholesky") return Kind::fbm_cholesky;
    if (s == "polynomial") return Kind::polynomial;
    if (s == "trig") return Kind::trig;
    if (s == "zigzag") return Kind::zigzag;
    throw ParameterError("unknown path kind: " + s);
}

namespace {

GridPath gaussian_walk(const PathGenerator& g) {
    NormalStream ns(g.seed * 0x9e3779b97f4a7c15ull + 1);
    TimeGrid grid = TimeGrid::uniform(0.0, g.horizon, g.cells);
    std::vector<double> v((g.cells + 1) * g.dim, 0.0);
    const double s = g.amplitude * std::sqrt(g.horizon / static_cast<double>(g.cells));
    for (std::size_t i = 1; i <= g.cells; ++i)
        for (std::size_t d = 0; d < g.dim; ++d)
            v[i * g.dim + d] = v[(i - 1) * g.dim + d] + s * ns.next();
    return GridPath(std::move(grid), g.dim, std::move(v));
}

GridPath fbm_cholesky(const PathGenerator& g) {
    if (!(g.hurst > 0.0 && g.hurst < 1.0))
        throw ParameterError("fbm_cholesky: Hurst index must lie in (0, 1)");
    if (g.cells > kFbmMaxCells)
        throw ParameterError("fbm_cholesky: grid capped at 1024 cells (O(n^3) factorization)");
    const std::size_t m = g.cells; // values at t_1..t_m; t_0 pinned to 0
    TimeGrid grid = TimeGrid::uniform(0.0, g.horizon, g.cells);
    const double h2 = 2.0 * g.hurst;

    // covariance C(s, t) = (s^2H + t^2H - |t-s|^2H) / 2, Cholesky in place
    std::vector<double> c(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const double ti = grid.t(i + 1), tj = grid.t(j + 1);
            c[i * m + j] =
                0.5 * (std::pow(ti, h2) + std::pow(tj, h2) - std::pow(ti - tj, h2));
        }
    for (std::size_t k = 0; k < m; ++k) {
        double d = c[k * m + k];
        for (std::size_t j = 0; j < k; ++j) d -= c[k * m + j] * c[k * m + j];
        if (d < 1e-14) d = 1e-14; // PSD guard near the diagonal
        c[k * m + k] = std::sqrt(d);
        for (std::size_t i = k + 1; i < m; ++i) {
            double s = c[i * m + k];
            for (std::size_t j = 0; j < k; ++j) s -= c[i * m + j] * c[k * m + j];
            c[i * m + k] = s / c[k * m + k];
        }
    }

    NormalStream ns(g.seed * 0x9e3779b97f4a7c15ull + 2);
    std::vector<double> v((m + 1) * g.dim, 0.0);
    std::vector<double> xi(m);
    for (std::size_t d = 0; d < g.dim; ++d) {
        for (auto& x : xi) x = ns.next();
        for (std::size_t i = 0; i < m; ++i) {
            double s = 0;
            for (std::size_t j = 0; j <= i; ++j) s += c[i * m + j] * xi[j];
            v[(i + 1) * g.dim + d] = g.amplitude * s;
        }
    }
    return GridPath(std::move(grid), g.dim, std::move(v));
}

GridPath polynomial(const PathGenerator& g) {
    NormalStream ns(g.seed * 0x9e3779b97f4a7c15ull + 3);
    TimeGrid grid = TimeGrid::uniform(0.0, g.horizon, g.cells);
    std::vector<double> coeff(g.dim * 4);
    for (auto& c : coeff) c = ns.next();
    std::vector<double> v((g.cells + 1) * g.dim);
    for (std::size_t i = 0; i <= g.cells; ++i) {
        const double t = grid.t(i) / g.horizon;
        for (std::size_t d = 0; d < g.dim; ++d) {
            const double* c = coeff.data() + d * 4;
            v[i * g.dim + d] =
                g.amplitude * (c[0] * t + c[1] * t * t + c[2] * t * t * t +
                               0.5 * c[3] * t * t * t * t);
        }
    }
    return GridPath(std::move(grid), g.dim, std::move(v));
}

GridPath trig(const PathGenerator& g) {
    NormalStream ns(g.seed * 0x9e3779b97f4a7c15ull + 4);
    TimeGrid grid = TimeGrid::uniform(0.0, g.horizon, g.cells);
    std::vector<double> coeff(g.dim * 6);
    for (auto& c : coeff) c = ns.next();
    std::vector<double> v((g.cells + 1) * g.dim);
    const double w = 2.0 * std::numbers::pi / g.horizon;
    for (std::size_t i = 0; i <= g.cells; ++i) {
        const double t = grid.t(i);
        for (std::size_t d = 0; d < g.dim; ++d) {
            const double* c = coeff.data() + d * 6;
            double s = 0;
            for (int k = 1; k <= 3; ++k)
                s += (c[2 * k - 2] * std::sin(k * w * t) + c[2 * k - 1] * std::cos(k * w * t)) /
                     static_cast<double>(k);
            v[i * g.dim + d] = g.amplitude * s;
        }
    }
    return GridPath(std::move(grid), g.dim, std::move(v));
}

GridPath zigzag(const PathGenerator& g) {
    TimeGrid grid = TimeGrid::uniform(0.0, g.horizon, g.cells);
    std::vector<double> v((g.cells + 1) * g.dim);
    for (std::size_t i = 0; i <= g.cells; ++i)
        for (std::size_t d = 0; d < g.dim; ++d)
            v[i * g.dim + d] = g.amplitude * static_cast<double>((i + d) % 2);
    return GridPath(std::move(grid), g.dim, std::move(v));
}

} // namespace

GridPath gen_path(const PathGenerator& g) {
    if (g.dim == 0 || g.cells < 1) throw ParameterError("gen_path: bad dimensions");
    switch (g.kind) {
        case PathGenerator::Kind::gaussian_walk: return gaussian_walk(g);
        case PathGenerator::Kind::fbm_cholesky: return fbm_cholesky(g);
        case PathGenerator::Kind::polynomial: return polynomial(g);
        case PathGenerator::Kind::trig: return trig(g);
        case PathGenerator::Kind::zigzag: return zigzag(g);
    }
    throw ParameterError("gen_path: unknown kind");
}

} // namespace roughkit::verify
