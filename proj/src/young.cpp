#include "roughkit/young.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "roughkit/variation.hpp"

namespace roughkit::young {

namespace {

// chi(i,j) = operator norm of Y(j) - Y(i) for a matrix path.
ScalarField2 matrix_increment_field(const MatrixPath& y) {
    ScalarField2 out(y.grid());
    for (std::size_t i = 0; i < y.n(); ++i)
        for (std::size_t j = i + 1; j < y.n(); ++j)
            out.set(i, j, y.increment_op_norm(i, j));
    return out;
}

GridPath subpath(const GridPath& x, std::size_t lo, std::size_t hi) {
    std::vector<double> times(x.grid().times().begin() + lo,
                              x.grid().times().begin() + hi + 1);
    std::vector<double> vals(x.raw().begin() + lo * x.dim(),
                             x.raw().begin() + (hi + 1) * x.dim());
    return GridPath(TimeGrid(std::move(times)), x.dim(), std::move(vals));
}

// max over all subintervals I of V^r(dy)_I / V^r(x)_I with 0/0 = 0.
// Both arguments are var_field outputs on the same (window) grid.
double ratio_metric(const ScalarField2& v_dy, const ScalarField2& v_x) {
    double worst = 0;
    const std::size_t n = v_dy.n();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double num = v_dy.at(i, j);
            const double den = v_x.at(i, j);
            if (den > 0)
                worst = std::max(worst, num / den);
            else if (num > 0)
                return std::numeric_limits<double>::infinity();
        }
    return worst;
}

} // namespace

YoungIntegral young_integral(const MatrixPath& y, const GridPath& x, double r1, double r2,
                             bool with_bound) {
    if (!(y.grid() == x.grid())) throw DimensionError("young_integral: grids differ");
    if (y.cols() != x.dim()) throw DimensionError("young_integral: Y cols != dim X");
    if (!(r1 >= 1.0) || !(r2 >= 1.0))
        throw ParameterError("young_integral: variation orders must be >= 1");
    const double theta = 1.0 / r1 + 1.0 / r2;
    if (!(theta > 1.0))
        throw ParameterError("young_integral: 1/r1 + 1/r2 must exceed 1");

    const std::size_t n = x.n();
    const std::size_t d = y.rows();

    // prefix[t] = sum_{k < t} Y_k dX_k; the grid-exact integral is additive.
    std::vector<double> prefix(n * d, 0.0);
    std::vector<double> dx(x.dim()), ydx(d);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        x.increment(k, k + 1, dx.data());
        matvec(y.value(k), dx.data(), ydx.data());
        for (std::size_t m = 0; m < d; ++m) prefix[(k + 1) * d + m] = prefix[k * d + m] + ydx[m];
    }

    YoungIntegral out{TensorField2(x.grid(), d, 1), std::nullopt, theta};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            MatView e = out.z.entry_mut(i, j);
            for (std::size_t m = 0; m < d; ++m) e.p[m] = prefix[j * d + m] - prefix[i * d + m];
        }

    if (with_bound && n <= variation::kVarFieldMaxN) {
        const double zt = sewing::zeta(theta);
        const auto vy = variation::var_field(matrix_increment_field(y), r1);
        const auto vx = variation::var_field(x, r2);
        ScalarField2 bound(x.grid());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const double a = (j - 1 >= i) ? vy.at(i, j - 1) : 0.0;
                const double b = vx.at(i + 1 <= j ? i + 1 : j, j);
                bound.set(i, j, zt * a * b);
            }
        out.bound = std::move(bound);
    }
    return out;
}

Smallness smallness_breakdown(const holder::HolderFunction& phi, double r) {
    phi.validate();
    const double a = phi.alpha;
    if (!(r >= 1.0 && r < 1.0 + a))
        throw ParameterError("smallness: requires 1 <= r < 1 + alpha");
    const double theta = (1.0 + a) / r;
    const double zt = sewing::zeta(theta);

    Smallness s;
    // 2^{alpha+theta-1} zeta Phi_a eps^a <= Phi0^{1-a}
    s.eps_apriori = std::pow(
        std::pow(phi.phi0, 1.0 - a) / (std::pow(2.0, a + theta - 1.0) * zt * phi.phi_alpha),
        1.0 / a);
    // 2^{theta-1} zeta Phi1 eps <= 1/8
    s.eps_phi1 = 1.0 / (8.0 * std::pow(2.0, theta - 1.0) * zt * phi.phi1);
    // 2^{theta-1} zeta 2^a Phi0^a Phi1a/(1+a) eps^{1+a} <= 1/8
    s.eps_phi1alpha =
        std::pow(1.0 / (8.0 * std::pow(2.0, theta - 1.0) * zt * std::pow(2.0, a) *
                        std::pow(phi.phi0, a) * phi.phi1_alpha / (1.0 + a)),
                 1.0 / (1.0 + a));
    return s;
}

double smallness_epsilon(const holder::HolderFunction& phi, double r) {
    return smallness_breakdown(phi, r).value();
}

namespace {

// One Picard window [0, m-1] on its own subgrid. Returns the solved path
// values and the log; y0 is the window's initial value.
std::vector<double> solve_window(const holder::HolderFunction& phi, const GridPath& x,
                                 const Vec& y0, const YoungConfig& cfg, WindowLog& log) {
    const std::size_t m = x.n();
    const std::size_t d = phi.dy;
    const auto v_x = variation::var_field(x, cfg.r);
    log.vr_x = v_x.at(0, m - 1);

    std::vector<double> cur(m * d);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < d; ++k) cur[i * d + k] = y0[k];

    std::vector<double> next(m * d), fy(d * x.dim()), dx(x.dim()), step(d);
    double prev_metric = -1.0;

    for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
        // next = y0 + int phi(cur) dX (grid-exact left Riemann sum)
        for (std::size_t k = 0; k < d; ++k) next[k] = y0[k];
        for (std::size_t i = 0; i + 1 < m; ++i) {
            phi.eval(cur.data() + i * d, fy.data());
            x.increment(i, i + 1, dx.data());
            matvec({fy.data(), d, x.dim()}, dx.data(), step.data());
            for (std::size_t k = 0; k < d; ++k)
                next[(i + 1) * d + k] = next[i * d + k] + step[k];
        }

        // metric d(next, cur)
        std::vector<double> diff(m * d);
        for (std::size_t i = 0; i < m * d; ++i) diff[i] = next[i] - cur[i];
        const GridPath dpath(x.grid(), d, diff);
        const double metric = ratio_metric(variation::var_field(dpath, cfg.r), v_x);

        cur.swap(next);
        ++log.iterations;

        if (prev_metric > 0 && prev_metric > 100.0 * cfg.picard_tol) {
            const double factor = metric / prev_metric;
            log.contraction_factors.push_back(factor);
            if (factor > 0.5 + cfg.contraction_slack)
                throw DiagnosticError(
                    "young_solve: observed contraction factor " + std::to_string(factor) +
                    " exceeds 1/2 + slack on window (smallness bound violated?)");
        }
        prev_metric = metric;
        log.final_metric = metric;
        if (metric <= cfg.picard_tol) break;
    }
    if (log.final_metric > cfg.picard_tol)
        throw DiagnosticError("young_solve: Picard iteration did not reach tolerance");

    // solution space membership: V^r Y_I <= 2 Phi0 V^r X_I on every interval
    const GridPath ypath(x.grid(), d, cur);
    const auto v_y = variation::var_field(ypath, cfg.r);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (v_y.at(i, j) > 2.0 * phi.phi0 * v_x.at(i, j) + 1e-10)
                throw DiagnosticError("young_solve: solution left the a priori space "
                                      "V^r Y <= 2 Phi0 V^r X");
    return cur;
}

} // namespace

YoungSolution young_solve(const holder::HolderFunction& phi, const GridPath& x, const Vec& y0,
                          const YoungConfig& cfg) {
    phi.validate();
    cfg.validate(phi.alpha);
    if (y0.size() != phi.dy) throw DimensionError("young_solve: y0 dimension != phi domain");
    if (x.dim() != phi.dx) throw DimensionError("young_solve: driver dimension != phi range");

    const double epsilon = smallness_epsilon(phi, cfg.r);
    const std::size_t n = x.n();

    YoungSolution sol{GridPath(x.grid(), phi.dy,
                               std::vector<double>(n * phi.dy, 0.0)),
                     {}};
    Vec y_start = y0;
    std::size_t lo = 0;
    for (std::size_t k = 0; k < phi.dy; ++k) sol.y.raw()[k] = y0[k];
    const auto chi = ScalarField2::from_path_distance(x);

    while (lo + 1 < n) {
        // greedy-maximal window: extend while V^r X over [lo, hi] stays below epsilon
        std::size_t hi = lo + 1;
        {
            if (chi.at(lo, lo + 1) >= epsilon)
                throw ParameterError(
                    "young_solve: grid too coarse, a single cell has V^r X >= epsilon = " +
                    std::to_string(epsilon));
            // incremental forward DP from lo
            std::vector<double> best(n, 0.0);
            double run = 0.0;
            std::size_t j = lo;
            while (j + 1 < n && hi - lo < cfg.max_window_cells) {
                ++j;
                double b = 0;
                for (std::size_t i = lo; i < j; ++i)
                    b = std::max(b, best[i] + std::pow(chi.at(i, j), cfg.r));
                best[j] = b;
                run = std::max(run, b);
                if (std::pow(run, 1.0 / cfg.r) >= epsilon) break;
                hi = j;
            }
        }

        WindowLog log;
        log.lo = lo;
        log.hi = hi;
        log.epsilon = epsilon;
        const GridPath xw = subpath(x, lo, hi);
        const auto values = solve_window(phi, xw, y_start, cfg, log);
        for (std::size_t i = 0; i <= hi - lo; ++i)
            for (std::size_t k = 0; k < phi.dy; ++k)
                sol.y.raw()[(lo + i) * phi.dy + k] = values[i * phi.dy + k];
        for (std::size_t k = 0; k < phi.dy; ++k) y_start[k] = values[(hi - lo) * phi.dy + k];
        sol.windows.push_back(std::move(log));
        lo = hi;
    }
    return sol;
}

LipschitzReport young_lipschitz_gamma(const holder::HolderFunction& phi,
                                      const holder::HolderFunction& phi_tilde,
                                      const GridPath& x, const GridPath& x_tilde,
                                      const Vec& y0, const Vec& y0_tilde,
                                      const PhiDifference& dphi, const YoungConfig& cfg) {
    phi.validate();
    phi_tilde.validate();
    if (phi.alpha != phi_tilde.alpha)
        throw ParameterError("young_lipschitz_gamma: mismatched Hoelder exponents");
    cfg.validate(phi.alpha);
    if (!(x.grid() == x_tilde.grid())) throw DimensionError("drivers on different grids");

    // merged bounds: the theorem's Phi's must dominate both nonlinearities
    holder::HolderFunction merged = phi;
    merged.phi0 = std::max(phi.phi0, phi_tilde.phi0);
    merged.phi_alpha = std::max(phi.phi_alpha, phi_tilde.phi_alpha);
    merged.phi1 = std::max(phi.phi1, phi_tilde.phi1);
    merged.phi1_alpha = std::max(phi.phi1_alpha, phi_tilde.phi1_alpha);

    const double a = phi.alpha;
    const double epsilon = smallness_epsilon(merged, cfg.r);
    const double vx_full = variation::var_exact(x, cfg.r).value;
    const double vxt_full = variation::var_exact(x_tilde, cfg.r).value;
    if (vx_full >= epsilon || vxt_full >= epsilon)
        throw ParameterError("young_lipschitz_gamma: smallness violated, V^r X = " +
                             std::to_string(std::max(vx_full, vxt_full)) + " >= epsilon = " +
                             std::to_string(epsilon));

    const auto sol = young_solve(phi, x, y0, cfg);
    const auto sol_t = young_solve(phi_tilde, x_tilde, y0_tilde, cfg);

    // explicit gamma from the fixed-point inequality gamma <= gamma/2 + G:
    const double csew = cfg.csew(a);
    const double phi0 = merged.phi0;
    const double phi1 = merged.phi1;
    const double phi1a = merged.phi1_alpha;
    const double gamma_prime = 2.0 * phi0;
    double beta = 0.0; // V^r DeltaX over [0, T]
    {
        std::vector<double> dvals(x.raw().size());
        for (std::size_t i = 0; i < dvals.size(); ++i) dvals[i] = x.raw()[i] - x_tilde.raw()[i];
        beta = variation::var_exact(GridPath(x.grid(), x.dim(), std::move(dvals)), cfg.r).value;
    }
    double beta_p = 0.0; // |Delta y0|
    for (std::size_t k = 0; k < y0.size(); ++k)
        beta_p += (y0[k] - y0_tilde[k]) * (y0[k] - y0_tilde[k]);
    beta_p = std::sqrt(beta_p);
    const double beta_pp = dphi.c_alpha;
    const double beta_ppp = dphi.sup;

    const double eps_a = std::pow(epsilon, a);
    const double g = csew * phi1 * gamma_prime * beta +
                     csew * std::pow(2.0, a + 1.0) * (phi1a / (1.0 + a)) * std::pow(phi0, a) *
                         eps_a * (beta_p + gamma_prime * beta) +
                     csew * std::pow(2.0, a) * std::pow(phi0, a) * eps_a * beta_pp +
                     phi1 * gamma_prime * beta + phi1 * beta_p + beta_ppp;

    LipschitzReport rep(sol.y, sol_t.y);
    rep.gamma = 2.0 * g;
    rep.epsilon = epsilon;

    // verify V^r(DeltaY)_I <= gamma V^r X_I + 2 Phi0 V^r(DeltaX)_I on every interval
    std::vector<double> dy(sol.y.raw().size());
    for (std::size_t i = 0; i < dy.size(); ++i) dy[i] = sol.y.raw()[i] - sol_t.y.raw()[i];
    std::vector<double> dxv(x.raw().size());
    for (std::size_t i = 0; i < dxv.size(); ++i) dxv[i] = x.raw()[i] - x_tilde.raw()[i];

    const auto v_dy = variation::var_field(GridPath(x.grid(), phi.dy, std::move(dy)), cfg.r);
    const auto v_x = variation::var_field(x, cfg.r);
    const auto v_dx = variation::var_field(GridPath(x.grid(), x.dim(), std::move(dxv)), cfg.r);

    const std::size_t n = x.n();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double lhs = v_dy.at(i, j);
            const double rhs = rep.gamma * v_x.at(i, j) + 2.0 * phi0 * v_dx.at(i, j);
            ++rep.intervals_checked;
            if (lhs > rhs * (1 + 1e-9) + 1e-14) ++rep.violations;
            if (rhs > 0) rep.max_ratio = std::max(rep.max_ratio, lhs / rhs);
        }
    return rep;
}

std::pair<double, double> four_point_taylor(const holder::HolderFunction& phi,
                                            const holder::HolderFunction& phi_tilde,
                                            const Vec& ys, const Vec& yt, const Vec& yts,
                                            const Vec& ytt, double dphi_c_alpha) {
    const std::size_t d = phi.dy;
    const std::size_t m = phi.dy * phi.dx;
    std::vector<double> f_s(m), f_t(m), g_s(m), g_t(m);
    phi.eval(ys.data(), f_s.data());
    phi.eval(yt.data(), f_t.data());
    phi_tilde.eval(yts.data(), g_s.data());
    phi_tilde.eval(ytt.data(), g_t.data());

    std::vector<double> diff(m);
    for (std::size_t k = 0; k < m; ++k) diff[k] = (f_t[k] - f_s[k]) - (g_t[k] - g_s[k]);
    const double lhs = frobenius(diff.data(), m);

    auto dist = [d](const Vec& a, const Vec& b) {
        double s = 0;
        for (std::size_t k = 0; k < d; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
        return std::sqrt(s);
    };
    const double a = phi.alpha;
    const double inc = dist(yt, ys), inc_t = dist(ytt, yts);
    double d_inc = 0; // |DeltaY_{s,t}| = |(yt - ys) - (ytt - yts)|
    for (std::size_t k = 0; k < d; ++k) {
        const double v = (yt[k] - ys[k]) - (ytt[k] - yts[k]);
        d_inc += v * v;
    }
    d_inc = std::sqrt(d_inc);
    const double rhs = phi.phi1 * d_inc +
                       phi.phi1_alpha / (1.0 + a) *
                           (std::pow(inc, a) + std::pow(inc_t, a)) * dist(ys, yts) +
                       dphi_c_alpha * std::pow(inc_t, a);
    return {lhs, rhs};
}

} // namespace roughkit::young
