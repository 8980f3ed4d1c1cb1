#include "roughkit/rde.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "roughkit/variation.hpp"

namespace roughkit::rde {

namespace {

// C^alpha bounds of a C^{1,1} family for alpha < 1, by interpolation:
// |phi|_{C^a} <= (2 Phi0)^{1-a} Phi01^a and likewise for D phi.
double phi_alpha_bound(const holder::SmoothFunction21& phi, double alpha) {
    if (alpha == 1.0) return phi.phi01;
    return std::pow(2.0 * phi.phi0, 1.0 - alpha) * std::pow(phi.phi01, alpha);
}
double phi1_alpha_bound(const holder::SmoothFunction21& phi, double alpha) {
    if (alpha == 1.0) return phi.phi11;
    return std::pow(2.0 * phi.phi1, 1.0 - alpha) * std::pow(phi.phi11, alpha);
}

ScalarField2 matrix_increment_frobenius(const MatrixPath& y) {
    ScalarField2 out(y.grid());
    const std::size_t m = y.stride();
    for (std::size_t i = 0; i < y.n(); ++i) {
        const double* a = y.raw().data() + i * m;
        for (std::size_t j = i + 1; j < y.n(); ++j) {
            const double* b = y.raw().data() + j * m;
            double s = 0;
            for (std::size_t k = 0; k < m; ++k) {
                const double d = b[k] - a[k];
                s += d * d;
            }
            out.set(i, j, std::sqrt(s));
        }
    }
    return out;
}

} // namespace

OmegaField make_omega(const rough::RoughPath& x, double r, double phi0, double phi1) {
    if (!(phi0 > 0) || !(phi1 > 0)) throw ParameterError("make_omega: bounds must be positive");
    const auto vx = variation::var_field(ScalarField2::from_path_distance(x.x()), r);
    const auto vxx = variation::var_field(x.xx().norm_field(), r / 2.0);

    OmegaField out{ScalarField2(x.grid()), false};
    const std::size_t n = x.n();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            out.field.set(i, j, phi0 * vx.at(i, j) + phi0 * phi1 * vxx.at(i, j));

    // controls after raising to the superadditivity powers
    try {
        Control cx(vx.pow(r), 1e-9);
        Control cxx(vxx.pow(r / 2.0), 1e-9);
        out.verified_control = true;
    } catch (const ConsistencyError&) {
        out.verified_control = false;
    }
    return out;
}

ControlledMatrixPath controlled_compose(const holder::SmoothFunction21& phi,
                                        const rough::ControlledPath& y) {
    phi.validate21();
    if (y.y().dim() != phi.dy) throw DimensionError("controlled_compose: dim(Y) != phi domain");
    if (y.driver().dim() != phi.dx)
        throw DimensionError("controlled_compose: dim(X) != phi range");
    const std::size_t npt = y.n();
    const std::size_t d = phi.dy, nx = phi.dx;

    ControlledMatrixPath out{holder::compose(phi, y.y()),
                             std::vector<double>(npt * d * nx * nx, 0.0), y.driver_ptr()};
    std::vector<double> dbuf(d * nx * d);
    for (std::size_t t = 0; t < npt; ++t) {
        phi.deriv(y.y().value(t).data(), dbuf.data());
        const ConstMatView yp = y.yp().value(t); // d x nx
        double* o = out.yp_at(t);
        // [Dphi(Y) Y']_{ik,j} = sum_m dphi_{ik,m} Y'_{mj}
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < nx; ++k)
                for (std::size_t j = 0; j < nx; ++j) {
                    double s = 0;
                    for (std::size_t m = 0; m < d; ++m)
                        s += dbuf[(i * nx + k) * d + m] * yp(m, j);
                    o[(i * nx + k) * nx + j] = s;
                }
    }
    return out;
}

TensorField2 integrand_remainder(const ControlledMatrixPath& ym) {
    const std::size_t npt = ym.y.n();
    const std::size_t d = ym.d(), nx = ym.nx();
    const GridPath& x = ym.driver->x();
    TensorField2 r(ym.y.grid(), d, nx);
    std::vector<double> dx(nx);
    for (std::size_t i = 0; i < npt; ++i) {
        const double* ypi = ym.yp_at(i);
        const ConstMatView yi = ym.y.value(i);
        for (std::size_t j = i + 1; j < npt; ++j) {
            x.increment(i, j, dx.data());
            const ConstMatView yj = ym.y.value(j);
            MatView dst = r.entry_mut(i, j);
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t k = 0; k < nx; ++k) {
                    double s = 0;
                    for (std::size_t q = 0; q < nx; ++q)
                        s += ypi[(a * nx + k) * nx + q] * dx[q];
                    dst(a, k) = yj(a, k) - yi(a, k) - s;
                }
        }
    }
    return r;
}

void delta_xi(const ControlledMatrixPath& ym, std::size_t s, std::size_t u, std::size_t t,
              double* d_direct, double* d_identity) {
    const std::size_t d = ym.d(), nx = ym.nx();
    const GridPath& x = ym.driver->x();
    const TensorField2& xx = ym.driver->xx();

    auto germ = [&](std::size_t a, std::size_t b, double* out) {
        std::vector<double> dx(nx);
        x.increment(a, b, dx.data());
        const ConstMatView ya = ym.y.value(a);
        const double* ypa = ym.yp_at(a);
        const ConstMatView xab = xx.entry(a, b);
        for (std::size_t i = 0; i < d; ++i) {
            double v = 0;
            for (std::size_t k = 0; k < nx; ++k) v += ya(i, k) * dx[k];
            for (std::size_t k = 0; k < nx; ++k)
                for (std::size_t j = 0; j < nx; ++j)
                    v += ypa[(i * nx + k) * nx + j] * xab(j, k);
            out[i] = v;
        }
    };
    std::vector<double> g_st(d), g_su(d), g_ut(d);
    germ(s, t, g_st.data());
    germ(s, u, g_su.data());
    germ(u, t, g_ut.data());
    for (std::size_t i = 0; i < d; ++i) d_direct[i] = g_st[i] - g_su[i] - g_ut[i];

    // - R(s,u) X(u,t) - Y'(s,u) XX(u,t)
    std::vector<double> dxut(nx);
    x.increment(u, t, dxut.data());
    std::vector<double> dxsu(nx);
    x.increment(s, u, dxsu.data());
    const ConstMatView ys = ym.y.value(s);
    const ConstMatView yu = ym.y.value(u);
    const double* yps = ym.yp_at(s);
    const double* ypu = ym.yp_at(u);
    const ConstMatView xut = xx.entry(u, t);
    for (std::size_t i = 0; i < d; ++i) {
        double v = 0;
        for (std::size_t k = 0; k < nx; ++k) {
            double rsu = yu(i, k) - ys(i, k); // R(s,u)_{ik}
            for (std::size_t q = 0; q < nx; ++q)
                rsu -= yps[(i * nx + k) * nx + q] * dxsu[q];
            v -= rsu * dxut[k];
        }
        for (std::size_t k = 0; k < nx; ++k)
            for (std::size_t j = 0; j < nx; ++j)
                v -= (ypu[(i * nx + k) * nx + j] - yps[(i * nx + k) * nx + j]) * xut(j, k);
        d_identity[i] = v;
    }
}

RoughIntegral rough_integral(const ControlledMatrixPath& ym, const RdeConfig& cfg,
                             bool with_bound) {
    cfg.validate();
    const std::size_t npt = ym.y.n();
    const std::size_t d = ym.d(), nx = ym.nx();
    const GridPath& x = ym.driver->x();
    const TensorField2& xx = ym.driver->xx();

    // prefix over cells of the germ Xi = Y dX + Y' XX
    std::vector<double> z(npt * d, 0.0);
    std::vector<double> dx(nx);
    for (std::size_t k = 0; k + 1 < npt; ++k) {
        x.increment(k, k + 1, dx.data());
        const ConstMatView yk = ym.y.value(k);
        const double* ypk = ym.yp_at(k);
        const ConstMatView xcell = xx.entry(k, k + 1);
        for (std::size_t i = 0; i < d; ++i) {
            double v = 0;
            for (std::size_t q = 0; q < nx; ++q) v += yk(i, q) * dx[q];
            for (std::size_t q = 0; q < nx; ++q)
                for (std::size_t j = 0; j < nx; ++j)
                    v += ypk[(i * nx + q) * nx + j] * xcell(j, q);
            z[(k + 1) * d + i] = z[k * d + i] + v;
        }
    }

    GridPath zpath(ym.y.grid(), d, std::move(z));
    MatrixPath zp(ym.y.grid(), d, nx, ym.y.raw()); // Z' = Y
    RoughIntegral out{rough::ControlledPath(std::move(zpath), std::move(zp), ym.driver),
                      std::nullopt, cfg.theta()};

    if (with_bound && npt <= variation::kVarFieldMaxN) {
        const double a = cfg.alpha;
        const double csew = std::pow(2.0, cfg.theta() - 1.0) * sewing::zeta(cfg.theta());
        const auto vr_r =
            variation::var_field(integrand_remainder(ym).norm_field(), cfg.r / (1.0 + a));
        const auto vr_x = variation::var_field(ScalarField2::from_path_distance(x), cfg.r);
        // Frobenius increments of the rank-3 derivative
        ScalarField2 ypinc(ym.y.grid());
        const std::size_t stride = d * nx * nx;
        for (std::size_t i = 0; i < npt; ++i)
            for (std::size_t j = i + 1; j < npt; ++j) {
                double s = 0;
                const double* pi = ym.yp_at(i);
                const double* pj = ym.yp_at(j);
                for (std::size_t m = 0; m < stride; ++m) {
                    const double dd = pj[m] - pi[m];
                    s += dd * dd;
                }
                ypinc.set(i, j, std::sqrt(s));
            }
        const auto vr_yp = variation::var_field(ypinc, cfg.r / a);
        const auto vr_xx = variation::var_field(xx.norm_field(), cfg.r / 2.0);

        ScalarField2 bound(ym.y.grid());
        for (std::size_t i = 0; i < npt; ++i)
            for (std::size_t j = i + 1; j < npt; ++j) {
                const double t1 = vr_r.at(i, j - 1) * vr_x.at(i + 1, j);
                const double t2 = vr_yp.at(i, j - 1) * vr_xx.at(i + 1, j);
                bound.set(i, j, csew * (t1 + t2));
            }
        out.bound = std::move(bound);
    }
    return out;
}

bool omega_assumption_holds(const holder::SmoothFunction21& phi, const RdeConfig& cfg,
                            double omega) {
    const double a = cfg.alpha;
    const double csew = cfg.csew();
    const double phi_a = phi_alpha_bound(phi, a);
    const double phi1_a = phi1_alpha_bound(phi, a);
    const double lhs =
        csew * (phi.phi1 / phi.phi0 * (cfg.c - 1.0) * omega +
                phi1_a / (phi.phi0 * (1.0 + a)) * std::pow(cfg.c, 1.0 + a) *
                    std::pow(omega, 1.0 + a) +
                (phi.phi1 * phi_a + phi1_a * phi.phi0) / (phi.phi0 * phi.phi1) *
                    std::pow(cfg.c, a) * std::pow(omega, a));
    return lhs <= cfg.c - 2.0;
}

namespace {

struct WindowConstants {
    double omega = 0, a_bound = 0, c_metric = 0, c1 = 0, c2 = 0, c3 = 0, epsilon = 0;
    double vx = 0, vxx = 0;
};

WindowConstants window_constants(const holder::SmoothFunction21& phi, const RdeConfig& cfg,
                                 double omega) {
    WindowConstants w;
    w.omega = omega;
    w.a_bound = std::max(1.0, phi.phi01) * cfg.c * omega;
    w.c_metric = 2.0 * (phi.phi1 + w.a_bound * phi.phi11);
    const double a = w.a_bound, c = w.c_metric;
    w.c1 = phi.phi1 + phi.phi11 * a + phi.phi11 * a / c + phi.phi2 * phi.phi0 / c +
           phi.phi21 * phi.phi0 * a / c;
    w.c2 = phi.phi1 + phi.phi11 * a / c + phi.phi2 * a / c + phi.phi21 * a * a / (2.0 * c);
    const double sew = sewing::zeta(cfg.theta()) * std::pow(4.0, cfg.theta() - 1.0);
    w.c3 = w.c1 + sew * (w.c1 + w.c2);
    const double kappa = cfg.contraction_target;
    w.epsilon = std::min(kappa / w.c3, kappa / (c * (0.5 + w.c3)));
    return w;
}

struct SubRough {
    std::shared_ptr<rough::RoughPath> rp;
};

SubRough sub_rough(const rough::RoughPath& x, std::size_t lo, std::size_t hi) {
    std::vector<double> times(x.grid().times().begin() + lo,
                              x.grid().times().begin() + hi + 1);
    TimeGrid g(std::move(times));
    const std::size_t d = x.dim();
    std::vector<double> vals(x.x().raw().begin() + lo * d,
                             x.x().raw().begin() + (hi + 1) * d);
    GridPath xp(g, d, std::move(vals));
    TensorField2 xx(g, d, d);
    for (std::size_t i = lo; i <= hi; ++i)
        for (std::size_t j = i + 1; j <= hi; ++j) {
            const ConstMatView src = x.xx().entry(i, j);
            MatView dst = xx.entry_mut(i - lo, j - lo);
            for (std::size_t m = 0; m < d * d; ++m) dst.p[m] = src.p[m];
        }
    return {std::make_shared<rough::RoughPath>(std::move(xp), std::move(xx))};
}

// One window solve on its own subgrid.
rough::ControlledPath solve_window(const holder::SmoothFunction21& phi,
                                   std::shared_ptr<const rough::RoughPath> xw, const Vec& y0,
                                   const RdeConfig& cfg, const WindowConstants& wc,
                                   RdeWindowLog& log) {
    const std::size_t m = xw->n();
    const std::size_t d = phi.dy, nx = phi.dx;
    const double a = cfg.alpha;
    const double phi_a = phi_alpha_bound(phi, a);

    const auto chi_x = ScalarField2::from_path_distance(xw->x());
    const auto chi_xx = xw->xx().norm_field();
    const auto v_x = variation::var_field(chi_x, cfg.r);
    const auto v_xx = variation::var_field(chi_xx, cfg.r / 2.0);
    ScalarField2 omega_f(xw->grid());
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            omega_f.set(i, j,
                        phi.phi0 * v_x.at(i, j) + phi.phi0 * phi.phi1 * v_xx.at(i, j));

    // seed: constant path, zero derivative
    GridPath y(xw->grid(), d, [&] {
        std::vector<double> v(m * d);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < d; ++k) v[i * d + k] = y0[k];
        return v;
    }());
    MatrixPath yp = MatrixPath::zeros(xw->grid(), d, nx);

    double prev_metric = -1.0;
    bool first_factor = true;

    auto check_iterate = [&](const rough::ControlledPath& cur, std::size_t it) {
        if (!cfg.check_iterates) return;
        const auto vr_y = variation::var_field(ScalarField2::from_path_distance(cur.y()), cfg.r);
        const auto vr_r = variation::var_field(rough::remainder(cur).norm_field(), cfg.r / 2.0);
        const auto vr_yp =
            variation::var_field(matrix_increment_frobenius(cur.yp()), cfg.r / a);
        const double sup_yp = cur.yp().sup_op_norm();
        if (sup_yp > phi.phi0 * (1 + 1e-9))
            throw DiagnosticError("rde_solve: iterate " + std::to_string(it) +
                                  " violates |Y'|_sup <= Phi0");
        const double tol = 1e-9;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                const double w = omega_f.at(i, j);
                if (vr_y.at(i, j) > cfg.c * w * (1 + tol) + tol)
                    throw DiagnosticError("rde_solve: iterate leaves V^r Y <= c omega");
                if (vr_r.at(i, j) > (cfg.c - 1.0) * w * (1 + tol) + tol)
                    throw DiagnosticError("rde_solve: iterate leaves V^{r/2} R <= (c-1) omega");
                if (vr_yp.at(i, j) >
                    std::pow(cfg.c, a) * phi_a * std::pow(w, a) * (1 + tol) + tol)
                    throw DiagnosticError(
                        "rde_solve: iterate leaves V^{r/alpha} Y' <= c^a Phi_a omega^a");
                // a priori bounds
                if (0.25 * vr_y.at(i, j) >
                    phi.phi0 * v_x.at(i, j) + 2.0 * phi.phi_dd * v_xx.at(i, j) + tol)
                    throw DiagnosticError("rde_solve: iterate violates the V^r Y a priori bound");
                if (0.75 * vr_r.at(i, j) >
                    1.5 * phi.phi0 * v_x.at(i, j) +
                        3.0 * (2.0 - a) * phi.phi_dd * v_xx.at(i, j) + tol)
                    throw DiagnosticError(
                        "rde_solve: iterate violates the V^{r/2} R a priori bound");
            }
    };

    for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
        const rough::ControlledPath cur(y, yp, xw);
        const ControlledMatrixPath phi_y = controlled_compose(phi, cur);
        RoughIntegral integ = rough_integral(phi_y, cfg, /*with_bound=*/false);

        // Step: Z = y0 + integral, Z' = phi(Y)
        GridPath znew = integ.z.y();
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < d; ++k) znew.raw()[i * d + k] += y0[k];
        MatrixPath zpnew(xw->grid(), d, nx, phi_y.y.raw());

        const rough::ControlledPath next(znew, zpnew, xw);

        // metric: max(V^{r/2}(DeltaR), V^r(DeltaY'), C V^r(DeltaY)) over the window
        const auto dr = rough::field_difference(rough::remainder(next), rough::remainder(cur));
        const double m_r =
            variation::var_exact(dr.norm_field(), cfg.r / 2.0).value;
        const double m_yp = variation::var_exact(
            matrix_increment_frobenius(rough::matrix_path_difference(next.yp(), cur.yp())),
            cfg.r).value;
        const double m_y =
            variation::var_exact(rough::path_difference(next.y(), cur.y()), cfg.r).value;
        const double metric = std::max({m_r, m_yp, wc.c_metric * m_y});

        y = next.y();
        yp = next.yp();
        ++log.iterations;
        check_iterate(next, it + 1);

        if (prev_metric > 0 && prev_metric > 100.0 * cfg.picard_tol) {
            const double factor = metric / prev_metric;
            log.contraction_factors.push_back(factor);
            // the seed pair is outside the fixed-point set (Y'_0 = 0), so the
            // first observed factor is reported but not enforced
            if (!first_factor && factor > cfg.contraction_target + cfg.contraction_slack)
                throw DiagnosticError("rde_solve: observed contraction factor " +
                                      std::to_string(factor) + " exceeds target + slack");
            first_factor = false;
        }
        prev_metric = metric;
        log.final_metric = metric;
        // the seed lies outside the fixed-point set (Y'_0 = 0), so the metric
        // against it can vanish spuriously; convergence needs two real iterates
        if (it > 0 && metric <= cfg.picard_tol) break;
    }
    if (log.final_metric > cfg.picard_tol)
        throw DiagnosticError("rde_solve: Picard iteration did not reach tolerance");
    return rough::ControlledPath(y, yp, xw);
}

} // namespace

RdeSolution rde_solve(const holder::SmoothFunction21& phi, const rough::RoughPath& x,
                      const Vec& y0, const RdeConfig& cfg) {
    phi.validate21();
    cfg.validate();
    if (y0.size() != phi.dy) throw DimensionError("rde_solve: y0 dimension != phi domain");
    if (x.dim() != phi.dx) throw DimensionError("rde_solve: driver dimension != phi range");

    const std::size_t n = x.n();
    const auto chi_x = ScalarField2::from_path_distance(x.x());
    const auto chi_xx = x.xx().norm_field();

    auto driver_copy = std::make_shared<rough::RoughPath>(x);
    std::vector<double> yvals(n * phi.dy, 0.0);
    MatrixPath ypfull = MatrixPath::zeros(x.grid(), phi.dy, phi.dx);
    RdeSolution sol{rough::ControlledPath(GridPath(x.grid(), phi.dy, yvals), ypfull,
                                          driver_copy),
                    {}};

    Vec y_start = y0;
    std::size_t lo = 0;
    std::vector<double> out_y(n * phi.dy, 0.0);
    std::vector<double> out_yp(n * phi.dy * phi.dx, 0.0);
    for (std::size_t k = 0; k < phi.dy; ++k) out_y[k] = y0[k];

    while (lo + 1 < n) {
        // greedy-maximal window: extend while the omega assumption and the
        // contraction lemma's smallness hold (constants recomputed per horizon)
        std::size_t hi = lo;
        WindowConstants accepted{};
        std::vector<double> best_x(n, 0.0), best_xx(n, 0.0);
        double run_x = 0.0, run_xx = 0.0;
        for (std::size_t j = lo + 1; j < n && j - lo <= cfg.max_window_cells; ++j) {
            double bx = 0, bxx = 0;
            for (std::size_t i = lo; i < j; ++i) {
                bx = std::max(bx, best_x[i] + std::pow(chi_x.at(i, j), cfg.r));
                bxx = std::max(bxx, best_xx[i] + std::pow(chi_xx.at(i, j), cfg.r / 2.0));
            }
            best_x[j] = bx;
            best_xx[j] = bxx;
            run_x = std::max(run_x, bx);
            run_xx = std::max(run_xx, bxx);
            const double vx = std::pow(run_x, 1.0 / cfg.r);
            const double vxx = std::pow(run_xx, 2.0 / cfg.r);
            const double omega = phi.phi0 * vx + phi.phi0 * phi.phi1 * vxx;
            if (!omega_assumption_holds(phi, cfg, omega)) break;
            const WindowConstants wc = window_constants(phi, cfg, omega);
            if (vx >= wc.epsilon || vxx >= wc.epsilon) break;
            hi = j;
            accepted = wc;
            accepted.omega = omega;
            accepted.vx = vx;
            accepted.vxx = vxx;
        }
        if (hi == lo) {
            const WindowConstants probe = window_constants(phi, cfg, 0.0);
            throw ParameterError(
                "rde_solve: grid too coarse, a single cell already violates the "
                "smallness conditions (required epsilon at zero omega = " +
                std::to_string(probe.epsilon) + ")");
        }
        if (!cfg.allow_windowing && hi < n - 1)
            throw DiagnosticError(
                "rde_solve: horizon too long for the omega assumption; admissible "
                "sub-horizon ends at t = " + std::to_string(x.grid().t(hi)));

        RdeWindowLog log;
        log.lo = lo;
        log.hi = hi;
        log.omega = accepted.omega;
        log.bound_a = accepted.a_bound;
        log.metric_c = accepted.c_metric;
        log.epsilon = accepted.epsilon;
        log.vr_x = accepted.vx;
        log.vr_xx = accepted.vxx;

        const SubRough sub = sub_rough(x, lo, hi);
        const auto win = solve_window(phi, sub.rp, y_start, cfg, accepted, log);
        for (std::size_t i = 0; i <= hi - lo; ++i) {
            for (std::size_t k = 0; k < phi.dy; ++k)
                out_y[(lo + i) * phi.dy + k] = win.y().raw()[i * phi.dy + k];
            for (std::size_t k = 0; k < phi.dy * phi.dx; ++k)
                out_yp[(lo + i) * phi.dy * phi.dx + k] =
                    win.yp().raw()[i * phi.dy * phi.dx + k];
        }
        for (std::size_t k = 0; k < phi.dy; ++k)
            y_start[k] = win.y().raw()[(hi - lo) * phi.dy + k];
        sol.windows.push_back(std::move(log));
        lo = hi;
    }

    sol.y = rough::ControlledPath(GridPath(x.grid(), phi.dy, std::move(out_y)),
                                  MatrixPath(x.grid(), phi.dy, phi.dx, std::move(out_yp)),
                                  driver_copy);
    return sol;
}

namespace {

// Dyadic interval family for ratio sweeps on grids beyond the O(n^3) cap.
std::vector<std::pair<std::size_t, std::size_t>> interval_family(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (n <= variation::kVarFieldMaxN) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) out.emplace_back(i, j);
        return out;
    }
    for (std::size_t span = n - 1; span >= 1; span /= 2) {
        for (std::size_t s = 0; s + span < n; s += span) out.emplace_back(s, s + span);
        if (span == 1) break;
    }
    return out;
}

} // namespace

RdeLipschitzReport rde_lipschitz_bounds(const holder::SmoothFunction21& phi,
                                        const rough::RoughPath& x,
                                        const rough::RoughPath& x_tilde, const Vec& y0,
                                        const Vec& y0_tilde, const RdeConfig& cfg) {
    if (!(x.grid() == x_tilde.grid()) || x.dim() != x_tilde.dim())
        throw DimensionError("rde_lipschitz_bounds: incompatible drivers");

    RdeLipschitzReport rep{0.0, 0.0, 0.0, 0,
                           rde_solve(phi, x, y0, cfg),
                           rde_solve(phi, x_tilde, y0_tilde, cfg)};

    const std::size_t n = x.n();
    const auto dx = rough::path_difference(x.x(), x_tilde.x());
    const auto dxx = rough::field_difference(x.xx(), x_tilde.xx());
    const auto dy = rough::path_difference(rep.sol.y.y(), rep.sol_tilde.y.y());
    const auto dr = rough::field_difference(rough::remainder(rep.sol.y),
                                            rough::remainder(rep.sol_tilde.y));

    double dy0 = 0;
    for (std::size_t k = 0; k < y0.size(); ++k)
        dy0 += (y0[k] - y0_tilde[k]) * (y0[k] - y0_tilde[k]);
    dy0 = std::sqrt(dy0);
    rep.gamma = dy0 + variation::var_exact(dx, cfg.r).value +
                variation::var_exact(dxx.norm_field(), cfg.r / 2.0).value;

    const auto chi_x = ScalarField2::from_path_distance(x.x());
    const auto chi_xt = ScalarField2::from_path_distance(x_tilde.x());
    const auto chi_xx = x.xx().norm_field();
    const auto chi_xxt = x_tilde.xx().norm_field();
    const auto chi_dx = ScalarField2::from_path_distance(dx);
    const auto chi_dxx = dxx.norm_field();
    const auto chi_dy = ScalarField2::from_path_distance(dy);
    const auto chi_dr = dr.norm_field();

    // all-interval fields when the O(n^3) sweep is admissible; the dyadic
    // family above the cap falls back to per-interval DP
    std::optional<ScalarField2> f_x, f_xt, f_xx, f_xxt, f_dx, f_dxx, f_dy, f_dr;
    if (n <= variation::kVarFieldMaxN) {
        f_x = variation::var_field(chi_x, cfg.r);
        f_xt = variation::var_field(chi_xt, cfg.r);
        f_xx = variation::var_field(chi_xx, cfg.r / 2.0);
        f_xxt = variation::var_field(chi_xxt, cfg.r / 2.0);
        f_dx = variation::var_field(chi_dx, cfg.r);
        f_dxx = variation::var_field(chi_dxx, cfg.r / 2.0);
        f_dy = variation::var_field(chi_dy, cfg.r);
        f_dr = variation::var_field(chi_dr, cfg.r / 2.0);
    }
    auto value = [&](const std::optional<ScalarField2>& fld, const ScalarField2& chi,
                     double order, std::size_t i, std::size_t j) {
        return fld ? fld->at(i, j) : variation::var_exact(chi, order, i, j).value;
    };

    for (const auto& [i, j] : interval_family(n)) {
        const double vx = value(f_x, chi_x, cfg.r, i, j);
        const double vxt = value(f_xt, chi_xt, cfg.r, i, j);
        const double vxx = value(f_xx, chi_xx, cfg.r / 2.0, i, j);
        const double vxxt = value(f_xxt, chi_xxt, cfg.r / 2.0, i, j);
        const double vdx = value(f_dx, chi_dx, cfg.r, i, j);
        const double vdxx = value(f_dxx, chi_dxx, cfg.r / 2.0, i, j);
        const double vdy = value(f_dy, chi_dy, cfg.r, i, j);
        const double vdr = value(f_dr, chi_dr, cfg.r / 2.0, i, j);

        const double rhs_y = (vx + vxx + vxxt) * rep.gamma + vdx + vdxx;
        const double rhs_r = (vx * vx + vx * vxt + vxx + vxxt) * rep.gamma +
                             (vx + vxt + vxx + vxxt) * vdx + vdxx;
        ++rep.intervals_checked;
        if (rhs_y > 0) rep.max_ratio_y = std::max(rep.max_ratio_y, vdy / rhs_y);
        if (rhs_r > 0) rep.max_ratio_r = std::max(rep.max_ratio_r, vdr / rhs_r);
    }
    return rep;
}

} // namespace roughkit::rde
