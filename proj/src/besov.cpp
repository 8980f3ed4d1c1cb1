#include "roughkit/besov.hpp"

#include <algorithm>
#include <cmath>

#include "roughkit/kernels.hpp"

namespace roughkit::besov {

namespace {

std::size_t dyadic_level_count(std::size_t cells) {
    std::size_t lev = 0;
    while ((std::size_t{1} << (lev + 1)) <= cells) ++lev;
    return lev; // N = floor(log2(cells))
}

// Largest grid offset k with k*mesh <= t (tolerant to rounding).
std::size_t offset_floor(double t, double mesh, std::size_t cells) {
    const auto k = static_cast<std::size_t>(std::floor(t / mesh * (1.0 + 1e-12)));
    return std::min(k, cells);
}

// Aggregates the weighted level values (2^{lev*alpha} v_lev) in q-norm.
double q_aggregate(const std::vector<double>& terms, double q) {
    if (std::isinf(q)) {
        double m = 0;
        for (double t : terms) m = std::max(m, t);
        return m;
    }
    double s = 0;
    for (double t : terms) s += std::pow(t, q);
    return std::pow(s, 1.0 / q);
}

// Exact integral of the step profile: int (t^-alpha prof(t))^q dt/t, where
// prof is constant on [k*mesh, (k+1)*mesh). prof[k] indexed k = 0..cells.
double step_integral(const std::vector<double>& prof, double mesh, std::size_t cells,
                     double alpha, double q) {
    if (std::isinf(q)) {
        double m = 0;
        for (std::size_t k = 1; k <= cells; ++k)
            m = std::max(m, prof[k] * std::pow(k * mesh, -alpha));
        return m;
    }
    const double aq = alpha * q;
    double s = 0;
    for (std::size_t k = 1; k < cells; ++k) {
        if (prof[k] == 0) continue;
        const double lo = k * mesh, hi = (k + 1) * mesh;
        s += std::pow(prof[k], q) * (std::pow(lo, -aq) - std::pow(hi, -aq)) / aq;
    }
    return std::pow(s, 1.0 / q);
}

} // namespace

std::vector<double> omega_profile(const ScalarField2& chi, double p) {
    if (!(p > 0)) throw ParameterError("omega_p: p must be > 0");
    if (!chi.grid().is_uniform())
        throw ParameterError("omega_p: uniform grid required (translates chi(s, s+h) "
                             "must land on grid points)");
    const std::size_t n = chi.n();
    const std::size_t cells = n - 1;
    const double mesh = chi.grid().mesh();

    std::vector<double> a(cells + 1, 0.0);
    std::vector<double> slice(cells);
    for (std::size_t k = 1; k <= cells; ++k) {
        if (std::isinf(p)) {
            // sup over s in [0, T-h]: all pairs at offset k.
            std::size_t m = 0;
            for (std::size_t i = 0; i + k < n; ++i) slice[m++] = chi.at(i, i + k);
            a[k] = kernels::max_val(slice.data(), m);
        } else {
            // Left-endpoint rule on [0, T-h]: cells i = 0..n-2-k.
            std::size_t m = 0;
            for (std::size_t i = 0; i + k + 1 < n; ++i) slice[m++] = chi.at(i, i + k);
            a[k] = std::pow(mesh * kernels::sum_pow(slice.data(), m, p), 1.0 / p);
        }
    }
    return a;
}

double omega_p(const ScalarField2& chi, double p, double t) {
    const double horizon = chi.grid().horizon();
    if (!(t > 0) || t > horizon * (1.0 + 1e-12))
        throw ParameterError("omega_p: t must lie in (0, T]");
    const std::vector<double> a = omega_profile(chi, p);
    const std::size_t kmax = offset_floor(t, chi.grid().mesh(), chi.n() - 1);
    double m = 0;
    for (std::size_t k = 1; k <= kmax; ++k) m = std::max(m, a[k]);
    return m;
}

namespace {

BesovResult evaluate_from_profile(std::vector<double> a, const TimeGrid& grid,
                                  const BesovParams& params, Mode mode,
                                  Evaluator evaluator, std::size_t start_level = 0) {
    const std::size_t cells = grid.cells();
    const double mesh = grid.mesh();
    const double horizon = grid.horizon();

    std::vector<double> prof = a;
    if (mode == Mode::standard) // running max turns a into Omega
        for (std::size_t k = 2; k < prof.size(); ++k) prof[k] = std::max(prof[k], prof[k - 1]);

    BesovResult out;
    out.evaluator = evaluator;
    const std::size_t nlev = dyadic_level_count(cells);
    out.levels = nlev + 1;

    if (evaluator == Evaluator::quadrature) {
        out.norm = step_integral(prof, mesh, cells, params.alpha, params.q);
        return out;
    }

    std::vector<double> terms;
    for (std::size_t lev = start_level; lev <= nlev; ++lev) {
        const double t = horizon * std::pow(0.5, static_cast<double>(lev));
        const std::size_t k = offset_floor(t, mesh, cells);
        if (k < 1) break;
        const double v = (mode == Mode::standard) ? prof[k] : ((k < a.size()) ? a[k] : 0.0);
        terms.push_back(std::pow(2.0, static_cast<double>(lev) * params.alpha) * v);
    }
    out.norm = q_aggregate(terms, params.q);
    return out;
}

} // namespace

BesovResult besov_norm(const ScalarField2& chi, const BesovParams& params, Mode mode,
                       Evaluator evaluator) {
    params.validate();
    if (!chi.nonnegative(0.0)) throw ParameterError("besov_norm: field must be nonnegative");
    return evaluate_from_profile(omega_profile(chi, params.p), chi.grid(), params, mode,
                                 evaluator);
}

BesovResult besov_norm_path(const GridPath& f, const BesovParams& params, Mode mode,
                            Evaluator evaluator) {
    return besov_norm(ScalarField2::from_path_distance(f), params, mode, evaluator);
}

double dyadic_sum_from_level1(const ScalarField2& chi, const BesovParams& params, Mode mode) {
    params.validate();
    BesovResult r = evaluate_from_profile(omega_profile(chi, params.p), chi.grid(), params,
                                          mode, Evaluator::dyadic, 1);
    return r.norm;
}

SumApproxConstants sum_approximation_constants(const BesovParams& params, double horizon) {
    params.validate();
    // Derived by comparing the exact step integral with the dyadic sums over the
    // covers [2^-lev T, 2^-lev+1 T): both sides carry ln2^(1/q) and T^-alpha.
    const double lnq = std::isinf(params.q) ? 1.0 : std::pow(std::log(2.0), 1.0 / params.q);
    const double ta = std::pow(horizon, -params.alpha);
    SumApproxConstants c;
    c.lo_factor = lnq * ta * std::pow(2.0, -params.alpha);
    c.hi_factor = lnq * ta * std::pow(2.0, params.alpha);
    return c;
}

BesovResult besov_norm_3param(const TensorField2& a, const BesovParams& params,
                              Evaluator evaluator) {
    params.validate();
    if (!a.grid().is_uniform()) throw ParameterError("besov_norm_3param: uniform grid required");
    const std::size_t n = a.n();
    const std::size_t cells = n - 1;
    const double mesh = a.grid().mesh();
    const double p = params.p;

    // M(u, v) with offsets u = j, v = k (grid units), then prof[k] is the
    // running sup over all u <= v <= k.
    std::vector<double> prof(cells + 1, 0.0);
    std::vector<double> slice(n);
    std::vector<double> block(a.stride());
    double run = 0.0;
    for (std::size_t k = 1; k <= cells; ++k) {
        for (std::size_t j = 0; j <= k; ++j) {
            std::size_t m = 0;
            const std::size_t last = std::isinf(p) ? (n - k) : (n - 1 - k);
            for (std::size_t i = 0; i < last; ++i) {
                a.delta(i, i + j, i + k, block.data());
                slice[m++] = frobenius(block.data(), block.size());
            }
            double val;
            if (std::isinf(p)) {
                val = kernels::max_val(slice.data(), m);
            } else {
                val = std::pow(mesh * kernels::sum_pow(slice.data(), m, p), 1.0 / p);
            }
            run = std::max(run, val);
        }
        prof[k] = run;
    }

    BesovResult out;
    out.evaluator = evaluator;
    const std::size_t nlev = dyadic_level_count(cells);
    out.levels = nlev + 1;
    if (evaluator == Evaluator::quadrature) {
        out.norm = step_integral(prof, mesh, cells, params.alpha, params.q);
        return out;
    }
    std::vector<double> terms;
    for (std::size_t lev = 0; lev <= nlev; ++lev) {
        const double t = a.grid().horizon() * std::pow(0.5, static_cast<double>(lev));
        const std::size_t k = offset_floor(t, mesh, cells);
        if (k < 1) break;
        terms.push_back(std::pow(2.0, static_cast<double>(lev) * params.alpha) * prof[k]);
    }
    out.norm = q_aggregate(terms, params.q);
    return out;
}

namespace {

void require(bool cond, const char* what) {
    if (!cond) throw ParameterError(std::string("embedding_constant: hypothesis failed: ") + what);
}

} // namespace

double embedding_constant(EmbeddingLemma lemma, const EmbeddingArgs& args,
                          bool unsafe_extrapolate) {
    switch (lemma) {
        case EmbeddingLemma::norm_equivalence: {
            require(args.alpha > 0 && args.alpha <= 1.0, "alpha in (0, 1]");
            require(args.rho > 0, "rho > 0");
            require(args.p > 0 && args.q > 0, "p, q > 0");
            const double rt = rho_tilde(args.rho, args.p, args.q);
            return std::pow(std::pow(2.0, args.alpha * rt) - 1.0, -1.0 / rt);
        }
        case EmbeddingLemma::alpha_q: {
            require(args.alpha > 0 && args.alpha_tilde > args.alpha, "alpha < alpha~");
            require(args.q > 0 && args.q_tilde >= args.q, "q <= q~");
            const double da = args.alpha_tilde - args.alpha;
            // Constants for the dyadic-sum evaluator (Hoelder across levels).
            if (args.q == args.q_tilde || std::isinf(args.q)) return 1.0;
            if (std::isinf(args.q_tilde))
                return std::pow(1.0 - std::pow(2.0, -da * args.q), -1.0 / args.q);
            const double expo = da * args.q * args.q_tilde / (args.q_tilde - args.q);
            return std::pow(1.0 - std::pow(2.0, -expo),
                            -(args.q_tilde - args.q) / (args.q * args.q_tilde));
        }
        case EmbeddingLemma::p: {
            require(args.p > 0 && args.p_tilde >= args.p, "p <= p~");
            const double inv_p = std::isinf(args.p) ? 0.0 : 1.0 / args.p;
            const double inv_pt = std::isinf(args.p_tilde) ? 0.0 : 1.0 / args.p_tilde;
            return std::pow(args.horizon, inv_p - inv_pt);
        }
        case EmbeddingLemma::q_subadditive: {
            require(args.q_tilde > 0 && args.q >= args.q_tilde, "q~ <= q");
            // l^q monotonicity of the dyadic sums; subadditivity of chi is the
            // lemma's hypothesis but the dyadic evaluator needs no constant.
            return 1.0;
        }
        case EmbeddingLemma::p_alpha: {
            require(args.alpha > 0 && args.alpha <= 1.0, "alpha in (0, 1]");
            require(args.alpha_tilde >= args.alpha && args.alpha_tilde <= 1.0,
                    "alpha <= alpha~ <= 1");
            const double inv_p = std::isinf(args.p) ? 0.0 : 1.0 / args.p;
            const double inv_pt = std::isinf(args.p_tilde) ? 0.0 : 1.0 / args.p_tilde;
            require(std::abs((args.alpha - inv_p) - (args.alpha_tilde - inv_pt)) < 1e-12,
                    "alpha - 1/p == alpha~ - 1/p~");
            if (!unsafe_extrapolate) {
                require(args.p >= 1.0, "p >= 1 (proven range; pass unsafe flag to extrapolate)");
                require(args.p_tilde >= 1.0, "p~ >= 1");
                require(args.q >= 1.0, "q >= 1");
            }
            const double geom = 1.0 / (1.0 - std::pow(2.0, -args.alpha));
            return std::pow(3.0, 1.0 - args.alpha) *
                   (std::pow(2.0, args.alpha_tilde + inv_p + 1.0) * geom +
                    std::pow(2.0, args.alpha_tilde));
        }
    }
    throw ParameterError("embedding_constant: unknown lemma");
}

} // namespace roughkit::besov
