#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "roughkit/field.hpp"
#include "roughkit/holder.hpp"
#include "roughkit/path.hpp"
#include "roughkit/sewing.hpp"

namespace roughkit::young {

/// Solver configuration for the Young regime r in [1, 2), r < 1 + alpha.
struct YoungConfig {
    double r = 1.5;
    double picard_tol = 1e-10;
    std::size_t max_iterations = 200;
    double contraction_slack = 0.05; // diagnostic trips above 1/2 + slack
    std::size_t max_window_cells = 512;

    void validate(double alpha) const {
        if (!(r >= 1.0 && r < 2.0)) throw ParameterError("YoungConfig: r must be in [1, 2)");
        if (!(alpha > 0 && alpha <= 1.0)) throw ParameterError("YoungConfig: alpha in (0, 1]");
        if (!(r < 1.0 + alpha)) throw ParameterError("YoungConfig: need r < 1 + alpha");
        if (!(picard_tol > 0)) throw ParameterError("YoungConfig: tol must be positive");
    }
    double theta(double alpha) const { return (1.0 + alpha) / r; }
    double csew(double alpha) const {
        const double th = theta(alpha);
        return std::pow(2.0, th - 1.0) * sewing::zeta(th);
    }
};

/// Young integral of a matrix path against a vector path: the grid sewing of
/// the germ Y_s X(s,t). z(s,t) is the exact grid value (additive); when the
/// grid admits the O(n^3) sweep, bound(s,t) = zeta(theta) V^{r1}Y_{[s,t)}
/// V^{r2}X_{(s,t]} with half-open variations as grid-adjacent trims.
struct YoungIntegral {
    TensorField2 z;
    std::optional<ScalarField2> bound;
    double theta = 0.0;
};

YoungIntegral young_integral(const MatrixPath& y, const GridPath& x, double r1, double r2,
                             bool with_bound = true);

/// The three explicit smallness roots and their minimum.
struct Smallness {
    double eps_apriori = 0.0;   // 2^{alpha+theta-1} zeta Phi_alpha eps^alpha <= Phi0^{1-alpha}
    double eps_phi1 = 0.0;      // 2^{theta-1} zeta Phi1 eps <= 1/8
    double eps_phi1alpha = 0.0; // 2^{theta-1} zeta 2^alpha Phi0^alpha Phi1a/(1+a) eps^{1+a} <= 1/8
    double value() const { return std::min({eps_apriori, eps_phi1, eps_phi1alpha}); }
};

Smallness smallness_breakdown(const holder::HolderFunction& phi, double r);
double smallness_epsilon(const holder::HolderFunction& phi, double r);

struct WindowLog {
    std::size_t lo = 0, hi = 0;
    double epsilon = 0.0;
    double vr_x = 0.0;
    std::size_t iterations = 0;
    double final_metric = 0.0;
    std::vector<double> contraction_factors;
};

struct YoungSolution {
    GridPath y;
    std::vector<WindowLog> windows;
};

/// Picard solver: greedily splits [0, T] into maximal windows with
/// V^r X < epsilon, iterates Y -> y0 + int phi(Y) dX from the constant path
/// under the metric d(Y, Y~) = max_I V^r(DeltaY)_I / V^r X_I, asserts
/// membership in the solution space V^r Y_I <= 2 Phi0 V^r X_I, and
/// concatenates the windows.
YoungSolution young_solve(const holder::HolderFunction& phi, const GridPath& x,
                          const Vec& y0, const YoungConfig& cfg);

/// Difference data for the Lipschitz theorem; the Delta phi norms are declared
/// inputs, probed for sanity elsewhere.
struct PhiDifference {
    double sup = 0.0;     // ||phi - phi~||_sup
    double c_alpha = 0.0; // ||phi - phi~||_{C^alpha}
};

struct LipschitzReport {
    LipschitzReport(GridPath solution, GridPath solution_tilde)
        : y(std::move(solution)), y_tilde(std::move(solution_tilde)) {}

    double gamma = 0.0;           // explicit constant from the stability theorem
    double epsilon = 0.0;
    double max_ratio = 0.0;       // max over intervals of LHS / RHS
    std::size_t intervals_checked = 0;
    std::size_t violations = 0;   // LHS > RHS beyond tolerance
    GridPath y;
    GridPath y_tilde;
};

/// Solves both equations under a common smallness radius, computes the
/// explicit gamma of the stability theorem, and verifies
/// V^r(DeltaY)_I <= gamma V^r X_I + 2 Phi0 V^r(DeltaX)_I on every interval.
LipschitzReport young_lipschitz_gamma(const holder::HolderFunction& phi,
                                      const holder::HolderFunction& phi_tilde,
                                      const GridPath& x, const GridPath& x_tilde,
                                      const Vec& y0, const Vec& y0_tilde,
                                      const PhiDifference& dphi, const YoungConfig& cfg);

/// Pointwise 4-point Taylor bound: returns (lhs, rhs) of
/// |Delta(phi(Y_t) - phi(Y_s))| <= |Dphi|_sup |DeltaY_{s,t}|
///   + |Dphi|_{C^a}/(1+a) (|Y_{s,t}|^a + |Y~_{s,t}|^a) |DeltaY_s|
///   + |Delta phi|_{C^a} |Y~_{s,t}|^a.
std::pair<double, double> four_point_taylor(const holder::HolderFunction& phi,
                                            const holder::HolderFunction& phi_tilde,
                                            const Vec& ys, const Vec& yt, const Vec& yts,
                                            const Vec& ytt, double dphi_c_alpha);

} // namespace roughkit::young
