#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "roughkit/field.hpp"
#include "roughkit/path.hpp"

namespace roughkit::besov {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Parameters of the two-parameter Besov norm B^alpha_{p,q}.
/// p or q below 1 select the quasi-norm regime; infinity is encoded explicitly.
struct BesovParams {
    double alpha = 0.5;
    double p = kInf;
    double q = kInf;

    void validate() const {
        if (!(alpha > 0)) throw ParameterError("BesovParams: alpha must be > 0");
        if (!(p > 0)) throw ParameterError("BesovParams: p must be > 0");
        if (!(q > 0)) throw ParameterError("BesovParams: q must be > 0");
    }
};

enum class Mode { standard, star };
enum class Evaluator { dyadic, quadrature };

struct BesovResult {
    double norm = 0.0;
    Evaluator evaluator = Evaluator::dyadic;
    std::size_t levels = 0;
};

/// Omega_p(t) = sup over grid offsets h <= t of the left-endpoint Riemann sum
/// (int_0^{T-h} chi(s, s+h)^p ds)^(1/p); sup over s for p = infinity.
/// Requires a uniform grid and t in (0, T].
double omega_p(const ScalarField2& chi, double p, double t);

/// Inner profile a(h) at every grid offset h = k*mesh: a[k] for k = 1..n-1
/// (a[0] = 0). a(h) is the star-mode integrand; Omega is its running maximum.
std::vector<double> omega_profile(const ScalarField2& chi, double p);

/// Besov norm of a nonnegative field. The default evaluator is the dyadic sum
/// (sum_{lev=0}^{N} (2^{lev*alpha} Omega_p(2^-lev T))^q)^(1/q) with
/// N = floor(log2(cells)); the quadrature evaluator integrates the step
/// profile t -> Omega_p(t) exactly piecewise. Star mode replaces Omega by the
/// plain inner profile a (no sup over h).
BesovResult besov_norm(const ScalarField2& chi, const BesovParams& params,
                       Mode mode = Mode::standard,
                       Evaluator evaluator = Evaluator::dyadic);

/// Besov norm of a path: chi(s,t) = |f(t) - f(s)|.
BesovResult besov_norm_path(const GridPath& f, const BesovParams& params,
                            Mode mode = Mode::standard,
                            Evaluator evaluator = Evaluator::dyadic);

/// Three-parameter norm of delta A: the inner sup runs over pairs of offsets
/// u <= v <= t of (int_0^{T-v} |delta A(s, s+u, s+v)|^p ds)^(1/p).
BesovResult besov_norm_3param(const TensorField2& a, const BesovParams& params,
                              Evaluator evaluator = Evaluator::dyadic);

/// Two-sided comparability constants between the quadrature value and the
/// dyadic sums (used by the cross-evaluator tests):
///   lo_factor * S_1 <= quadrature <= hi_factor * S_0,
/// where S_0 sums levels from 0, S_1 from 1.
struct SumApproxConstants {
    double lo_factor = 0.0;
    double hi_factor = 0.0;
};
SumApproxConstants sum_approximation_constants(const BesovParams& params, double horizon);

/// Dyadic sum starting at level 1 (the lower-side sum of the comparability lemma).
double dyadic_sum_from_level1(const ScalarField2& chi, const BesovParams& params,
                              Mode mode = Mode::standard);

enum class EmbeddingLemma {
    norm_equivalence, // ||chi|| <= (2^(alpha*rho~) - 1)^(-1/rho~) ||chi||*
    alpha_q,          // alpha < alpha~, q <= q~
    p,                // p <= p~
    q_subadditive,    // q~ <= q, chi subadditive
    p_alpha,          // alpha <= alpha~, alpha - 1/p = alpha~ - 1/p~ (star norms)
};

struct EmbeddingArgs {
    double alpha = 0, alpha_tilde = 0;
    double p = 0, p_tilde = 0;
    double q = 0, q_tilde = 0;
    double rho = 1.0;
    double horizon = 1.0;
};

/// Explicit constant of the named embedding, valid for the module's dyadic
/// evaluators. Hypothesis violations raise ParameterError naming the failed
/// condition. The p_alpha lemma is proven for p, p~, q in [1, inf]; the
/// conjectural range below 1 is admitted only with unsafe_extrapolate.
double embedding_constant(EmbeddingLemma lemma, const EmbeddingArgs& args,
                          bool unsafe_extrapolate = false);

/// rho~ = min(1, rho, p, q) from the norm-equivalence lemma.
inline double rho_tilde(double rho, double p, double q) {
    return std::min({1.0, rho, p, q});
}

/// The subadditivity exponent of a field: chi(s,t)^rho <= chi(s,u)^rho + chi(u,t)^rho.
struct SubadditivityExponent {
    double rho = 1.0;

    void validate() const {
        if (!(rho > 0)) throw ParameterError("SubadditivityExponent: rho must be > 0");
    }
    double effective(double p, double q) const { return rho_tilde(rho, p, q); }
};

} // namespace roughkit::besov
