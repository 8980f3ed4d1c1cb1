#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "roughkit/field.hpp"

namespace roughkit::sewing {

/// zeta(theta) = sum_{k>=1} k^-theta for theta > 1, to absolute error <= 1e-12
/// (partial sum plus Euler-Maclaurin tail).
double zeta(double theta);

/// Partition Riemann sum I^pi A = sum_j A(pi_j, pi_{j+1}), as a flat value block.
std::vector<double> riemann_sum(const TensorField2& a, const Partition& pi);
double riemann_sum(const ScalarField2& a, const Partition& pi);

/// Checks that pi spans [lo, hi] before summing.
std::vector<double> riemann_sum(const TensorField2& a, const Partition& pi, std::size_t lo,
                                std::size_t hi);

/// r-variation of the delta-operator over consecutive triples of pinned
/// partitions of [lo, hi]:
///   sup_pi (sum_j |delta A(pi_j, pi_{j+1}, pi_{j+2})|^r)^(1/r).
/// Any r > 0 is admitted (the sewing lemma uses r < 1). DP over (prev, last)
/// states, O(m^3); guarded at m <= 513 points.
double var_delta_triples(const TensorField2& a, double r, std::size_t lo, std::size_t hi);
double var_delta_triples(const TensorField2& a, double r);

/// Exhaustive oracle for intervals of <= 14 points.
double var_delta_triples_bruteforce(const TensorField2& a, double r, std::size_t lo,
                                    std::size_t hi);

inline constexpr std::size_t kTripleDpMaxN = 513;

/// Result of sewing along the dyadic refinement ladder.
struct SewingReport {
    explicit SewingReport(TensorField2 s) : sewn(std::move(s)) {}

    TensorField2 sewn;                   // I(i,j) at the last evaluated level
    std::size_t refinement_levels_used = 0;
    double final_delta = 0.0;            // max pair distance between last two levels
    std::vector<double> level_deltas;    // one entry per refinement step
    double bound_certificate = 0.0;      // zeta(p/r)^(1/p) * V^r(delta A); NaN if grid too
                                         // large for the triple DP
    bool converged = true;               // false if full grid reached with delta > tol
    bool grid_exact = false;             // last level was the full grid
};

/// Evaluates the Riemann sums of the germ A along dyadic refinements of the
/// grid until successive levels differ by less than tol on every pair, or the
/// full grid is reached (the grid-exact sewing). Requires 0 < r < p <= 1.
SewingReport sew(const TensorField2& a, double p, double r, double tol);

/// One term omega_1^{a1}(s,u) * omega_2^{a2}(u,t) of the delta A bound.
struct ThetaTerm {
    Control omega1;
    Control omega2;
    double a1 = 0.0;
    double a2 = 0.0;
};

/// Decomposition |delta A(s,u,t)| <= sum_n w1_n^{a1_n}(s,u) w2_n^{a2_n}(u,t)
/// with a1_n + a2_n >= theta > 1 for all n.
struct ThetaDecomposition {
    std::vector<ThetaTerm> terms;
    double theta = 0.0;

    void validate() const {
        if (!(theta > 1.0)) throw ParameterError("ThetaDecomposition: theta must be > 1");
        for (const auto& t : terms) {
            if (t.a1 < 0 || t.a2 < 0)
                throw ParameterError("ThetaDecomposition: exponents must be nonnegative");
            if (t.a1 + t.a2 < theta - 1e-12)
                throw ParameterError("ThetaDecomposition: exponent pair sums below theta");
        }
    }
};

/// The sewing theorem's bound over [lo, hi] with one-sided evaluations
/// realized as grid-adjacent trims:
///   zeta(theta) * (sum_n w1^{a1/theta}(lo, hi-1) * w2^{a2/theta}(lo+1, hi))^theta.
double control_bound(const ThetaDecomposition& decomp, std::size_t lo, std::size_t hi);

} // namespace roughkit::sewing
