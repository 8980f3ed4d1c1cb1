#pragma once

#include <cstddef>

#include "roughkit/field.hpp"
#include "roughkit/path.hpp"

namespace roughkit::variation {

/// Exact r-variation over an index interval together with a witness partition.
struct VariationResult {
    double value = 0.0;
    Partition optimal_partition; // absolute grid indices, ties broken toward fewer points
};

/// Exact r-variation of a nonnegative field over [lo, hi]:
/// sup over increasing index subsequences pi of (sum chi(pi_i, pi_{i+1})^r)^{1/r},
/// by dynamic programming in O(m^2). Requires r >= 1.
VariationResult var_exact(const ScalarField2& chi, double r, std::size_t lo, std::size_t hi);

inline VariationResult var_exact(const ScalarField2& chi, double r) {
    return var_exact(chi, r, 0, chi.n() - 1);
}

VariationResult var_exact(const GridPath& f, double r, std::size_t lo, std::size_t hi);
inline VariationResult var_exact(const GridPath& f, double r) {
    return var_exact(f, r, 0, f.n() - 1);
}

/// The local-variation field: entry (i, j) = r-variation of chi over [i, j].
/// One forward DP sweep per left endpoint, O(n^3) total; guarded at n <= 512.
/// The result is monotone in interval inclusion, and subadditive when chi is.
ScalarField2 var_field(const ScalarField2& chi, double r);
ScalarField2 var_field(const GridPath& f, double r);

/// Maximum interval length accepted by var_field.
inline constexpr std::size_t kVarFieldMaxN = 512 + 1;

/// Worker count for the per-left-endpoint var_field sweeps (0 = resolve from
/// ROUGHKIT_THREADS, default single-threaded). Output is identical for any
/// setting: rows are written disjointly.
void set_threads(unsigned threads);

/// Dyadic upper bound for the r-variation of a subadditive field on a uniform
/// dyadic grid: 2^((r-1)/r) * sum_{l=0}^{L} (sum_m chi(block_l,m)^r)^(1/r).
/// Level l splits the horizon into 2^l blocks. Requires cells() = 2^K >= 2^L.
double dyadic_bound(const ScalarField2& chi, double r, std::size_t levels);

/// All levels down to single cells.
double dyadic_bound(const ScalarField2& chi, double r);

/// Exhaustive oracle over all 2^m subsequences; refuses intervals longer than
/// 14 points. Test oracle for var_exact.
double var_bruteforce(const ScalarField2& chi, double r, std::size_t lo, std::size_t hi);

} // namespace roughkit::variation
