#pragma once

#include <cstddef>

// Data-parallel inner loops used by the variation DP and the Besov norm
// evaluators. Each kernel has a scalar reference implementation and an AVX2
// variant; the active one is selected once at startup from CPU features
// (override with ROUGHKIT_FORCE_SCALAR=1). max_plus_update and axpy are
// elementwise and bitwise-identical across variants; the reductions
// reassociate and are equivalence-tested against the scalar reference.

namespace roughkit::kernels {

/// dst[j] = max(dst[j], add + src[j]) for j in [0, m). The variation DP inner loop.
void max_plus_update(double* dst, const double* src, double add, std::size_t m);

/// Sum of x[j]^p over j in [0, m); x must be nonnegative. p = 1 and p = 2 are
/// vectorized, other exponents run a scalar pow loop.
double sum_pow(const double* x, std::size_t m, double p);

/// max over j of x[j] for nonnegative x; 0 for empty input.
double max_val(const double* x, std::size_t m);

double dot(const double* a, const double* b, std::size_t m);

/// y[j] += a * x[j]
void axpy(double a, const double* x, double* y, std::size_t m);

/// Name of the selected implementation: "avx2" or "scalar".
const char* active_isa();

// Scalar reference implementations (always available; used by equivalence tests).
namespace scalar {
void max_plus_update(double* dst, const double* src, double add, std::size_t m);
double sum_pow(const double* x, std::size_t m, double p);
double max_val(const double* x, std::size_t m);
double dot(const double* a, const double* b, std::size_t m);
void axpy(double a, const double* x, double* y, std::size_t m);
} // namespace scalar

} // namespace roughkit::kernels
