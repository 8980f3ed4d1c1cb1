// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma and
// must only be entered through the runtime dispatch in kernels.cpp.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace roughkit::kernels::avx2 {

void max_plus_update(double* dst, const double* src, double add, std::size_t m) {
    const __m256d va = _mm256_set1_pd(add);
    std::size_t j = 0;
    for (; j + 8 <= m; j += 8) {
        __m256d s0 = _mm256_add_pd(va, _mm256_loadu_pd(src + j));
        __m256d s1 = _mm256_add_pd(va, _mm256_loadu_pd(src + j + 4));
        __m256d d0 = _mm256_max_pd(_mm256_loadu_pd(dst + j), s0);
        __m256d d1 = _mm256_max_pd(_mm256_loadu_pd(dst + j + 4), s1);
        _mm256_storeu_pd(dst + j, d0);
        _mm256_storeu_pd(dst + j + 4, d1);
    }
    for (; j + 4 <= m; j += 4) {
        __m256d s0 = _mm256_add_pd(va, _mm256_loadu_pd(src + j));
        _mm256_storeu_pd(dst + j, _mm256_max_pd(_mm256_loadu_pd(dst + j), s0));
    }
    for (; j < m; ++j) dst[j] = std::max(dst[j], add + src[j]);
}

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_max_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

} // namespace

double sum_pow(const double* x, std::size_t m, double p) {
    std::size_t j = 0;
    if (p == 1.0) {
        __m256d acc = _mm256_setzero_pd();
        for (; j + 4 <= m; j += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + j));
        double s = hsum(acc);
        for (; j < m; ++j) s += x[j];
        return s;
    }
    if (p == 2.0) {
        __m256d acc = _mm256_setzero_pd();
        for (; j + 4 <= m; j += 4) {
            __m256d v = _mm256_loadu_pd(x + j);
            acc = _mm256_fmadd_pd(v, v, acc);
        }
        double s = hsum(acc);
        for (; j < m; ++j) s += x[j] * x[j];
        return s;
    }
    double s = 0; // general exponent stays scalar: pow dominates either way
    for (; j < m; ++j) s += std::pow(x[j], p);
    return s;
}

double max_val(const double* x, std::size_t m) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= m; j += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(x + j));
    double v = hmax(acc);
    for (; j < m; ++j) v = std::max(v, x[j]);
    return v;
}

double dot(const double* a, const double* b, std::size_t m) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= m; j += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j), acc);
    double s = hsum(acc);
    for (; j < m; ++j) s += a[j] * b[j];
    return s;
}

void axpy(double a, const double* x, double* y, std::size_t m) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t j = 0;
    for (; j + 4 <= m; j += 4) {
        __m256d vy = _mm256_loadu_pd(y + j);
        _mm256_storeu_pd(y + j, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + j), vy));
    }
    for (; j < m; ++j) y[j] += a * x[j];
}

} // namespace roughkit::kernels::avx2

#endif // x86_64
