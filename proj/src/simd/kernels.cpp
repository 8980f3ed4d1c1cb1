#include "roughkit/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace roughkit::kernels {

namespace scalar {

void max_plus_update(double* dst, const double* src, double add, std::size_t m) {
    for (std::size_t j = 0; j < m; ++j) dst[j] = std::max(dst[j], add + src[j]);
}

double sum_pow(const double* x, std::size_t m, double p) {
    double s = 0;
    if (p == 1.0) {
        for (std::size_t j = 0; j < m; ++j) s += x[j];
    } else if (p == 2.0) {
        for (std::size_t j = 0; j < m; ++j) s += x[j] * x[j];
    } else {
        for (std::size_t j = 0; j < m; ++j) s += std::pow(x[j], p);
    }
    return s;
}

double max_val(const double* x, std::size_t m) {
    double v = 0;
    for (std::size_t j = 0; j < m; ++j) v = std::max(v, x[j]);
    return v;
}

double dot(const double* a, const double* b, std::size_t m) {
    double s = 0;
    for (std::size_t j = 0; j < m; ++j) s += a[j] * b[j];
    return s;
}

void axpy(double a, const double* x, double* y, std::size_t m) {
    for (std::size_t j = 0; j < m; ++j) y[j] += a * x[j];
}

} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void max_plus_update(double* dst, const double* src, double add, std::size_t m);
double sum_pow(const double* x, std::size_t m, double p);
double max_val(const double* x, std::size_t m);
double dot(const double* a, const double* b, std::size_t m);
void axpy(double a, const double* x, double* y, std::size_t m);
} // namespace avx2
#endif

namespace {

struct Dispatch {
    void (*max_plus_update)(double*, const double*, double, std::size_t);
    double (*sum_pow)(const double*, std::size_t, double);
    double (*max_val)(const double*, std::size_t);
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    const char* name;
};

Dispatch select() {
    Dispatch d{scalar::max_plus_update, scalar::sum_pow, scalar::max_val,
               scalar::dot, scalar::axpy, "scalar"};
    const char* force = std::getenv("ROUGHKIT_FORCE_SCALAR");
    if (force && force[0] == '1') return d;
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        d = {avx2::max_plus_update, avx2::sum_pow, avx2::max_val,
             avx2::dot, avx2::axpy, "avx2"};
    }
#endif
    return d;
}

const Dispatch& table() {
    static const Dispatch d = select();
    return d;
}

} // namespace

void max_plus_update(double* dst, const double* src, double add, std::size_t m) {
    table().max_plus_update(dst, src, add, m);
}
double sum_pow(const double* x, std::size_t m, double p) { return table().sum_pow(x, m, p); }
double max_val(const double* x, std::size_t m) { return table().max_val(x, m); }
double dot(const double* a, const double* b, std::size_t m) { return table().dot(a, b, m); }
void axpy(double a, const double* x, double* y, std::size_t m) { table().axpy(a, x, y, m); }
const char* active_isa() { return table().name; }

} // namespace roughkit::kernels
