#include "roughkit/variation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <atomic>

#include "roughkit/kernels.hpp"
#include "roughkit/parallel.hpp"

namespace roughkit::variation {

namespace {
std::atomic<unsigned> g_threads{0};
}

void set_threads(unsigned threads) { g_threads.store(threads); }

namespace {

void check_args(const ScalarField2& chi, double r, std::size_t lo, std::size_t hi) {
    if (!(r >= 1.0))
        throw ParameterError("variation: r must be >= 1 (the partition-supremum DP "
                             "requires superadditivity of x -> x^r)");
    if (hi >= chi.n() || lo > hi) throw IndexError("variation: bad interval");
    for (std::size_t i = lo; i <= hi; ++i)
        for (std::size_t j = i + 1; j <= hi; ++j)
            if (chi.at(i, j) < 0)
                throw ParameterError("variation: field must be nonnegative");
}

} // namespace

VariationResult var_exact(const ScalarField2& chi, double r, std::size_t lo, std::size_t hi) {
    check_args(chi, r, lo, hi);
    const std::size_t m = hi - lo + 1;
    VariationResult out;
    if (m < 2) {
        out.optimal_partition = {lo};
        return out;
    }

    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::vector<double> best(m, 0.0);       // best power-sum of a subsequence ending at lo+j
    std::vector<std::size_t> parent(m, kNone);
    std::vector<std::size_t> count(m, 1);   // points in the witness subsequence

    for (std::size_t j = 1; j < m; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            const double w = std::pow(chi.at(lo + i, lo + j), r);
            const double cand = best[i] + w;
            // Ties resolve toward the coarser witness (fewer points).
            if (cand > best[j] || (cand == best[j] && count[i] + 1 < count[j])) {
                best[j] = cand;
                parent[j] = i;
                count[j] = count[i] + 1;
            }
        }
    }

    std::size_t arg = 0;
    for (std::size_t j = 1; j < m; ++j)
        if (best[j] > best[arg] || (best[j] == best[arg] && count[j] < count[arg])) arg = j;

    out.value = std::pow(best[arg], 1.0 / r);
    for (std::size_t j = arg; j != kNone; j = parent[j]) {
        out.optimal_partition.push_back(lo + j);
        if (parent[j] == kNone) break;
    }
    std::reverse(out.optimal_partition.begin(), out.optimal_partition.end());
    return out;
}

VariationResult var_exact(const GridPath& f, double r, std::size_t lo, std::size_t hi) {
    return var_exact(ScalarField2::from_path_distance(f), r, lo, hi);
}

ScalarField2 var_field(const ScalarField2& chi, double r) {
    const std::size_t n = chi.n();
    if (n > kVarFieldMaxN)
        throw ParameterError("var_field: grid has " + std::to_string(n) +
                             " points, cap is " + std::to_string(kVarFieldMaxN) +
                             " (coarsen first)");
    check_args(chi, r, 0, n - 1);

    const ScalarField2 w = chi.pow(r);
    ScalarField2 out(chi.grid());

    const unsigned workers = thread_count(g_threads.load());
    parallel_for(n - 1, workers, [&](std::size_t a) {
        std::vector<double> best(n, 0.0);
        double run = 0.0;
        for (std::size_t i = a; i < n; ++i) {
            run = std::max(run, best[i]);
            if (i > a) out.set(a, i, std::pow(run, 1.0 / r));
            if (i + 1 < n)
                kernels::max_plus_update(best.data() + i + 1, w.row(i).data() + 1,
                                         best[i], n - 1 - i);
        }
    });
    return out;
}

ScalarField2 var_field(const GridPath& f, double r) {
    return var_field(ScalarField2::from_path_distance(f), r);
}

double dyadic_bound(const ScalarField2& chi, double r, std::size_t levels) {
    if (!(r >= 1.0)) throw ParameterError("dyadic_bound: r must be >= 1");
    if (!chi.grid().is_dyadic())
        throw ParameterError("dyadic_bound: grid must be uniform with 2^K cells");
    const std::size_t cells = chi.n() - 1;
    std::size_t kmax = 0;
    while ((std::size_t{1} << (kmax + 1)) <= cells) ++kmax;
    if ((std::size_t{1} << levels) > cells)
        throw ParameterError("dyadic_bound: level count exceeds grid resolution");

    double total = 0.0;
    for (std::size_t l = 0; l <= levels; ++l) {
        const std::size_t step = cells >> l;
        double s = 0.0;
        for (std::size_t m = 0; m < (std::size_t{1} << l); ++m)
            s += std::pow(chi.at(m * step, (m + 1) * step), r);
        total += std::pow(s, 1.0 / r);
    }
    return std::pow(2.0, (r - 1.0) / r) * total;
}

double dyadic_bound(const ScalarField2& chi, double r) {
    const std::size_t cells = chi.n() - 1;
    std::size_t kmax = 0;
    while ((std::size_t{1} << (kmax + 1)) <= cells) ++kmax;
    return dyadic_bound(chi, r, kmax);
}

double var_bruteforce(const ScalarField2& chi, double r, std::size_t lo, std::size_t hi) {
    check_args(chi, r, lo, hi);
    const std::size_t m = hi - lo + 1;
    if (m > 14)
        throw ParameterError("var_bruteforce: interval longer than 14 points refused");
    double best = 0.0;
    const std::uint32_t full = (m >= 32) ? 0xffffffffu : ((1u << m) - 1u);
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
        if (__builtin_popcount(mask) < 2) continue;
        double s = 0.0;
        std::size_t prev = std::numeric_limits<std::size_t>::max();
        for (std::size_t b = 0; b < m; ++b) {
            if (!(mask & (1u << b))) continue;
            if (prev != std::numeric_limits<std::size_t>::max()) {
                const double v = chi.at(lo + prev, lo + b);
                s += (r == 1.0) ? v : (r == 2.0 ? v * v : std::pow(v, r));
            }
            prev = b;
        }
        best = std::max(best, s);
        if (mask == full) break;
    }
    return std::pow(best, 1.0 / r);
}

} // namespace roughkit::variation
