#include "roughkit/sewing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace roughkit::sewing {

double zeta(double theta) {
    if (!(theta > 1.0))
        throw ParameterError("zeta: series diverges for theta <= 1");
    constexpr std::size_t K = 20000;
    double s = 0.0;
    for (std::size_t k = K; k >= 1; --k) s += std::pow(static_cast<double>(k), -theta);
    const double kd = static_cast<double>(K);
    s += std::pow(kd, 1.0 - theta) / (theta - 1.0);
    s -= 0.5 * std::pow(kd, -theta);
    s += theta * std::pow(kd, -theta - 1.0) / 12.0;
    s -= theta * (theta + 1.0) * (theta + 2.0) * std::pow(kd, -theta - 3.0) / 720.0;
    return s;
}

std::vector<double> riemann_sum(const TensorField2& a, const Partition& pi) {
    check_partition(pi, a.n());
    std::vector<double> acc(a.stride(), 0.0);
    for (std::size_t j = 0; j + 1 < pi.size(); ++j) {
        const ConstMatView e = a.entry(pi[j], pi[j + 1]);
        for (std::size_t m = 0; m < acc.size(); ++m) acc[m] += e.p[m];
    }
    return acc;
}

double riemann_sum(const ScalarField2& a, const Partition& pi) {
    check_partition(pi, a.n());
    double s = 0;
    for (std::size_t j = 0; j + 1 < pi.size(); ++j) s += a.at(pi[j], pi[j + 1]);
    return s;
}

std::vector<double> riemann_sum(const TensorField2& a, const Partition& pi, std::size_t lo,
                                std::size_t hi) {
    check_partition(pi, a.n());
    if (pi.front() != lo || pi.back() != hi)
        throw ParameterError("riemann_sum: partition does not span the target interval");
    return riemann_sum(a, pi);
}

double var_delta_triples(const TensorField2& a, double r, std::size_t lo, std::size_t hi) {
    if (!(r > 0)) throw ParameterError("var_delta_triples: r must be > 0");
    if (hi >= a.n() || lo > hi) throw IndexError("var_delta_triples: bad interval");
    const std::size_t m = hi - lo + 1;
    if (m > kTripleDpMaxN)
        throw ParameterError("var_delta_triples: interval exceeds the O(m^3) cap");
    if (m < 3) return 0.0;

    // D(i, j): best power-sum over pinned partitions lo = pi_1 < ... < i < j.
    std::vector<double> d(m * m, -1.0);
    auto D = [&](std::size_t i, std::size_t j) -> double& { return d[i * m + j]; };
    for (std::size_t j = 1; j < m; ++j) D(0, j) = 0.0;

    std::vector<double> block(a.stride());
    for (std::size_t j = 1; j + 1 < m; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (D(i, j) < 0) continue;
            for (std::size_t k = j + 1; k < m; ++k) {
                a.delta(lo + i, lo + j, lo + k, block.data());
                const double w = std::pow(frobenius(block.data(), block.size()), r);
                const double cand = D(i, j) + w;
                if (cand > D(j, k)) D(j, k) = cand;
            }
        }
    }
    double best = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) best = std::max(best, D(i, m - 1));
    return std::pow(best, 1.0 / r);
}

double var_delta_triples(const TensorField2& a, double r) {
    return var_delta_triples(a, r, 0, a.n() - 1);
}

double var_delta_triples_bruteforce(const TensorField2& a, double r, std::size_t lo,
                                    std::size_t hi) {
    if (!(r > 0)) throw ParameterError("var_delta_triples_bruteforce: r must be > 0");
    const std::size_t m = hi - lo + 1;
    if (m > 14) throw ParameterError("var_delta_triples_bruteforce: refuses > 14 points");
    if (m < 3) return 0.0;
    std::vector<double> block(a.stride());
    double best = 0.0;
    const std::uint32_t inner = m - 2;
    for (std::uint32_t mask = 0; mask < (1u << inner); ++mask) {
        std::vector<std::size_t> pi{lo};
        for (std::uint32_t b = 0; b < inner; ++b)
            if (mask & (1u << b)) pi.push_back(lo + 1 + b);
        pi.push_back(hi);
        double s = 0;
        for (std::size_t j = 0; j + 2 < pi.size(); ++j) {
            a.delta(pi[j], pi[j + 1], pi[j + 2], block.data());
            s += std::pow(frobenius(block.data(), block.size()), r);
        }
        best = std::max(best, s);
    }
    return std::pow(best, 1.0 / r);
}

namespace {

// Dyadic ladder on [0, n-1] at the given level; deduplicated and pinned.
std::vector<std::size_t> ladder(std::size_t n, std::size_t level) {
    const std::size_t cells = n - 1;
    const std::size_t pieces = std::min<std::size_t>(std::size_t{1} << level, cells);
    std::vector<std::size_t> pts;
    pts.reserve(pieces + 1);
    for (std::size_t k = 0; k <= pieces; ++k) {
        const std::size_t idx = (k * cells + pieces / 2) / pieces;
        if (pts.empty() || idx > pts.back()) pts.push_back(idx);
    }
    pts.front() = 0;
    pts.back() = cells;
    return pts;
}

// Riemann sums of A over the ladder partition restricted to every pair (i, j),
// via prefix sums along the ladder chain.
TensorField2 level_field(const TensorField2& a, const std::vector<std::size_t>& chain) {
    const std::size_t n = a.n();
    const std::size_t stride = a.stride();
    TensorField2 out(a.grid(), a.rows(), a.cols());

    std::vector<double> prefix((chain.size()) * stride, 0.0);
    for (std::size_t m = 0; m + 1 < chain.size(); ++m) {
        const ConstMatView e = a.entry(chain[m], chain[m + 1]);
        for (std::size_t s = 0; s < stride; ++s)
            prefix[(m + 1) * stride + s] = prefix[m * stride + s] + e.p[s];
    }

    // pos[i] = index of the first chain point >= i
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0, c = 0; i < n; ++i) {
        while (c < chain.size() && chain[c] < i) ++c;
        pos[i] = c;
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            MatView dst = out.entry_mut(i, j);
            // chain points strictly inside (i, j)
            std::size_t a0 = pos[i];
            if (a0 < chain.size() && chain[a0] == i) ++a0;
            std::size_t b0 = pos[j];
            if (b0 > 0) --b0; // last chain point < j is chain[b0] if chain[b0] < j
            if (a0 >= chain.size() || chain[a0] >= j || b0 < a0 || chain[b0] <= i) {
                const ConstMatView e = a.entry(i, j);
                for (std::size_t s = 0; s < stride; ++s) dst.p[s] = e.p[s];
                continue;
            }
            const ConstMatView head = a.entry(i, chain[a0]);
            const ConstMatView tail = a.entry(chain[b0], j);
            for (std::size_t s = 0; s < stride; ++s)
                dst.p[s] = head.p[s] + (prefix[b0 * stride + s] - prefix[a0 * stride + s]) +
                           tail.p[s];
        }
    }
    return out;
}

double field_max_distance(const TensorField2& a, const TensorField2& b) {
    double m = 0;
    const std::size_t stride = a.stride();
    const std::size_t total = a.raw().size() / stride;
    for (std::size_t e = 0; e < total; ++e) {
        double s = 0;
        for (std::size_t k = 0; k < stride; ++k) {
            const double d = a.raw()[e * stride + k] - b.raw()[e * stride + k];
            s += d * d;
        }
        m = std::max(m, std::sqrt(s));
    }
    return m;
}

} // namespace

SewingReport sew(const TensorField2& a, double p, double r, double tol) {
    if (!(p > 0 && p <= 1.0)) throw ParameterError("sew: p must lie in (0, 1]");
    if (!(r > 0 && r < p)) throw ParameterError("sew: requires 0 < r < p");
    if (!(tol > 0)) throw ParameterError("sew: tol must be positive");

    const std::size_t n = a.n();
    SewingReport rep(TensorField2(a.grid(), a.rows(), a.cols()));

    if (n <= kTripleDpMaxN) {
        rep.bound_certificate = std::pow(zeta(p / r), 1.0 / p) * var_delta_triples(a, r);
    } else {
        rep.bound_certificate = std::numeric_limits<double>::quiet_NaN();
    }

    TensorField2 prev = level_field(a, ladder(n, 0)); // level 0: the germ itself
    std::size_t level = 1;
    bool reached_full = false;
    while (true) {
        const auto chain = ladder(n, level);
        TensorField2 cur = level_field(a, chain);
        const double d = field_max_distance(cur, prev);
        rep.level_deltas.push_back(d);
        rep.final_delta = d;
        prev = std::move(cur);
        reached_full = (chain.size() == n);
        if (d < tol || reached_full) break;
        ++level;
    }
    rep.refinement_levels_used = level;
    rep.grid_exact = reached_full;
    rep.converged = rep.final_delta < tol;
    rep.sewn = std::move(prev);
    return rep;
}

double control_bound(const ThetaDecomposition& decomp, std::size_t lo, std::size_t hi) {
    decomp.validate();
    if (decomp.terms.empty()) return 0.0;
    const std::size_t n = decomp.terms.front().omega1.field().n();
    if (hi >= n || lo > hi) throw IndexError("control_bound: bad interval");
    if (hi - lo < 1) return 0.0;
    const double theta = decomp.theta;
    double s = 0;
    for (const auto& term : decomp.terms) {
        const double w1 = (hi - 1 >= lo) ? term.omega1.at(lo, hi - 1) : 0.0;
        const double w2 = (lo + 1 <= hi) ? term.omega2.at(lo + 1, hi) : 0.0;
        s += std::pow(w1, term.a1 / theta) * std::pow(w2, term.a2 / theta);
    }
    return zeta(theta) * std::pow(s, theta);
}

} // namespace roughkit::sewing
