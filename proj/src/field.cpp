#include "roughkit/field.hpp"

#include <random>
#include <string>

namespace roughkit {

namespace {

// Deterministic triple stream for sampled structural checks on large grids.
class TripleSampler {
public:
    explicit TripleSampler(std::size_t n, std::uint64_t seed = 0x9e3779b97f4a7c15ull)
        : n_(n), rng_(seed ^ (0x517cc1b727220a95ull * n)) {}

    void next(std::size_t& i, std::size_t& j, std::size_t& k) {
        std::uniform_int_distribution<std::size_t> u(0, n_ - 1);
        std::size_t a = u(rng_), b = u(rng_), c = u(rng_);
        if (a > b) std::swap(a, b);
        if (b > c) std::swap(b, c);
        if (a > b) std::swap(a, b);
        i = a; j = b; k = c;
    }

private:
    std::size_t n_;
    std::mt19937_64 rng_;
};

constexpr std::size_t kExhaustiveTripleLimit = 64;
constexpr std::size_t kSampleCount = 200000;

} // namespace

bool ScalarField2::rho_subadditive(double rho, double tol) const {
    if (rho <= 0) throw ParameterError("rho_subadditive: rho must be positive");
    auto violates = [&](std::size_t i, std::size_t j, std::size_t k) {
        const double lhs = std::pow(at(i, k), rho);
        const double rhs = std::pow(at(i, j), rho) + std::pow(at(j, k), rho);
        return lhs > rhs + tol * (1.0 + rhs);
    };
    if (n_ <= kExhaustiveTripleLimit) {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i; j < n_; ++j)
                for (std::size_t k = j; k < n_; ++k)
                    if (violates(i, j, k)) return false;
        return true;
    }
    // Adjacent triples first (the usual failure site), then random samples.
    for (std::size_t i = 0; i + 2 < n_; ++i)
        if (violates(i, i + 1, i + 2)) return false;
    TripleSampler s(n_);
    for (std::size_t m = 0; m < kSampleCount; ++m) {
        std::size_t i, j, k;
        s.next(i, j, k);
        if (violates(i, j, k)) return false;
    }
    return true;
}

void Control::validate(double tol) const {
    if (!w_.nonnegative(tol)) throw ConsistencyError("Control: field has negative entries");
    const std::size_t n = w_.n();
    auto violates = [&](std::size_t i, std::size_t j, std::size_t k) {
        return w_.at(i, j) + w_.at(j, k) > w_.at(i, k) + tol * (1.0 + w_.at(i, k));
    };
    auto fail = [&](std::size_t i, std::size_t j, std::size_t k) {
        throw ConsistencyError("Control: superadditivity fails at triple (" +
                               std::to_string(i) + "," + std::to_string(j) + "," +
                               std::to_string(k) + ")");
    };
    if (n <= kExhaustiveTripleLimit) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                for (std::size_t k = j; k < n; ++k)
                    if (violates(i, j, k)) fail(i, j, k);
        return;
    }
    for (std::size_t i = 0; i + 2 < n; ++i)
        if (violates(i, i + 1, i + 2)) fail(i, i + 1, i + 2);
    TripleSampler s(n);
    for (std::size_t m = 0; m < kSampleCount; ++m) {
        std::size_t i, j, k;
        s.next(i, j, k);
        if (violates(i, j, k)) fail(i, j, k);
    }
}

Control combine(double c1, const Control& w1, double c2, const Control& w2) {
    if (c1 < 0 || c2 < 0) throw ParameterError("combine: coefficients must be nonnegative");
    if (!(w1.field().grid() == w2.field().grid()))
        throw DimensionError("combine: controls on different grids");
    ScalarField2 out(w1.field().grid());
    const std::size_t n = out.n();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            out.set(i, j, c1 * w1.at(i, j) + c2 * w2.at(i, j));
    return Control(std::move(out));
}

} // namespace roughkit
