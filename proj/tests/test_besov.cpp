#include <doctest.h>

#include <cmath>
#include <random>

#include "roughkit/besov.hpp"
#include "roughkit/variation.hpp"

using namespace roughkit;
using namespace roughkit::besov;

namespace {

GridPath walk(std::size_t cells, std::uint64_t seed, double t1 = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    TimeGrid g = TimeGrid::uniform(0.0, t1, cells);
    std::vector<double> v(cells + 1);
    const double scale = std::sqrt(t1 / cells);
    for (std::size_t i = 1; i <= cells; ++i) v[i] = v[i - 1] + scale * nd(rng);
    return GridPath::scalar(std::move(g), std::move(v));
}

ScalarField2 linear_chi(std::size_t cells) {
    return ScalarField2::from_function(TimeGrid::uniform(0.0, 1.0, cells),
                                       [](double s, double t) { return t - s; });
}

} // namespace

TEST_CASE("omega_p documented examples") {
    const std::size_t cells = 64;
    SUBCASE("zero field") {
        ScalarField2 z(TimeGrid::uniform(0.0, 1.0, cells));
        CHECK(omega_p(z, 2.0, 1.0) == 0.0);
        CHECK(omega_p(z, kInf, 0.3) == 0.0);
    }
    SUBCASE("chi = t - s, p = inf: Omega(t) = t") {
        const auto chi = linear_chi(cells);
        for (double t : {0.25, 0.5, 1.0})
            CHECK(omega_p(chi, kInf, t) == doctest::Approx(t).epsilon(1e-12));
    }
    SUBCASE("chi = t - s, p = 1, t = 0.5: sup h(1-h) = 0.25") {
        const auto chi = linear_chi(cells);
        CHECK(omega_p(chi, 1.0, 0.5) == doctest::Approx(0.25).epsilon(1e-12));
    }
    SUBCASE("bad arguments") {
        const auto chi = linear_chi(cells);
        CHECK_THROWS_AS(omega_p(chi, 1.0, 0.0), ParameterError);
        CHECK_THROWS_AS(omega_p(chi, 1.0, 1.5), ParameterError);
        ScalarField2 nonuni(TimeGrid(std::vector<double>{0.0, 0.1, 1.0}));
        CHECK_THROWS_AS(omega_p(nonuni, 1.0, 0.5), ParameterError);
    }
}

TEST_CASE("besov_norm documented examples") {
    SUBCASE("constant path increment field is zero") {
        GridPath c = GridPath::scalar(TimeGrid::uniform(0, 1, 32), std::vector<double>(33, 3.0));
        CHECK(besov_norm_path(c, {0.45, 4.0, 4.0}).norm == 0.0);
    }
    SUBCASE("chi = t - s, alpha = 1/2, p = q = inf gives T^(1-alpha) = 1") {
        const auto chi = linear_chi(256);
        CHECK(besov_norm(chi, {0.5, kInf, kInf}).norm == doctest::Approx(1.0).epsilon(1e-12));
        // grid-search cross check via the quadrature evaluator
        const double q = besov_norm(chi, {0.5, kInf, kInf}, Mode::standard,
                                    Evaluator::quadrature).norm;
        CHECK(q == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("path norm is invariant under constant shifts") {
        auto f = walk(128, 5);
        std::vector<double> shifted = f.raw();
        for (auto& v : shifted) v += 17.5;
        GridPath g(f.grid(), 1, std::move(shifted));
        const BesovParams prm{0.45, 4.0, 4.0};
        CHECK(besov_norm_path(f, prm).norm ==
              doctest::Approx(besov_norm_path(g, prm).norm).epsilon(1e-12));
    }
    SUBCASE("parameter validation") {
        const auto chi = linear_chi(16);
        CHECK_THROWS_AS(besov_norm(chi, {-0.5, 2.0, 2.0}), ParameterError);
        CHECK_THROWS_AS(besov_norm(chi, {0.5, 2.0, 0.0}), ParameterError);
    }
}

TEST_CASE("cross-evaluator agreement within the comparability constants") {
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto f = walk(256, seed);
        const auto chi = ScalarField2::from_path_distance(f);
        for (const BesovParams prm :
             {BesovParams{0.45, 4.0, 4.0}, BesovParams{0.3, 2.0, 1.0},
              BesovParams{0.45, 4.0, kInf}, BesovParams{0.6, kInf, 2.0}}) {
            const double s0 = besov_norm(chi, prm).norm;
            const double s1 = dyadic_sum_from_level1(chi, prm);
            const double quad =
                besov_norm(chi, prm, Mode::standard, Evaluator::quadrature).norm;
            const auto c = sum_approximation_constants(prm, chi.grid().horizon());
            CHECK(quad >= c.lo_factor * s1 * (1 - 1e-9));
            CHECK(quad <= c.hi_factor * s0 * (1 + 1e-9));
        }
    }
}

TEST_CASE("norm equivalence sandwich on subadditive fields") {
    for (std::uint64_t seed : {11, 12}) {
        const auto f = walk(128, seed);
        const auto chi = ScalarField2::from_path_distance(f); // 1-subadditive
        for (double alpha : {0.3, 0.45, 0.7}) {
            for (double p : {1.0, 2.0, kInf}) {
                for (double q : {0.75, 1.0, 4.0, kInf}) {
                    const BesovParams prm{alpha, p, q};
                    const double star = besov_norm(chi, prm, Mode::star).norm;
                    const double full = besov_norm(chi, prm, Mode::standard).norm;
                    const double c = embedding_constant(
                        EmbeddingLemma::norm_equivalence,
                        {.alpha = alpha, .p = p, .q = q, .rho = 1.0});
                    CHECK(star <= full * (1 + 1e-9));
                    CHECK(full <= c * star * (1 + 1e-9));
                }
            }
        }
    }
}

TEST_CASE("besov_norm_3param documented examples") {
    SUBCASE("additive field vanishes") {
        const auto f = walk(64, 21);
        const auto a = TensorField2::from_path_increments(f);
        CHECK(besov_norm_3param(a, {0.5, 2.0, 2.0}).norm <= 1e-13);
    }
    SUBCASE("A = (t-s)^2, p = inf: Omega-bar(t) = t^2/2") {
        TimeGrid g = TimeGrid::uniform(0.0, 1.0, 16);
        TensorField2 a(g, 1, 1);
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = i + 1; j < g.size(); ++j) {
                const double d = g.t(j) - g.t(i);
                a.entry_mut(i, j).p[0] = d * d;
            }
        // with q = inf and alpha = 1/2 the level sup sits at the top scale: t^2/2 = 1/2
        CHECK(besov_norm_3param(a, {0.5, kInf, kInf}).norm ==
              doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("Young germ of smooth paths: finite and nonnegative") {
        TimeGrid g = TimeGrid::uniform(0.0, 1.0, 32);
        TensorField2 a(g, 1, 1);
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = i + 1; j < g.size(); ++j) {
                const double s = g.t(i), t = g.t(j);
                a.entry_mut(i, j).p[0] = std::sin(s) * (std::cos(t) - std::cos(s));
            }
        const double v = besov_norm_3param(a, {0.75, 2.0, 2.0}).norm;
        CHECK(v >= 0.0);
        CHECK(std::isfinite(v));
    }
}

TEST_CASE("embedding_constant documented examples and hypothesis checks") {
    CHECK(embedding_constant(EmbeddingLemma::norm_equivalence,
                             {.alpha = 1.0, .p = kInf, .q = kInf, .rho = 1.0}) ==
          doctest::Approx(1.0));
    CHECK(embedding_constant(EmbeddingLemma::p_alpha,
                             {.alpha = 1.0, .alpha_tilde = 1.0, .p = kInf, .p_tilde = kInf,
                              .q = 2.0}) == doctest::Approx(10.0));
    CHECK_THROWS_AS(embedding_constant(EmbeddingLemma::p_alpha,
                                       {.alpha = 0.9, .alpha_tilde = 0.5, .p = 2.0,
                                        .p_tilde = 2.0, .q = 2.0}),
                    ParameterError);
    CHECK_THROWS_AS(embedding_constant(EmbeddingLemma::p_alpha,
                                       {.alpha = 0.5, .alpha_tilde = 1.0, .p = 2.0,
                                        .p_tilde = 1.0, .q = 0.5}),
                    ParameterError);
    CHECK_NOTHROW(embedding_constant(EmbeddingLemma::p_alpha,
                                     {.alpha = 0.5, .alpha_tilde = 1.0, .p = 2.0,
                                      .p_tilde = 1.0, .q = 0.5},
                                     /*unsafe_extrapolate=*/true));
}

TEST_CASE("monotone embeddings hold numerically with the module constants") {
    const auto f = walk(64, 31);
    const auto chi = ScalarField2::from_path_distance(f);

    SUBCASE("alpha, q dependence") {
        struct Case { double a, at, q, qt, p; };
        for (const Case c : {Case{0.4, 0.6, 1.0, 2.0, 2.0}, Case{0.3, 0.5, 2.0, 2.0, 4.0},
                             Case{0.5, 0.8, 2.0, kInf, kInf}}) {
            const double lhs = besov_norm(chi, {c.a, c.p, c.q}).norm;
            const double rhs = besov_norm(chi, {c.at, c.p, c.qt}).norm;
            const double k = embedding_constant(
                EmbeddingLemma::alpha_q,
                {.alpha = c.a, .alpha_tilde = c.at, .q = c.q, .q_tilde = c.qt});
            CHECK(lhs <= k * rhs * (1 + 1e-9));
        }
    }
    SUBCASE("p dependence") {
        for (double p : {1.0, 2.0}) {
            for (double pt : {2.0, 4.0, kInf}) {
                if (pt < p) continue;
                const double lhs = besov_norm(chi, {0.45, p, 2.0}).norm;
                const double rhs = besov_norm(chi, {0.45, pt, 2.0}).norm;
                const double k = embedding_constant(
                    EmbeddingLemma::p,
                    {.p = p, .p_tilde = pt, .horizon = chi.grid().horizon()});
                CHECK(lhs <= k * rhs * (1 + 1e-9));
            }
        }
    }
    SUBCASE("q dependence for subadditive fields") {
        const double lhs = besov_norm(chi, {0.45, 2.0, 4.0}).norm;
        const double rhs = besov_norm(chi, {0.45, 2.0, 1.5}).norm;
        const double k = embedding_constant(EmbeddingLemma::q_subadditive,
                                            {.q = 4.0, .q_tilde = 1.5});
        CHECK(lhs <= k * rhs * (1 + 1e-9));
    }
    SUBCASE("(p, alpha) trade on a monotone subadditive field") {
        // V^r of a distance field is monotone and subadditive
        const auto vf = roughkit::variation::var_field(chi, 2.0);
        const double lhs = besov_norm(vf, {0.5, 2.0, 2.0}, Mode::star).norm;
        const double rhs = besov_norm(vf, {1.0, 1.0, 2.0}, Mode::star).norm;
        const double k = embedding_constant(
            EmbeddingLemma::p_alpha,
            {.alpha = 0.5, .alpha_tilde = 1.0, .p = 2.0, .p_tilde = 1.0, .q = 2.0});
        CHECK(lhs <= k * rhs * (1 + 1e-9));
    }
}

TEST_CASE("trivial nested-norm direction: ||f||_B <= ||V^r f||_B for r <= p") {
    const auto f = walk(64, 41);
    const auto chi = ScalarField2::from_path_distance(f);
    const auto vf = roughkit::variation::var_field(chi, 2.0);
    for (const BesovParams prm : {BesovParams{0.45, 2.0, 2.0}, BesovParams{0.45, 4.0, 1.0}}) {
        CHECK(besov_norm(chi, prm).norm <= besov_norm(vf, prm).norm * (1 + 1e-9));
    }
}
