#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "roughkit/besov.hpp"
#include "roughkit/generators.hpp"
#include "roughkit/io.hpp"
#include "roughkit/variation.hpp"
#include "roughkit/verify.hpp"

using namespace roughkit;
using namespace roughkit::verify;

TEST_CASE("generators: determinism and documented examples") {
    SUBCASE("same seed twice is bitwise identical") {
        const auto a = gen_path({PathGenerator::Kind::gaussian_walk, 7, 2, 64});
        const auto b = gen_path({PathGenerator::Kind::gaussian_walk, 7, 2, 64});
        CHECK(a.raw() == b.raw());
        const auto c = gen_path({PathGenerator::Kind::gaussian_walk, 8, 2, 64});
        CHECK(a.raw() != c.raw());
    }
    SUBCASE("zigzag with 2 cells is [0, 1, 0] scaled") {
        PathGenerator g{PathGenerator::Kind::zigzag, 0, 1, 2};
        g.amplitude = 2.5;
        const auto z = gen_path(g);
        CHECK(z.scalar_value(0) == 0.0);
        CHECK(z.scalar_value(1) == 2.5);
        CHECK(z.scalar_value(2) == 0.0);
    }
    SUBCASE("fbm at H = 1/2 matches the Brownian law through summary statistics") {
        // mean of squared increments over many seeds approaches the mesh
        const std::size_t cells = 128;
        double acc = 0;
        std::size_t cnt = 0;
        for (std::uint64_t s = 0; s < 40; ++s) {
            PathGenerator g{PathGenerator::Kind::fbm_cholesky, s, 1, cells};
            g.hurst = 0.5;
            const auto p = gen_path(g);
            for (std::size_t i = 0; i + 1 <= cells; ++i) {
                const double d = p.scalar_value(i + 1) - p.scalar_value(i);
                acc += d * d;
                ++cnt;
            }
        }
        const double mesh = 1.0 / cells;
        CHECK(acc / cnt == doctest::Approx(mesh).epsilon(0.1));
    }
    SUBCASE("fbm hypothesis checks") {
        PathGenerator g{PathGenerator::Kind::fbm_cholesky, 0, 1, 32};
        g.hurst = 1.5;
        CHECK_THROWS_AS(gen_path(g), ParameterError);
        g.hurst = 0.4;
        g.cells = 4096;
        CHECK_THROWS_AS(gen_path(g), ParameterError);
    }
}

TEST_CASE("run_suite: unknown claim id is rejected") {
    SuiteConfig cfg;
    cfg.catalog = {"thm:DoesNotExist"};
    CHECK_THROWS_AS(run_suite(cfg), ParameterError);
}

TEST_CASE("run_suite: nested-norm audit on a tiny corpus") {
    SuiteConfig cfg;
    cfg.catalog = {"theo:VrBesovEstimate", "intro:trivial-direction"};
    cfg.seeds = 3;
    cfg.sizes = {64, 128};
    const auto result = run_suite(cfg);
    CHECK(result.records.size() == 2 * 3 * 2);
    for (const auto& r : result.records) {
        CHECK(std::isfinite(r.ratio));
        if (r.claim_id == "intro:trivial-direction") {
            CHECK(r.explicit_constant);
            CHECK(r.pass);
            CHECK(r.lhs <= r.rhs * (1 + 1e-9));
        }
    }
    // one stability pair per empirical claim (the trivial direction is explicit)
    CHECK(result.stability.size() == 1);
    for (const auto& s : result.stability) CHECK(s.stable);
    CHECK(result.all_pass);

    SUBCASE("reports are deterministic") {
        const auto again = run_suite(cfg);
        REQUIRE(again.records.size() == result.records.size());
        for (std::size_t i = 0; i < result.records.size(); ++i) {
            CHECK(again.records[i].claim_id == result.records[i].claim_id);
            CHECK(again.records[i].lhs == result.records[i].lhs);
            CHECK(again.records[i].rhs == result.records[i].rhs);
        }
    }

    SUBCASE("report writers produce parsable artifacts") {
        write_report_json(result, "/tmp/roughkit_test_report.json");
        write_report_csv(result, "/tmp/roughkit_test_report.csv");
        const auto j = io::read_json("/tmp/roughkit_test_report.json");
        CHECK(j.at("records").size() == result.records.size());
        std::remove("/tmp/roughkit_test_report.json");
        std::remove("/tmp/roughkit_test_report.csv");
    }
}

TEST_CASE("run_suite: rough-path claims on a tiny corpus") {
    SuiteConfig cfg;
    cfg.catalog = {"lem:BesovRPAreVariationRP", "prop:Vr-Besov-Embedding-RYX"};
    cfg.seeds = 2;
    cfg.sizes = {64};
    const auto result = run_suite(cfg);
    CHECK(result.records.size() == 2 * (5 + 6)); // incl. the G2/G3 proof routes
    for (const auto& r : result.records) CHECK(std::isfinite(r.ratio));
}

TEST_CASE("zero path gives zero lhs and rhs records that pass") {
    // the degenerate sanity case from the spec: everything vanishes
    TimeGrid g = TimeGrid::uniform(0.0, 1.0, 32);
    const GridPath zero = GridPath::scalar(g, std::vector<double>(33, 0.0));
    const auto chi = ScalarField2::from_path_distance(zero);
    const auto vf = variation::var_field(chi, 2.5);
    const besov::BesovParams prm{0.45, 4.0, 4.0};
    CHECK(besov::besov_norm(chi, prm).norm == 0.0);
    CHECK(besov::besov_norm(vf, prm).norm == 0.0);
}
