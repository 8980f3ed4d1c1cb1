// roughkit CLI: thin wrappers over the library. No numerical logic lives here.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include "roughkit/besov.hpp"
#include "roughkit/generators.hpp"
#include "roughkit/io.hpp"
#include "roughkit/rde.hpp"
#include "roughkit/sewing.hpp"
#include "roughkit/variation.hpp"
#include "roughkit/verify.hpp"
#include "roughkit/version.hpp"
#include "roughkit/young.hpp"

namespace {

using roughkit::io::json;

double parse_extended(const std::string& s) {
    if (s == "inf" || s == "Inf" || s == "INF") return roughkit::besov::kInf;
    return std::stod(s);
}

// Every artifact gets a sibling manifest; re-running a manifest's command
// reproduces the artifact bitwise on one platform.
void write_manifest(const std::string& output, const std::string& subcommand,
                    const std::map<std::string, std::string>& params,
                    const std::vector<std::string>& inputs, long long seed = -1) {
    json m;
    m["subcommand"] = subcommand;
    m["parameters"] = params;
    m["library_version"] = roughkit::kVersion;
    if (seed >= 0) m["seed"] = seed;
    json hashes;
    for (const auto& f : inputs) hashes[f] = roughkit::io::file_hash(f);
    m["input_hashes"] = hashes;
    roughkit::io::write_json(m, output + ".manifest.json");
}

void emit(const json& j, const std::string& out) {
    if (out.empty())
        std::cout << j.dump(2) << "\n";
    else
        roughkit::io::write_json(j, out);
}

roughkit::holder::SmoothFunction21 parse_phi(const std::string& spec) {
    const std::string prefix = "builtin:";
    if (spec.rfind(prefix, 0) != 0)
        throw roughkit::ParameterError("only builtin:<name> nonlinearities are supported");
    return roughkit::holder::builtin(spec.substr(prefix.size()));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"roughkit: p-variation, two-parameter Besov norms, sewing, and "
                 "Young/rough differential equations on grid paths"};
    app.require_subcommand(1);

    unsigned threads = 0;
    app.add_option("--threads", threads, "workers for parallel sweeps (0 = ROUGHKIT_THREADS)");

    // gen-paths
    auto* gen = app.add_subcommand("gen-paths", "deterministic test paths");
    std::string gen_kind = "gaussian_walk", gen_out;
    std::uint64_t gen_seed = 0;
    std::size_t gen_n = 128, gen_dim = 1;
    double gen_hurst = 0.5, gen_amp = 1.0, gen_horizon = 1.0;
    gen->add_option("--kind", gen_kind, "gaussian_walk|fbm_cholesky|polynomial|trig|zigzag");
    gen->add_option("--seed", gen_seed);
    gen->add_option("--n", gen_n, "cell count");
    gen->add_option("--dim", gen_dim);
    gen->add_option("--hurst", gen_hurst, "Hurst index for fbm_cholesky");
    gen->add_option("--amplitude", gen_amp);
    gen->add_option("--horizon", gen_horizon);
    gen->add_option("-o,--output", gen_out)->required();

    // lift
    auto* lift = app.add_subcommand("lift", "canonical level-2 lift of a path");
    std::string lift_path, lift_rule = "left_point", lift_out;
    lift->add_option("--path", lift_path)->required();
    lift->add_option("--rule", lift_rule, "left_point|linear");
    lift->add_option("-o,--output", lift_out)->required();

    // variation
    auto* var = app.add_subcommand("variation", "exact r-variation via dynamic programming");
    std::string var_path, var_out;
    double var_r = 2.0;
    bool var_field_flag = false;
    std::vector<std::size_t> var_interval;
    var->add_option("--path", var_path)->required();
    var->add_option("--r", var_r)->required();
    var->add_flag("--field", var_field_flag, "emit the full local-variation field");
    var->add_option("--interval", var_interval, "index interval a b")->expected(2);
    var->add_option("-o,--output", var_out);

    // besov
    auto* bes = app.add_subcommand("besov", "two-parameter Besov norm");
    std::string bes_path, bes_field, bes_out, bes_p = "inf", bes_q = "inf",
                bes_eval = "dyadic";
    double bes_alpha = 0.5;
    bool bes_star = false;
    bes->add_option("--path", bes_path);
    bes->add_option("--field", bes_field, "two-parameter field JSON instead of a path");
    bes->add_option("--alpha", bes_alpha)->required();
    bes->add_option("--p", bes_p);
    bes->add_option("--q", bes_q);
    bes->add_flag("--star", bes_star, "star norm (no sup over translates)");
    bes->add_option("--evaluator", bes_eval, "dyadic|quadrature");
    bes->add_option("-o,--output", bes_out);

    // sew
    auto* sew_cmd = app.add_subcommand("sew", "dyadic-refinement sewing of a germ");
    std::string sew_germ, sew_out;
    double sew_p = 1.0, sew_r = 0.5, sew_tol = 1e-8;
    bool sew_emit_field = false;
    sew_cmd->add_option("--germ", sew_germ)->required();
    sew_cmd->add_option("--p", sew_p);
    sew_cmd->add_option("--r", sew_r);
    sew_cmd->add_option("--tol", sew_tol);
    sew_cmd->add_flag("--emit-field", sew_emit_field, "include the sewn field in the report");
    sew_cmd->add_option("-o,--output", sew_out);

    // young-solve
    auto* ys = app.add_subcommand("young-solve", "Picard solver for Young ODEs");
    std::string ys_phi, ys_x, ys_out;
    std::vector<double> ys_y0{0.0};
    double ys_r = 1.5, ys_alpha = 1.0, ys_tol = 1e-10;
    ys->add_option("--phi", ys_phi, "builtin:<name>")->required();
    ys->add_option("--X", ys_x)->required();
    ys->add_option("--y0", ys_y0);
    ys->add_option("--r", ys_r);
    ys->add_option("--alpha", ys_alpha, "Hoelder exponent (must match the builtin)");
    ys->add_option("--tol", ys_tol);
    ys->add_option("-o,--output", ys_out)->required();

    // rde-solve
    auto* rs = app.add_subcommand("rde-solve", "Picard solver for level-2 RDEs");
    std::string rs_phi, rs_rough, rs_out;
    std::vector<double> rs_y0{0.0};
    double rs_r = 2.5, rs_alpha = 1.0, rs_tol = 1e-10, rs_c = 9.0;
    rs->add_option("--phi", rs_phi, "builtin:<name>")->required();
    rs->add_option("--rough", rs_rough, "rough path JSON (see lift)")->required();
    rs->add_option("--y0", rs_y0);
    rs->add_option("--r", rs_r);
    rs->add_option("--alpha", rs_alpha);
    rs->add_option("--c", rs_c, "solution-space constant");
    rs->add_option("--tol", rs_tol);
    rs->add_option("-o,--output", rs_out)->required();

    // verify
    auto* ver = app.add_subcommand("verify", "numerical audit of the inequality catalog");
    std::string ver_catalog = "all", ver_out, ver_csv;
    std::size_t ver_seeds = 20;
    std::vector<std::size_t> ver_sizes{256, 512};
    bool ver_unsafe = false;
    ver->add_option("--catalog", ver_catalog, "claim ids, comma separated, or 'all'");
    ver->add_option("--seeds", ver_seeds);
    ver->add_option("--sizes", ver_sizes);
    ver->add_flag("--unsafe-extrapolate", ver_unsafe,
                  "admit conjectural parameter ranges (recorded, never asserted)");
    ver->add_option("-o,--output", ver_out);
    ver->add_option("--csv", ver_csv);

    try {
        app.parse(argc, argv);
        roughkit::variation::set_threads(threads);

        if (*gen) {
            roughkit::verify::PathGenerator g;
            g.kind = roughkit::verify::PathGenerator::kind_from_string(gen_kind);
            g.seed = gen_seed;
            g.dim = gen_dim;
            g.cells = gen_n;
            g.hurst = gen_hurst;
            g.amplitude = gen_amp;
            g.horizon = gen_horizon;
            roughkit::io::write_path_csv(roughkit::verify::gen_path(g), gen_out);
            write_manifest(gen_out, "gen-paths",
                           {{"kind", gen_kind},
                            {"n", std::to_string(gen_n)},
                            {"dim", std::to_string(gen_dim)},
                            {"hurst", roughkit::io::format_double(gen_hurst)},
                            {"amplitude", roughkit::io::format_double(gen_amp)},
                            {"horizon", roughkit::io::format_double(gen_horizon)}},
                           {}, static_cast<long long>(gen_seed));
        } else if (*lift) {
            const auto x = roughkit::io::read_path_csv(lift_path);
            const auto rule = lift_rule == "linear" ? roughkit::rough::LiftRule::linear
                                                    : roughkit::rough::LiftRule::left_point;
            if (lift_rule != "linear" && lift_rule != "left_point")
                throw roughkit::ParameterError("lift: rule must be left_point or linear");
            const auto rp = roughkit::rough::canonical_lift(x, rule);
            roughkit::io::write_json(roughkit::io::roughpath_to_json(rp), lift_out);
            write_manifest(lift_out, "lift", {{"path", lift_path}, {"rule", lift_rule}},
                           {lift_path});
        } else if (*var) {
            const auto f = roughkit::io::read_path_csv(var_path);
            std::size_t lo = 0, hi = f.n() - 1;
            if (!var_interval.empty()) {
                lo = var_interval[0];
                hi = var_interval[1];
            }
            json j;
            if (var_field_flag) {
                const auto vf = roughkit::variation::var_field(f, var_r);
                j["field"] = roughkit::io::scalar_field_to_json(vf);
            }
            const auto res = roughkit::variation::var_exact(f, var_r, lo, hi);
            j["value"] = res.value;
            j["partition"] = res.optimal_partition;
            emit(j, var_out);
            if (!var_out.empty())
                write_manifest(var_out, "variation",
                               {{"path", var_path},
                                {"r", roughkit::io::format_double(var_r)},
                                {"interval", std::to_string(lo) + ":" + std::to_string(hi)},
                                {"field", var_field_flag ? "1" : "0"}},
                               {var_path});
        } else if (*bes) {
            if (bes_path.empty() == bes_field.empty())
                throw roughkit::ParameterError("besov: pass exactly one of --path / --field");
            roughkit::besov::BesovParams prm{bes_alpha, parse_extended(bes_p),
                                             parse_extended(bes_q)};
            const auto mode = bes_star ? roughkit::besov::Mode::star
                                       : roughkit::besov::Mode::standard;
            if (bes_eval != "dyadic" && bes_eval != "quadrature")
                throw roughkit::ParameterError("besov: evaluator must be dyadic or quadrature");
            const auto evaluator = bes_eval == "quadrature"
                                       ? roughkit::besov::Evaluator::quadrature
                                       : roughkit::besov::Evaluator::dyadic;
            roughkit::besov::BesovResult res;
            if (!bes_path.empty()) {
                res = roughkit::besov::besov_norm_path(roughkit::io::read_path_csv(bes_path),
                                                       prm, mode, evaluator);
            } else {
                const auto f = roughkit::io::scalar_field_from_json(
                    roughkit::io::read_json(bes_field));
                res = roughkit::besov::besov_norm(f, prm, mode, evaluator);
            }
            json j;
            j["norm"] = res.norm;
            j["evaluator"] = bes_eval;
            j["levels"] = res.levels;
            emit(j, bes_out);
            if (!bes_out.empty())
                write_manifest(bes_out, "besov",
                               {{"alpha", roughkit::io::format_double(bes_alpha)},
                                {"p", bes_p},
                                {"q", bes_q},
                                {"star", bes_star ? "1" : "0"},
                                {"evaluator", bes_eval}},
                               {bes_path.empty() ? bes_field : bes_path});
        } else if (*sew_cmd) {
            const auto germ = roughkit::io::tensor_field_from_json(
                roughkit::io::read_json(sew_germ));
            const auto rep = roughkit::sewing::sew(germ, sew_p, sew_r, sew_tol);
            json j;
            j["refinement_levels_used"] = rep.refinement_levels_used;
            j["final_delta"] = rep.final_delta;
            j["level_deltas"] = rep.level_deltas;
            j["bound_certificate"] = rep.bound_certificate;
            j["converged"] = rep.converged;
            j["grid_exact"] = rep.grid_exact;
            if (sew_emit_field) j["sewn"] = roughkit::io::tensor_field_to_json(rep.sewn);
            emit(j, sew_out);
            if (!sew_out.empty())
                write_manifest(sew_out, "sew",
                               {{"germ", sew_germ},
                                {"p", roughkit::io::format_double(sew_p)},
                                {"r", roughkit::io::format_double(sew_r)},
                                {"tol", roughkit::io::format_double(sew_tol)}},
                               {sew_germ});
        } else if (*ys) {
            const auto phi = parse_phi(ys_phi);
            if (phi.alpha != ys_alpha)
                throw roughkit::ParameterError("young-solve: --alpha does not match the "
                                               "builtin's Hoelder exponent");
            const auto x = roughkit::io::read_path_csv(ys_x);
            roughkit::young::YoungConfig cfg;
            cfg.r = ys_r;
            cfg.picard_tol = ys_tol;
            const auto sol = roughkit::young::young_solve(phi, x, ys_y0, cfg);
            roughkit::io::write_path_csv(sol.y, ys_out);
            write_manifest(ys_out, "young-solve",
                           {{"phi", ys_phi},
                            {"X", ys_x},
                            {"r", roughkit::io::format_double(ys_r)},
                            {"alpha", roughkit::io::format_double(ys_alpha)},
                            {"tol", roughkit::io::format_double(ys_tol)},
                            {"windows", std::to_string(sol.windows.size())}},
                           {ys_x});
        } else if (*rs) {
            const auto phi = parse_phi(rs_phi);
            if (phi.alpha != rs_alpha)
                throw roughkit::ParameterError("rde-solve: --alpha does not match the "
                                               "builtin's Hoelder exponent");
            const auto rp = roughkit::io::roughpath_from_json(
                roughkit::io::read_json(rs_rough));
            roughkit::rde::RdeConfig cfg;
            cfg.r = rs_r;
            cfg.alpha = rs_alpha;
            cfg.c = rs_c;
            cfg.picard_tol = rs_tol;
            const auto sol = roughkit::rde::rde_solve(phi, rp, rs_y0, cfg);
            json j;
            j["grid"] = sol.y.y().grid().times();
            j["Y"] = sol.y.y().raw();
            j["Yp"] = sol.y.yp().raw();
            json wins = json::array();
            for (const auto& w : sol.windows) {
                json e;
                e["lo"] = w.lo;
                e["hi"] = w.hi;
                e["omega"] = w.omega;
                e["epsilon"] = w.epsilon;
                e["iterations"] = w.iterations;
                e["final_metric"] = w.final_metric;
                e["contraction_factors"] = w.contraction_factors;
                wins.push_back(e);
            }
            j["windows"] = wins;
            roughkit::io::write_json(j, rs_out);
            write_manifest(rs_out, "rde-solve",
                           {{"phi", rs_phi},
                            {"rough", rs_rough},
                            {"r", roughkit::io::format_double(rs_r)},
                            {"alpha", roughkit::io::format_double(rs_alpha)},
                            {"c", roughkit::io::format_double(rs_c)},
                            {"tol", roughkit::io::format_double(rs_tol)}},
                           {rs_rough});
        } else if (*ver) {
            roughkit::verify::SuiteConfig cfg;
            cfg.catalog.clear();
            std::stringstream ss(ver_catalog);
            std::string tok;
            while (std::getline(ss, tok, ',')) cfg.catalog.push_back(tok);
            cfg.seeds = ver_seeds;
            cfg.sizes = ver_sizes;
            cfg.unsafe_extrapolate = ver_unsafe;
            const auto result = roughkit::verify::run_suite(cfg);
            if (!ver_out.empty()) {
                roughkit::verify::write_report_json(result, ver_out);
                write_manifest(ver_out, "verify",
                               {{"catalog", ver_catalog},
                                {"seeds", std::to_string(ver_seeds)},
                                {"unsafe_extrapolate", ver_unsafe ? "1" : "0"}},
                               {});
            }
            if (!ver_csv.empty()) roughkit::verify::write_report_csv(result, ver_csv);
            std::size_t passed = 0;
            for (const auto& r : result.records) passed += r.pass ? 1 : 0;
            std::cout << "records: " << result.records.size() << " (" << passed
                      << " pass), stability pairs: " << result.stability.size()
                      << ", all_pass: " << (result.all_pass ? "yes" : "no") << "\n";
            if (!result.all_pass) return 2;
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1; // usage problems exit 1, --help exits 0
    } catch (const roughkit::ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 1;
    } catch (const roughkit::IndexError& e) {
        std::cerr << "index error: " << e.what() << "\n";
        return 1;
    } catch (const roughkit::DimensionError& e) {
        std::cerr << "type error: " << e.what() << "\n";
        return 1;
    } catch (const roughkit::ConsistencyError& e) {
        std::cerr << "consistency error: " << e.what() << "\n";
        return 2;
    } catch (const roughkit::DiagnosticError& e) {
        std::cerr << "diagnostic failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
