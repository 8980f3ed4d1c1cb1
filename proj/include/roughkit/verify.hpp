#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "roughkit/generators.hpp"

namespace roughkit::verify {

/// One numerical audit of a paper claim on one corpus sample.
struct InequalityRecord {
    std::string claim_id; // paper anchor
    std::string params;   // parameter tuple, human readable
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;            // lhs / rhs (0 when rhs == 0 and lhs == 0)
    bool explicit_constant = false; // constant folded into rhs; assert lhs <= rhs
    bool pass = true;
    std::string note;
};

/// Ratio-stability summary of an empirical (implicit-constant) claim: the max
/// ratio must move by at most 2x across a doubling of the resolution.
struct StabilitySummary {
    std::string claim_id;
    std::size_t n_small = 0, n_large = 0;
    double max_ratio_small = 0.0, max_ratio_large = 0.0;
    bool stable = true;
};

struct SuiteConfig {
    std::vector<std::string> catalog{"all"};
    std::size_t seeds = 20;
    std::vector<std::size_t> sizes{256, 512};
    bool unsafe_extrapolate = false; // admit conjectural parameter ranges,
                                     // recording but never asserting them
    bool fast_rde = true;            // skip per-iterate solver sweeps inside the suite
};

struct SuiteResult {
    std::vector<InequalityRecord> records;
    std::vector<StabilitySummary> stability;
    bool all_pass = true;
};

/// Claim identifiers known to the suite ("all" expands to this list).
std::vector<std::string> catalog_ids();

/// Runs the requested catalog over the deterministic corpus. Unknown claim ids
/// raise ParameterError (every catalog entry maps to exactly one anchor).
/// Hypothesis-violating parameter tuples are recorded as skipped, never
/// silently evaluated.
SuiteResult run_suite(const SuiteConfig& cfg);

void write_report_json(const SuiteResult& result, const std::string& filename);
void write_report_csv(const SuiteResult& result, const std::string& filename);

} // namespace roughkit::verify
