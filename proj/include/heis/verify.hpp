#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace heis {

enum class Suite { Metric, Similarity, Theorem, Curvature, GenericExperiment };

Suite suite_from_name(const std::string& name);
std::string suite_name(Suite s);

struct CheckResult {
    std::string name;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool asserted = true;  // informational entries never affect the outcome
    bool pass = true;
};

struct VerifyReport {
    std::string suite;
    std::uint64_t seed = 0;
    long samples = 0;
    std::vector<CheckResult> checks;
    nlohmann::json extra;

    bool passed() const;
};

/// Runs one invariant suite at the given sample scale.  Failures are report
/// content, not exceptions.
VerifyReport run_verify(Suite suite, std::uint64_t seed, long samples);

nlohmann::json to_json(const VerifyReport& report);

}  // namespace heis
