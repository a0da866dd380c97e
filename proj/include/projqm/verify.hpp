#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace projqm {

// Configuration of the self-check suite. The checks draw everything from
// `seed`, so a report is a pure function of this struct.
struct VerifyConfig {
    std::size_t n = 3;
    double kappa = 4.0;
    std::uint64_t seed = 42;
    std::size_t samples = 100000;  // Monte Carlo sample count for the statistical checks
    double tol = 1e-10;            // gate for exact (non-statistical) identities
};

enum class CheckStatus { pass, fail, info, skip };
const char* to_string(CheckStatus s);

struct CheckResult {
    std::string id;           // stable kebab-case identifier
    std::string description;  // one-line statement of the property checked
    double violation;         // observed worst deviation
    double threshold;         // gate: pass iff violation <= threshold
    CheckStatus status;
    std::string note;  // parameters used, margins, failure details
};

struct VerifyReport {
    VerifyConfig config;
    std::vector<CheckResult> checks;
    bool all_passed;  // true iff no check failed
};

VerifyReport run_verify(const VerifyConfig& cfg);

}  // namespace projqm
