#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mp {

// One acceptance criterion outcome.  `detail` is a short human-readable
// account of the measured margins; `seconds` is wall time for this criterion
// including any shared artifacts it had to build.
struct CriterionResult {
    int index = 0;
    std::string label;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct CheckOptions {
    int only = 0;                     // 0: run all criteria, else 1..7
    unsigned long long seed = 12345;  // drives the randomized probes
    std::ostream* log = nullptr;      // optional progress stream
};

int criterion_count();
std::string criterion_label(int index);

// Runs the requested criteria in order and returns their results.  Heavy
// intermediates (coefficient tables, Fourier series) are built once and
// shared between criteria within one call.
std::vector<CriterionResult> run_acceptance_suite(const CheckOptions& opt = {});

} // namespace mp
