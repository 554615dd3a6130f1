#ifndef MAGQ_VALIDATE_HPP
#define MAGQ_VALIDATE_HPP

#include <string>
#include <vector>

namespace magq {

struct SuiteResult {
    std::string name;
    int checks = 0;
    int failures = 0;
    std::vector<std::string> messages;  // one per failed check
};

/// Runs the invariant suites of every module with a deterministic seed.
std::vector<SuiteResult> run_validation_suites(unsigned seed = 12345);

}  // namespace magq

#endif
