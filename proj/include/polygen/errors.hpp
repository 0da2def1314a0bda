#pragma once

#include <stdexcept>
#include <string>

namespace polygen {

// Raised when postprocessing cannot restore validity within the round limit.
struct RepairFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a sampler rejection loop exceeds its attempt cap.
struct SamplingExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MutationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CrossoverFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A structure handed to an estimator breaks that estimator's input contract.
struct EstimatorContractViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Configuration document failed schema validation. `field` names the offending key path.
struct ConfigError : std::runtime_error {
    ConfigError(std::string field_path, const std::string& what)
        : std::runtime_error(field_path + ": " + what), field(std::move(field_path)) {}
    std::string field;
};

}  // namespace polygen
