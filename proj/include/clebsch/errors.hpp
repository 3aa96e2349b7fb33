#pragma once

#include <stdexcept>
#include <string>

namespace clebsch {

// Caller supplied unusable input (bad parameters, malformed config).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input was well formed but the computation cannot be completed reliably.
struct RefusalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A geometric degeneracy: coinciding branch points, vanishing pencil
// coefficient, separation point on the discriminant locus.
struct DegenerateError : RefusalError {
    using RefusalError::RefusalError;
};

// Trajectory escaped the per-step norm cap.
struct BlowUpError : RefusalError {
    using RefusalError::RefusalError;
};

// Adaptive quadrature could not reach the requested tolerance; carries the
// best estimate obtained before giving up.
struct ToleranceError : RefusalError {
    double best_estimate;
    ToleranceError(const std::string& msg, double best)
        : RefusalError(msg), best_estimate(best) {}
};

// A square-root sheet choice produced a non-real value where a real one was
// required.
struct BranchError : RefusalError {
    using RefusalError::RefusalError;
};

}  // namespace clebsch
