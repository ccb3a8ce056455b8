#pragma once

#include <stdexcept>
#include <string>

namespace wishart {

// Input fails a precondition (non-finite entries, bad shapes, ...).
struct input_domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Evaluation requested exactly on a branch cut; the caller must ask for a
// one-sided limit instead.
struct boundary_value_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Evaluation at (or too close to) a pole of the requested quantity.
struct pole_error : std::domain_error {
    using std::domain_error::domain_error;
};

// An SDE step could not be completed even after the maximum number of
// dt halvings; the caller's base step is too coarse.
struct step_size_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A quadrature or series refinement failed to reach its target accuracy.
struct accuracy_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested parameters are outside the supported (desk-scale) range.
struct unsupported_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace wishart
