#ifndef WAVELAB_ERRORS_HPP
#define WAVELAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wavelab {

// Error taxonomy. Callers usually only distinguish bad inputs
// (SpecError/DataError/ConfigError) from failures of a computation
// (StabilityError/OverflowError/CoverageError).

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A request that contradicts the problem contract (wrong orientation,
// mismatched sample counts, invalid parameters).
struct SpecError : Error {
    using Error::Error;
};

// Non-finite or otherwise unusable numeric input.
struct DataError : Error {
    using Error::Error;
};

// Scenario file rejected during validation.
struct ConfigError : Error {
    using Error::Error;
};

// The nodal solve degenerated (determinant under threshold).
struct StabilityError : Error {
    using Error::Error;
};

// Non-finite values produced during time stepping.
struct OverflowError : Error {
    using Error::Error;
};

// A characteristic or query left the available lattice/history.
struct CoverageError : Error {
    using Error::Error;
};

// Grid too coarse to resolve a requested kernel.
struct ResolutionError : Error {
    using Error::Error;
};

// Not enough usable samples for a fit or a stencil.
struct InsufficientDataError : Error {
    using Error::Error;
};

} // namespace wavelab

#endif
