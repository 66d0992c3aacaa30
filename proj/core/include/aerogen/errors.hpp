#pragma once

#include <stdexcept>

namespace aerogen {

// Error taxonomy mirrored by the CLI exit codes: config 2, data 3, io 4.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid or inconsistent run configuration (bad knobs, unknown names).
struct ConfigError : Error {
  using Error::Error;
};

// Inputs that parse but violate a contract (malformed masks, degenerate
// geometry, dimension mismatches, empty pools).
struct DataError : Error {
  using Error::Error;
};

// Filesystem and codec failures.
struct IoError : Error {
  using Error::Error;
};

}  // namespace aerogen
