#pragma once

#include <stdexcept>
#include <string>

namespace decomp {

/// Malformed input: bad documents, schema violations, precondition
/// failures on user-supplied data. Maps to exit code 2 at the CLI.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A verification that was guaranteed by the ambient hypotheses failed at
/// runtime (e.g. convex-hull stabilization on something that was claimed
/// to be a decomposition space). Maps to exit code 1 at the CLI.
class CheckError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace decomp
