#pragma once

#include <stdexcept>
#include <string>

namespace trianglecount {

// Input text that does not conform to a file format or expression grammar.
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Precondition violation: mismatched degrees, an element outside the group,
// a subgroup that is not contained in the claimed overgroup, and so on.
struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A computation that would exceed the documented size limits.
struct resource_limit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact arithmetic produced something structurally impossible, e.g. a
// character-sum reduction that is not a nonnegative integer.  This always
// points at corrupted input data rather than at a caller mistake.
struct integrity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace trianglecount
