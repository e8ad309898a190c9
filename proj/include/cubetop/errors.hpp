#pragma once

#include <stdexcept>
#include <string>

namespace cubetop {

// Invalid input data: malformed tables, arity mismatches, broken invariants.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// An explicit resource cap (enumeration size, search nodes, dimension) was hit.
// Callers must treat this as "no answer", never as a negative answer.
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cubetop
