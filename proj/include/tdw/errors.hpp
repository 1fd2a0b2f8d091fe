#pragma once

#include <stdexcept>
#include <string>

namespace tdw {

// Malformed input: bad files, invalid complexes, out-of-range arguments.
// The CLI maps this to exit code 2.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A mathematical precondition or assertion failed: a theorem hypothesis
// is not met, a verified check came out false, or a search budget ran
// out. The CLI maps this to exit code 1.
struct MathError : std::runtime_error {
  explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tdw
