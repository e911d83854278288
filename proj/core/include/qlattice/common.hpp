#pragma once

#include <stdexcept>
#include <string>

namespace qlattice {

/// Malformed or mathematically invalid input (bad file, failed precondition).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Internal consistency failure: an invariant the engine itself guarantees
/// was observed to be false. Always a bug or corrupted state.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw InputError(msg);
}

inline void ensure(bool cond, const std::string& msg) {
  if (!cond) throw InternalError(msg);
}

}  // namespace qlattice
