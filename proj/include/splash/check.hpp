#pragma once
#include <stdexcept>
#include <string>

namespace splash {

/// Precondition violation: bad caller input.
inline void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

/// Invariant violation: the computation contradicts an expected identity.
inline void ensure(bool ok, const std::string& msg) {
  if (!ok) throw std::logic_error(msg);
}

}  // namespace splash
