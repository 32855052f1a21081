#pragma once

#include <stdexcept>
#include <string>

namespace voa {

// Always-on internal consistency check (assert would vanish in Release, and
// these guard exactness contracts, not debug-only conditions).
inline void check(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("internal check failed: " + what);
}

}  // namespace voa
