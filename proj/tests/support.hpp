#pragma once

#include <string>

#include "ellipdet/numeric.hpp"

namespace testing {

inline ellipdet::PrecisionContext ctx256() { return ellipdet::make_context(256, 32, 1e-35); }

// Complex value from decimal strings, parsed at the current working precision.
inline ellipdet::CScalar dec(const char* re, const char* im = "0") {
  return {ellipdet::Real(std::string(re)), ellipdet::Real(std::string(im))};
}

inline bool within(const ellipdet::Real& residual, double bound) {
  return residual <= ellipdet::Real(bound);
}

inline bool within(const ellipdet::Real& residual, const ellipdet::Real& bound) {
  return residual <= bound;
}

}  // namespace testing
