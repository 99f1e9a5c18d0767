#pragma once

/// \file
/// Randomised cross-checks of the numeric building blocks: theta against
/// its series oracle and its functional equations, shifted-factorial
/// identities, and LU against cofactor determinants.

#include <cstdint>
#include <string>
#include <vector>

#include "ellipdet/numeric.hpp"

namespace ellipdet {

struct SelfCheck {
  std::string name;
  CScalar lhs;
  CScalar rhs;
  /// rel_diff(lhs, rhs)
  Real residual;
  Real bound;
  bool passed = false;
};

/// Bounds: theta checks 2^-(P-32), determinants 2^-(P-56), factorial
/// identities ctx.tolerance, p = 0 reduction exact.
///
/// One round of every check, drawn from Rng(seed):
///   theta_series        product vs triple-product series, 10^-2 <= |x| <= 10^2
///   quasi_periodicity   theta(px) = -theta(x)/x
///   inversion           theta(1/x) = -theta(x)/x
///   ei                  (x)_{j-1}/(y)_{j-1} = (x/y)^{j-1} (q^{2-j}/x)_{j-1}/(q^{2-j}/y)_{j-1}
///   product_identities  prod (aq^{j-2})_{j-1} = prod (aq^{2n-2j})_{j-1}
///                       = (-a)^{C(n,2)} q^{3C(n,3)} prod (q^{2-2n+j}/a)_{j-1}
///   det_lu_cofactor     random matrix of order 1..6
///   trig_reduction      epoch at p = 0 equals trig_epoch exactly
std::vector<SelfCheck> selftest_round(std::uint64_t seed, double p_modulus_max,
                                      const PrecisionContext& ctx);

}  // namespace ellipdet
