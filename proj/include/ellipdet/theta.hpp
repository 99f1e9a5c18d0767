#pragma once

/// \file
/// The multiplicative theta function
///
///     theta(x) = prod_{j>=0} (1 - p^j x)(1 - p^{j+1}/x),   |p| < 1,
///
/// elliptic shifted factorials (a)_k = theta(a) theta(aq) ... theta(aq^{k-1})
/// and their trigonometric (p = 0) counterparts.
///
/// theta_product is the evaluation route used by every identity.
/// theta_series (Jacobi triple product) is an independent oracle and must
/// not be called from identity evaluators.

#include <span>
#include <vector>

#include "ellipdet/numeric.hpp"

namespace ellipdet {

/// Nome p and base q. Construction enforces |p| < 1 and q != 0.
class EllipticBase {
 public:
  EllipticBase(CScalar p, CScalar q);

  [[nodiscard]] const CScalar& p() const { return p_; }
  [[nodiscard]] const CScalar& q() const { return q_; }
  [[nodiscard]] bool trigonometric() const { return p_.is_zero(); }

 private:
  CScalar p_;
  CScalar q_;
};

/// |p| above which evaluation is refused (the factor count explodes).
inline constexpr double kMaxNomeModulus = 0.99;
/// Hard cap on the number of product factors.
inline constexpr int kMaxThetaFactors = 1'000'000;

/// Number of product factors J used for theta(x). 1 when p == 0.
int theta_truncation(const CScalar& x, const EllipticBase& base, const PrecisionContext& ctx);

CScalar theta_product(const CScalar& x, const EllipticBase& base, const PrecisionContext& ctx);
CScalar theta_series(const CScalar& x, const EllipticBase& base, const PrecisionContext& ctx);

/// (a)_k. Throws DomainError for k < 0.
CScalar epoch(const CScalar& a, int k, const EllipticBase& base, const PrecisionContext& ctx);

/// (a)_0, (a)_1, ..., (a)_k in one pass.
std::vector<CScalar> epoch_table(const CScalar& a, int k, const EllipticBase& base,
                                 const PrecisionContext& ctx);

/// (a_1, ..., a_m)_k; the empty list gives 1.
CScalar multi_epoch(std::span<const CScalar> as, int k, const EllipticBase& base,
                    const PrecisionContext& ctx);

/// (1 - a)(1 - aq) ... (1 - aq^{k-1}). Throws DomainError for k < 0.
CScalar trig_epoch(const CScalar& a, int k, const CScalar& q);

}  // namespace ellipdet
