#pragma once

/// \file
/// Parameter tuples for the identities and the errors raised when they are
/// malformed or degenerate.

#include <string>
#include <vector>

#include "ellipdet/numeric.hpp"
#include "ellipdet/theta.hpp"

namespace ellipdet {

/// A balancing or structural constraint does not hold.
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

/// A denominator theta factor is numerically zero (parameters sit on a pole).
class DegenerateParameters : public Error {
 public:
  explicit DegenerateParameters(std::string factor)
      : Error("degenerate parameters: vanishing denominator factor " + factor),
        factor_(std::move(factor)) {}
  [[nodiscard]] const std::string& factor() const { return factor_; }

 private:
  std::string factor_;
};

/// An evaluation would exceed its work budget.
class CostGuardExceeded : public Error {
 public:
  using Error::Error;
};

/// Determinant transformation parameters: a and b_j, c_j, d_j with b_j c_j d_j
/// independent of j. e = a^2 / (b_1 c_1 d_1) is derived on demand.
struct DtParams {
  EllipticBase base;
  int n = 1;
  CScalar a;
  std::vector<CScalar> b;
  std::vector<CScalar> c;
  std::vector<CScalar> d;

  [[nodiscard]] CScalar e() const;
  /// b_1 c_1 d_1
  [[nodiscard]] CScalar triple_product() const;
  /// Largest rel_residual(b_j c_j d_j, b_1 c_1 d_1).
  [[nodiscard]] Real constraint_residual() const;
  /// Sizes, non-zero entries and the constant-product constraint.
  void validate(const PrecisionContext& ctx) const;
  [[nodiscard]] std::string digest(const PrecisionContext& ctx) const;
};

/// Determinant with entries (b x_j, c/x_j)_{k-1} / (a/(b x_j), a x_j/c)_{k-1}.
struct WdParams {
  EllipticBase base;
  int n = 1;
  CScalar a;
  CScalar b;
  CScalar c;
  std::vector<CScalar> x;

  void validate() const;
  [[nodiscard]] std::string digest(const PrecisionContext& ctx) const;
};

/// Terminating balanced sum; requires a^2 q^{n+1} = b c d e.
struct JsParams {
  EllipticBase base;
  int n = 0;
  CScalar a;
  CScalar b;
  CScalar c;
  CScalar d;
  CScalar e;

  [[nodiscard]] Real balance_residual() const;
  void validate(const PrecisionContext& ctx) const;
  [[nodiscard]] std::string digest(const PrecisionContext& ctx) const;
};

/// Multiple sum over 0 <= k_j <= m_j; requires b c_j d_j e_j = a^2 q^{2-n+m_j}.
struct CntParams {
  EllipticBase base;
  int n = 1;
  std::vector<int> m;
  CScalar a;
  CScalar b;
  std::vector<CScalar> c;
  std::vector<CScalar> d;
  std::vector<CScalar> e;

  [[nodiscard]] Real balance_residual() const;
  void validate(const PrecisionContext& ctx) const;
  [[nodiscard]] std::string digest(const PrecisionContext& ctx) const;
};

/// Trigonometric (p = 0) determinant identity parameters.
struct TdtParams {
  CScalar q;
  int n = 1;
  std::vector<CScalar> z;
  std::vector<CScalar> a;

  void validate() const;
  [[nodiscard]] std::string digest(const PrecisionContext& ctx) const;
};

/// The n = 1 multiple sum as a single balanced sum (b and e_1 trade roles).
JsParams to_jackson(const CntParams& p);

/// 64-bit FNV-1a of the text, as 16 hex digits. Stable across platforms.
std::string fnv1a_hex(const std::string& text);

}  // namespace ellipdet
