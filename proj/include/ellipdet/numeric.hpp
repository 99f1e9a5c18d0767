#pragma once

/// \file
/// High-precision real and complex scalars backed by MPFR, the precision
/// context shared by every evaluator, and residual comparison.
///
/// Arithmetic results are rounded to the *working precision* of the calling
/// thread. Evaluators install it from a PrecisionContext with a
/// PrecisionScope; outside any scope the default of 288 bits (256 + 32 guard)
/// applies.

#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace ellipdet {

/// Base of all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or out-of-domain input (zero divisor, |p| >= 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Precision in bits used for newly created values on this thread.
[[nodiscard]] mpfr_prec_t working_precision() noexcept;

class Real {
 public:
  Real();
  Real(int v);     // NOLINT(google-explicit-constructor)
  Real(long v);    // NOLINT(google-explicit-constructor)
  Real(double v);  // NOLINT(google-explicit-constructor)
  explicit Real(std::string_view decimal);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);

  friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
  friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
  friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }
  Real operator-() const;

  friend bool operator==(const Real& a, const Real& b);
  friend bool operator<(const Real& a, const Real& b);
  friend bool operator<=(const Real& a, const Real& b) { return !(b < a); }
  friend bool operator>(const Real& a, const Real& b) { return b < a; }
  friend bool operator>=(const Real& a, const Real& b) { return !(a < b); }

  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_finite() const;
  [[nodiscard]] int sign() const;
  [[nodiscard]] mpfr_prec_t precision() const;

  /// Nearest double; overflows to +-inf for huge magnitudes.
  [[nodiscard]] double to_double() const;
  /// log2|x| as a double, finite for every non-zero value regardless of
  /// exponent range. Returns -inf for zero.
  [[nodiscard]] double log2_abs() const;
  /// Scientific decimal notation with `digits` significant digits.
  [[nodiscard]] std::string to_string(int digits) const;

  mpfr_ptr raw() noexcept { return value_; }
  mpfr_srcptr raw() const noexcept { return value_; }

 private:
  mpfr_t value_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real hypot(const Real& x, const Real& y);
Real max(const Real& a, const Real& b);
/// 2^k exactly.
Real exp2_int(long k);
/// 10^k rounded to working precision.
Real pow10_int(long k);

class CScalar {
 public:
  CScalar() = default;
  CScalar(Real re, Real im = Real()) : re_(std::move(re)), im_(std::move(im)) {}  // NOLINT
  CScalar(int v) : re_(v) {}     // NOLINT(google-explicit-constructor)
  CScalar(double v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  CScalar(double re, double im) : re_(re), im_(im) {}

  static CScalar i() { return {Real(0), Real(1)}; }
  /// Modulus/argument form with double inputs (used by samplers).
  static CScalar polar(double modulus, double argument);

  [[nodiscard]] const Real& re() const { return re_; }
  [[nodiscard]] const Real& im() const { return im_; }

  CScalar& operator+=(const CScalar& rhs);
  CScalar& operator-=(const CScalar& rhs);
  CScalar& operator*=(const CScalar& rhs);
  /// Throws DomainError when rhs == 0.
  CScalar& operator/=(const CScalar& rhs);

  friend CScalar operator+(CScalar lhs, const CScalar& rhs) { return lhs += rhs; }
  friend CScalar operator-(CScalar lhs, const CScalar& rhs) { return lhs -= rhs; }
  friend CScalar operator*(CScalar lhs, const CScalar& rhs) { return lhs *= rhs; }
  friend CScalar operator/(CScalar lhs, const CScalar& rhs) { return lhs /= rhs; }
  CScalar operator-() const { return {-re_, -im_}; }

  friend bool operator==(const CScalar& a, const CScalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  [[nodiscard]] bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  [[nodiscard]] bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
  [[nodiscard]] CScalar conj() const { return {re_, -im_}; }
  [[nodiscard]] CScalar reciprocal() const;
  /// |z|^2
  [[nodiscard]] Real norm() const;
  /// "<re><sign><|im|>i" with `digits` significant digits per component.
  [[nodiscard]] std::string to_string(int digits) const;

 private:
  Real re_;
  Real im_;
};

Real abs(const CScalar& z);

/// Precision, truncation and tolerance policy for all evaluation.
struct PrecisionContext {
  int precision_bits = 256;
  int guard_bits = 32;
  /// Lower bound on the number of theta product factors. The effective count
  /// is recomputed from |p| (and |x|) at every evaluation.
  int theta_truncation = 1;
  /// Relative residual acceptance threshold.
  double tolerance = 1e-35;

  [[nodiscard]] int working_bits() const { return precision_bits + guard_bits; }
  /// Significant decimal digits that faithfully represent precision_bits.
  [[nodiscard]] int decimal_digits() const;
};

/// Throws DomainError when precision_bits < 64, guard_bits < 0 or
/// tolerance <= 0.
PrecisionContext make_context(int precision_bits, int guard_bits, double tolerance);

/// Installs ctx.working_bits() as the working precision for the lifetime of
/// the guard; restores the previous value on destruction.
class PrecisionScope {
 public:
  explicit PrecisionScope(const PrecisionContext& ctx);
  explicit PrecisionScope(mpfr_prec_t bits);
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;
  ~PrecisionScope();

 private:
  mpfr_prec_t saved_;
};

/// |lhs - rhs| / max(|lhs|, |rhs|, 1)
Real rel_residual(const CScalar& lhs, const CScalar& rhs);

/// |x - y| / max(|x|, |y|); 0 when both vanish.
Real rel_diff(const CScalar& x, const CScalar& y);

/// z^k by repeated squaring; z^0 == 1. Negative k with z == 0 throws.
CScalar pow_int(const CScalar& z, long k);

/// n choose 2 and n choose 3 as exact integers (0 below their range).
constexpr long binom2(long n) { return n < 2 ? 0 : n * (n - 1) / 2; }
constexpr long binom3(long n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

/// (-1)^k
constexpr int sign_pow(long k) { return (k % 2 == 0) ? 1 : -1; }

}  // namespace ellipdet
