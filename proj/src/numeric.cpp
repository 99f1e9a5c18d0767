#include "ellipdet/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ellipdet {

namespace {

constexpr mpfr_rnd_t kRound = MPFR_RNDN;
thread_local mpfr_prec_t g_working_precision = 288;

// Widen (exactly) to the working precision before an in-place operation so a
// value created under a lower precision does not truncate the result.
void widen(mpfr_ptr x) {
  if (mpfr_get_prec(x) < g_working_precision) {
    mpfr_prec_round(x, g_working_precision, kRound);
  }
}

}  // namespace

mpfr_prec_t working_precision() noexcept { return g_working_precision; }

// ---------------------------------------------------------------- Real

Real::Real() {
  mpfr_init2(value_, g_working_precision);
  mpfr_set_zero(value_, 1);
}

Real::Real(int v) : Real(static_cast<long>(v)) {}

Real::Real(long v) {
  mpfr_init2(value_, g_working_precision);
  mpfr_set_si(value_, v, kRound);
}

Real::Real(double v) {
  mpfr_init2(value_, g_working_precision);
  mpfr_set_d(value_, v, kRound);
}

Real::Real(std::string_view decimal) {
  mpfr_init2(value_, g_working_precision);
  const std::string text(decimal);
  if (mpfr_set_str(value_, text.c_str(), 10, kRound) != 0) {
    mpfr_clear(value_);
    throw DomainError("not a decimal number: '" + text + "'");
  }
}

Real::Real(const Real& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, kRound);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, kRound);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real& Real::operator+=(const Real& rhs) {
  widen(value_);
  mpfr_add(value_, value_, rhs.value_, kRound);
  return *this;
}

Real& Real::operator-=(const Real& rhs) {
  widen(value_);
  mpfr_sub(value_, value_, rhs.value_, kRound);
  return *this;
}

Real& Real::operator*=(const Real& rhs) {
  widen(value_);
  mpfr_mul(value_, value_, rhs.value_, kRound);
  return *this;
}

Real& Real::operator/=(const Real& rhs) {
  if (rhs.is_zero()) throw DomainError("real division by zero");
  widen(value_);
  mpfr_div(value_, value_, rhs.value_, kRound);
  return *this;
}

Real Real::operator-() const {
  Real r(*this);
  mpfr_neg(r.value_, r.value_, kRound);
  return r;
}

bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.value_, b.value_) != 0; }

bool Real::is_zero() const { return mpfr_zero_p(value_) != 0; }
bool Real::is_finite() const { return mpfr_number_p(value_) != 0; }
int Real::sign() const { return mpfr_sgn(value_); }
mpfr_prec_t Real::precision() const { return mpfr_get_prec(value_); }

double Real::to_double() const { return mpfr_get_d(value_, kRound); }

double Real::log2_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  long exponent = 0;
  const double mantissa = mpfr_get_d_2exp(&exponent, value_, kRound);
  return std::log2(std::fabs(mantissa)) + static_cast<double>(exponent);
}

std::string Real::to_string(int digits) const {
  digits = std::max(digits, 2);
  char* buffer = nullptr;
  if (mpfr_asprintf(&buffer, "%.*Re", digits - 1, value_) < 0) {
    throw Error("mpfr_asprintf failed");
  }
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

Real abs(const Real& x) {
  Real r(x);
  mpfr_abs(r.raw(), r.raw(), kRound);
  return r;
}

Real sqrt(const Real& x) {
  Real r;
  mpfr_sqrt(r.raw(), x.raw(), kRound);
  return r;
}

Real hypot(const Real& x, const Real& y) {
  Real r;
  mpfr_hypot(r.raw(), x.raw(), y.raw(), kRound);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Real exp2_int(long k) {
  Real r(1);
  mpfr_mul_2si(r.raw(), r.raw(), k, kRound);
  return r;
}

Real pow10_int(long k) {
  Real r;
  mpfr_ui_pow_ui(r.raw(), 10, static_cast<unsigned long>(k < 0 ? -k : k), kRound);
  if (k < 0) mpfr_ui_div(r.raw(), 1, r.raw(), kRound);
  return r;
}

// ---------------------------------------------------------------- CScalar

CScalar CScalar::polar(double modulus, double argument) {
  // MPFR rounds sin and cos correctly, so the result is platform independent.
  const Real arg(argument);
  Real s;
  Real c;
  mpfr_sin_cos(s.raw(), c.raw(), arg.raw(), kRound);
  return {c * Real(modulus), s * Real(modulus)};
}

CScalar& CScalar::operator+=(const CScalar& rhs) {
  re_ += rhs.re_;
  im_ += rhs.im_;
  return *this;
}

CScalar& CScalar::operator-=(const CScalar& rhs) {
  re_ -= rhs.re_;
  im_ -= rhs.im_;
  return *this;
}

CScalar& CScalar::operator*=(const CScalar& rhs) {
  Real re;
  Real im;
  mpfr_fmms(re.raw(), re_.raw(), rhs.re_.raw(), im_.raw(), rhs.im_.raw(), kRound);
  mpfr_fmma(im.raw(), re_.raw(), rhs.im_.raw(), im_.raw(), rhs.re_.raw(), kRound);
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

// (a + bi)/(c + di) = ((ac + bd) + (bc - ad)i) / (c^2 + d^2), each sum rounded
// once, so x/x == 1 exactly.
CScalar& CScalar::operator/=(const CScalar& rhs) {
  if (rhs.is_zero()) throw DomainError("complex division by zero");
  const Real den = rhs.norm();
  Real re;
  Real im;
  mpfr_fmma(re.raw(), re_.raw(), rhs.re_.raw(), im_.raw(), rhs.im_.raw(), kRound);
  mpfr_fmms(im.raw(), im_.raw(), rhs.re_.raw(), re_.raw(), rhs.im_.raw(), kRound);
  re_ = re / den;
  im_ = im / den;
  return *this;
}

CScalar CScalar::reciprocal() const {
  if (is_zero()) throw DomainError("complex division by zero");
  const Real den = norm();
  return {re_ / den, -im_ / den};
}

Real CScalar::norm() const {
  Real r;
  mpfr_fmma(r.raw(), re_.raw(), re_.raw(), im_.raw(), im_.raw(), kRound);
  return r;
}

std::string CScalar::to_string(int digits) const {
  std::string out = re_.to_string(digits);
  std::string im = im_.to_string(digits);
  if (im.front() != '-') im.insert(im.begin(), '+');
  return out + im + "i";
}

Real abs(const CScalar& z) { return hypot(z.re(), z.im()); }

// ---------------------------------------------------------------- context

int PrecisionContext::decimal_digits() const {
  return static_cast<int>(std::ceil(precision_bits * std::log10(2.0))) + 1;
}

PrecisionContext make_context(int precision_bits, int guard_bits, double tolerance) {
  if (precision_bits < 64) {
    throw DomainError("precision_bits must be at least 64, got " + std::to_string(precision_bits));
  }
  if (guard_bits < 0) throw DomainError("guard_bits must be non-negative");
  if (!(tolerance > 0.0)) throw DomainError("tolerance must be positive");
  PrecisionContext ctx;
  ctx.precision_bits = precision_bits;
  ctx.guard_bits = guard_bits;
  ctx.theta_truncation = 1;
  ctx.tolerance = tolerance;
  return ctx;
}

PrecisionScope::PrecisionScope(const PrecisionContext& ctx) : PrecisionScope(ctx.working_bits()) {}

PrecisionScope::PrecisionScope(mpfr_prec_t bits) : saved_(g_working_precision) {
  g_working_precision = bits;
}

PrecisionScope::~PrecisionScope() { g_working_precision = saved_; }

// ---------------------------------------------------------------- helpers

Real rel_diff(const CScalar& x, const CScalar& y) {
  const Real diff = abs(x - y);
  if (diff.is_zero()) return Real(0);
  return diff / max(abs(x), abs(y));
}

Real rel_residual(const CScalar& lhs, const CScalar& rhs) {
  const Real diff = abs(lhs - rhs);
  if (diff.is_zero()) return Real(0);
  const Real scale = max(max(abs(lhs), abs(rhs)), Real(1));
  return diff / scale;
}

CScalar pow_int(const CScalar& z, long k) {
  if (k < 0) {
    if (z.is_zero()) throw DomainError("negative power of zero");
    return pow_int(z.reciprocal(), -k);
  }
  CScalar result(1);
  CScalar base = z;
  auto e = static_cast<unsigned long>(k);
  while (e != 0) {
    if ((e & 1UL) != 0) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

}  // namespace ellipdet
