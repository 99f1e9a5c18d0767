#include "ellipdet/params.hpp"

#include <cstdint>
#include <cstdio>
#include <string>

namespace ellipdet {

namespace {

void append(std::string& text, const CScalar& z, const PrecisionContext& ctx) {
  text += z.to_string(ctx.decimal_digits());
  text += ';';
}

void append(std::string& text, const std::vector<CScalar>& zs, const PrecisionContext& ctx) {
  for (const auto& z : zs) append(text, z, ctx);
  text += '|';
}

void append_base(std::string& text, const EllipticBase& base, const PrecisionContext& ctx) {
  append(text, base.p(), ctx);
  append(text, base.q(), ctx);
}

void require_size(const std::vector<CScalar>& v, int n, const char* name) {
  if (static_cast<int>(v.size()) != n) {
    throw ConstraintViolation(std::string(name) + " must have n = " + std::to_string(n) +
                              " entries");
  }
}

void require_nonzero(const CScalar& z, const char* name) {
  if (z.is_zero()) throw ConstraintViolation(std::string(name) + " must be non-zero");
}

void require_nonzero(const std::vector<CScalar>& v, const char* name) {
  for (const auto& z : v) require_nonzero(z, name);
}

}  // namespace

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : text) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

// ---------------------------------------------------------------- DtParams

CScalar DtParams::triple_product() const { return b.at(0) * c.at(0) * d.at(0); }

CScalar DtParams::e() const { return a * a / triple_product(); }

Real DtParams::constraint_residual() const {
  const CScalar reference = triple_product();
  Real worst(0);
  for (int j = 1; j < n; ++j) {
    worst = max(worst, rel_residual(b[j] * c[j] * d[j], reference));
  }
  return worst;
}

void DtParams::validate(const PrecisionContext& ctx) const {
  if (n < 1) throw ConstraintViolation("n must be positive");
  require_size(b, n, "b");
  require_size(c, n, "c");
  require_size(d, n, "d");
  require_nonzero(a, "a");
  require_nonzero(b, "b_j");
  require_nonzero(c, "c_j");
  require_nonzero(d, "d_j");
  const PrecisionScope scope(ctx);
  if (constraint_residual() > Real(ctx.tolerance)) {
    throw ConstraintViolation("b_j c_j d_j is not independent of j");
  }
}

std::string DtParams::digest(const PrecisionContext& ctx) const {
  std::string text = "dt;" + std::to_string(n) + ";";
  append_base(text, base, ctx);
  append(text, a, ctx);
  append(text, b, ctx);
  append(text, c, ctx);
  append(text, d, ctx);
  return fnv1a_hex(text);
}

// ---------------------------------------------------------------- WdParams

void WdParams::validate() const {
  if (n < 1) throw ConstraintViolation("n must be positive");
  require_size(x, n, "x");
  require_nonzero(a, "a");
  require_nonzero(b, "b");
  require_nonzero(c, "c");
  require_nonzero(x, "x_j");
}

std::string WdParams::digest(const PrecisionContext& ctx) const {
  std::string text = "wd;" + std::to_string(n) + ";";
  append_base(text, base, ctx);
  append(text, a, ctx);
  append(text, b, ctx);
  append(text, c, ctx);
  append(text, x, ctx);
  return fnv1a_hex(text);
}

// ---------------------------------------------------------------- JsParams

Real JsParams::balance_residual() const {
  return rel_residual(a * a * pow_int(base.q(), n + 1), b * c * d * e);
}

void JsParams::validate(const PrecisionContext& ctx) const {
  if (n < 0) throw ConstraintViolation("n must be non-negative");
  require_nonzero(a, "a");
  require_nonzero(b, "b");
  require_nonzero(c, "c");
  require_nonzero(d, "d");
  require_nonzero(e, "e");
  const PrecisionScope scope(ctx);
  if (balance_residual() > Real(ctx.tolerance)) {
    throw ConstraintViolation("balancing condition a^2 q^(n+1) = b c d e violated");
  }
}

std::string JsParams::digest(const PrecisionContext& ctx) const {
  std::string text = "js;" + std::to_string(n) + ";";
  append_base(text, base, ctx);
  for (const auto* z : {&a, &b, &c, &d, &e}) append(text, *z, ctx);
  return fnv1a_hex(text);
}

// ---------------------------------------------------------------- CntParams

Real CntParams::balance_residual() const {
  Real worst(0);
  for (int j = 0; j < n; ++j) {
    worst = max(worst, rel_residual(b * c[j] * d[j] * e[j],
                                    a * a * pow_int(base.q(), 2 - n + m[j])));
  }
  return worst;
}

void CntParams::validate(const PrecisionContext& ctx) const {
  if (n < 1) throw ConstraintViolation("n must be positive");
  if (static_cast<int>(m.size()) != n) throw ConstraintViolation("m must have n entries");
  for (const int mj : m) {
    if (mj < 0) throw ConstraintViolation("m_j must be non-negative");
  }
  require_size(c, n, "c");
  require_size(d, n, "d");
  require_size(e, n, "e");
  require_nonzero(a, "a");
  require_nonzero(b, "b");
  require_nonzero(c, "c_j");
  require_nonzero(d, "d_j");
  require_nonzero(e, "e_j");
  const PrecisionScope scope(ctx);
  if (balance_residual() > Real(ctx.tolerance)) {
    throw ConstraintViolation("balancing condition b c_j d_j e_j = a^2 q^(2-n+m_j) violated");
  }
}

std::string CntParams::digest(const PrecisionContext& ctx) const {
  std::string text = "cnt;" + std::to_string(n) + ";";
  for (const int mj : m) text += std::to_string(mj) + ",";
  append_base(text, base, ctx);
  append(text, a, ctx);
  append(text, b, ctx);
  append(text, c, ctx);
  append(text, d, ctx);
  append(text, e, ctx);
  return fnv1a_hex(text);
}

JsParams to_jackson(const CntParams& p) {
  if (p.n != 1) throw ConstraintViolation("only the n = 1 multiple sum is a single sum");
  return JsParams{p.base, p.m.at(0), p.a, p.c.at(0), p.d.at(0), p.e.at(0), p.b};
}

// ---------------------------------------------------------------- TdtParams

void TdtParams::validate() const {
  if (n < 1) throw ConstraintViolation("n must be positive");
  require_size(z, n, "z");
  require_size(a, n, "a");
  require_nonzero(q, "q");
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (!z[j].is_finite() || !a[j].is_finite()) throw ConstraintViolation("non-finite entry");
  }
}

std::string TdtParams::digest(const PrecisionContext& ctx) const {
  std::string text = "tdt;" + std::to_string(n) + ";";
  append(text, q, ctx);
  append(text, z, ctx);
  append(text, a, ctx);
  return fnv1a_hex(text);
}

}  // namespace ellipdet
