#include <string>
#include <utility>

#include "ellipdet/identities.hpp"
#include "factorials.hpp"

namespace ellipdet {

using detail::Factorials;
using detail::RowBases;
using detail::ratio_matrix;
using detail::staircase;

VerificationReport make_report(std::string name, CScalar lhs, CScalar rhs,
                               const PrecisionContext& ctx, std::string digest) {
  const PrecisionScope scope(ctx);
  Real residual = rel_residual(lhs, rhs);
  return make_report(std::move(name), std::move(lhs), std::move(rhs), std::move(residual), ctx,
                     std::move(digest));
}

VerificationReport make_report(std::string name, CScalar lhs, CScalar rhs, Real residual,
                               const PrecisionContext& ctx, std::string digest) {
  const PrecisionScope scope(ctx);
  VerificationReport report;
  report.identity_name = std::move(name);
  report.abs_residual = abs(lhs - rhs);
  report.passed = residual <= Real(ctx.tolerance);
  report.rel_residual = std::move(residual);
  report.lhs = std::move(lhs);
  report.rhs = std::move(rhs);
  report.params_digest = std::move(digest);
  return report;
}

Real pole_threshold(const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  return pow10_int(-(ctx.precision_bits / 4));
}

DtForm to_form(EtBranch branch) {
  switch (branch) {
    case EtBranch::first: return DtForm::sigma_tau;
    case EtBranch::second: return DtForm::tau_sigma;
    case EtBranch::third: return DtForm::sigma_tau_sigma;
  }
  throw DomainError("unknown branch");
}

const char* form_name(DtForm form) {
  switch (form) {
    case DtForm::sigma: return "sigma";
    case DtForm::tau: return "tau";
    case DtForm::sigma_tau: return "sigma_tau";
    case DtForm::tau_sigma: return "tau_sigma";
    case DtForm::sigma_tau_sigma: return "sigma_tau_sigma";
  }
  return "?";
}

namespace {

// Per-row base lists shared by the orbit members.
struct RowKit {
  const DtParams& p;
  CScalar e;
  CScalar s;  // q^{2-n}

  RowKit(const DtParams& params, const Factorials& f)
      : p(params), e(params.e()), s(f.qpow(2 - params.n)) {}

  [[nodiscard]] std::vector<CScalar> plain(int j) const { return {p.b[j], p.c[j], p.d[j]}; }
  // a/b_j, a/c_j, a/d_j
  [[nodiscard]] std::vector<CScalar> a_over(int j) const {
    return {p.a / p.b[j], p.a / p.c[j], p.a / p.d[j]};
  }
  // a/(b_j c_j), a/(b_j d_j), a/(c_j d_j)
  [[nodiscard]] std::vector<CScalar> a_over_pairs(int j) const {
    return {p.a / (p.b[j] * p.c[j]), p.a / (p.b[j] * p.d[j]), p.a / (p.c[j] * p.d[j])};
  }
  // q^{2-n} b_j / a, ...
  [[nodiscard]] std::vector<CScalar> shifted_over_a(int j) const {
    const CScalar k = s / p.a;
    return {k * p.b[j], k * p.c[j], k * p.d[j]};
  }
  // q^{2-n} / b_j, ...
  [[nodiscard]] std::vector<CScalar> shifted_inverse(int j) const {
    return {s / p.b[j], s / p.c[j], s / p.d[j]};
  }
  // q^{2-n} b_j c_j / a, q^{2-n} b_j d_j / a, q^{2-n} c_j d_j / a
  [[nodiscard]] std::vector<CScalar> shifted_pairs(int j) const {
    const CScalar k = s / p.a;
    return {k * p.b[j] * p.c[j], k * p.b[j] * p.d[j], k * p.c[j] * p.d[j]};
  }

  template <class Num, class Den>
  [[nodiscard]] std::vector<RowBases> rows(Num num, Den den) const {
    std::vector<RowBases> out;
    for (int j = 0; j < p.n; ++j) out.push_back({(this->*num)(j), (this->*den)(j)});
    return out;
  }

  // prod_j prod (num)_{n-1} / prod (den)_{n-1}
  template <class Num, class Den>
  [[nodiscard]] CScalar full_length(Num num, Den den, const Factorials& f,
                                    const std::string& label) const {
    CScalar out(1);
    for (int j = 0; j < p.n; ++j) {
      out *= f.ratio((this->*num)(j), (this->*den)(j), p.n - 1,
                     label + " j=" + std::to_string(j + 1));
    }
    return out;
  }
};

}  // namespace

ComplexMatrix dt_lhs_matrix(const DtParams& p, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  const Factorials f(p.base, ctx);
  const RowKit kit(p, f);
  return ratio_matrix(kit.rows(&RowKit::plain, &RowKit::a_over), f, "X");
}

namespace {

CScalar form_prefactor(const RowKit& kit, const Factorials& f, DtForm form) {
  const int n = kit.p.n;
  const long c2 = binom2(n);
  const long c3 = binom3(n);
  const CScalar& a = kit.p.a;
  const CScalar& e = kit.e;
  const CScalar stair_a = staircase(a, -2, n, f, false, "(aq^{j-2})");
  switch (form) {
    case DtForm::sigma:
      return pow_int(a / e, c2) * stair_a / staircase(e, -2, n, f, true, "(eq^{j-2})");
    case DtForm::tau:
      return pow_int(-(e * e) / a, c2) *
             kit.full_length(&RowKit::plain, &RowKit::a_over, f, "tau prefactor");
    case DtForm::sigma_tau:
      return pow_int(f.q(), -6 * c3) * pow_int(e / (a * a), c2) *
             kit.full_length(&RowKit::plain, &RowKit::a_over, f, "sigma_tau prefactor") *
             stair_a / staircase(e / a, -n, n, f, true, "(q^{j-n}e/a)");
    case DtForm::tau_sigma:
      return pow_int(-(a * a * a) / (e * e), c2) *
             kit.full_length(&RowKit::a_over_pairs, &RowKit::a_over, f, "tau_sigma prefactor") *
             stair_a / staircase(e, -2, n, f, true, "(eq^{j-2})");
    case DtForm::sigma_tau_sigma:
      return pow_int(f.q(), -6 * c3) * pow_int(a * a / (e * e * e), c2) *
             kit.full_length(&RowKit::a_over_pairs, &RowKit::a_over, f,
                             "sigma_tau_sigma prefactor") *
             stair_a / staircase(a / e, -n, n, f, true, "(q^{j-n}a/e)");
  }
  throw DomainError("unknown form");
}

std::vector<RowBases> form_rows(const RowKit& kit, DtForm form) {
  switch (form) {
    case DtForm::sigma: return kit.rows(&RowKit::a_over_pairs, &RowKit::a_over);
    case DtForm::tau: return kit.rows(&RowKit::shifted_over_a, &RowKit::shifted_inverse);
    case DtForm::sigma_tau: return kit.rows(&RowKit::a_over_pairs, &RowKit::shifted_inverse);
    case DtForm::tau_sigma: return kit.rows(&RowKit::shifted_over_a, &RowKit::shifted_pairs);
    case DtForm::sigma_tau_sigma: return kit.rows(&RowKit::plain, &RowKit::shifted_pairs);
  }
  throw DomainError("unknown form");
}

}  // namespace

CScalar dt_prefactor(const DtParams& p, DtForm form, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  const Factorials f(p.base, ctx);
  return form_prefactor(RowKit(p, f), f, form);
}

FormParts dt_form(const DtParams& p, DtForm form, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  const Factorials f(p.base, ctx);
  const RowKit kit(p, f);
  CScalar prefactor = form_prefactor(kit, f, form);
  ComplexMatrix matrix = ratio_matrix(form_rows(kit, form), f, form_name(form));
  CScalar det = det_lu(matrix, ctx);
  return {std::move(prefactor), std::move(matrix), std::move(det)};
}

namespace {

VerificationReport eval_form(const DtParams& p, DtForm form, std::string name,
                             const PrecisionContext& ctx) {
  p.validate(ctx);
  const PrecisionScope scope(ctx);
  const CScalar lhs = det_lu(dt_lhs_matrix(p, ctx), ctx);
  const FormParts parts = dt_form(p, form, ctx);
  return make_report(std::move(name), lhs, parts.prefactor * parts.det, ctx, p.digest(ctx));
}

}  // namespace

VerificationReport eval_dt(const DtParams& p, const PrecisionContext& ctx) {
  return eval_form(p, DtForm::sigma, "dt", ctx);
}

VerificationReport eval_ts(const DtParams& p, const PrecisionContext& ctx) {
  return eval_form(p, DtForm::tau, "ts", ctx);
}

VerificationReport eval_et(const DtParams& p, EtBranch which, const PrecisionContext& ctx) {
  const char* names[] = {"et1", "et2", "et3"};
  return eval_form(p, to_form(which), names[static_cast<int>(which)], ctx);
}

void check_dt_poles(const DtParams& p, const Real& threshold, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  const Factorials f(p.base, ctx, threshold);
  const RowKit kit(p, f);
  const int n = p.n;
  const CScalar& a = p.a;
  const CScalar& e = kit.e;
  for (int j = 0; j < n; ++j) {
    const std::string row = " j=" + std::to_string(j + 1);
    for (const auto& list : {kit.a_over(j), kit.shifted_inverse(j), kit.shifted_pairs(j)}) {
      for (const auto& x : list) f.den_table(x, n - 1, "denominator" + row);
    }
  }
  staircase(e, -2, n, f, true, "(eq^{j-2})");
  staircase(e / a, -n, n, f, true, "(q^{j-n}e/a)");
  staircase(a / e, -n, n, f, true, "(q^{j-n}a/e)");
  // Proof-path matrices.
  const CScalar aq_inv = a / f.q();
  f.theta_den(aq_inv, "theta(aq^{-1})");
  f.den_table(f.q(), n - 1, "(q)");
  f.den_table(e / a, n - 1, "(e/a)");
  for (int k = 1; k <= n; ++k) {
    f.den_table(a * f.qpow(k - 1), n - 1, "(aq^{k-1})");
    f.den_table(a * f.qpow(2 - k) / e, n - 1, "(aq^{2-k}/e)");
  }
}

// ------------------------------------------------------- constant d_j

ConstantDReduction constant_d_reduction(const DtParams& p, const PrecisionContext& ctx) {
  p.validate(ctx);
  const PrecisionScope scope(ctx);
  const Real limit = exp2_int(-(ctx.precision_bits - 8));
  for (int j = 1; j < p.n; ++j) {
    if (rel_residual(p.d[j], p.d[0]) > limit) {
      throw ConstraintViolation("d_j is not constant (j=" + std::to_string(j + 1) + ")");
    }
  }
  const Factorials f(p.base, ctx);
  const int n = p.n;
  const CScalar& a = p.a;
  const CScalar& d = p.d[0];
  const CScalar e = p.e();
  const CScalar k = p.b[0] * p.c[0];

  const auto t_d = f.table(d, n - 1);
  const auto t_a_over_k = f.table(a / k, n - 1);
  const auto t_a_over_d = f.den_table(a / d, n - 1, "(a/d)");
  CScalar lhs_cols(1);
  CScalar rhs_cols(1);
  for (int col = 0; col < n; ++col) {
    lhs_cols *= t_d[col] / t_a_over_d[col];
    rhs_cols *= t_a_over_k[col] / t_a_over_d[col];
  }

  const WdParams lhs_w{p.base, n, a, CScalar(1), k, p.b};
  const WdParams rhs_w{p.base, n, e, a / (k * d), a / d, p.b};

  ConstantDReduction out;
  out.lhs_det = det_lu(dt_lhs_matrix(p, ctx), ctx);
  out.lhs_closed = lhs_cols * warnaar_rhs(lhs_w, ctx);
  out.rhs_det = dt_form(p, DtForm::sigma, ctx).det;
  out.rhs_closed = rhs_cols * warnaar_rhs(rhs_w, ctx);
  out.lhs_residual = rel_residual(out.lhs_det, out.lhs_closed);
  out.rhs_residual = rel_residual(out.rhs_det, out.rhs_closed);
  return out;
}

VerificationReport check_constant_d(const DtParams& p, const PrecisionContext& ctx) {
  const ConstantDReduction r = constant_d_reduction(p, ctx);
  const PrecisionScope scope(ctx);
  return make_report("constant_d", r.lhs_det, r.lhs_closed, max(r.lhs_residual, r.rhs_residual),
                     ctx, p.digest(ctx));
}

void check_dt_poles(const DtParams& p, DtForm form, const Real& threshold,
                    const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  const Factorials f(p.base, ctx, threshold);
  const RowKit kit(p, f);
  std::vector<RowBases> rows = kit.rows(&RowKit::plain, &RowKit::a_over);
  for (auto& row : form_rows(kit, form)) rows.push_back(std::move(row));
  for (const auto& row : rows) {
    for (const auto& x : row.den) f.den_table(x, p.n - 1, "denominator");
  }
  form_prefactor(kit, f, form);
}

// ------------------------------------------------------------------ xy

XyFactorization xy_factorization_details(const DtParams& p, const PrecisionContext& ctx) {
  p.validate(ctx);
  const PrecisionScope scope(ctx);
  const Factorials f(p.base, ctx);
  const RowKit kit(p, f);
  const int n = p.n;
  const CScalar& a = p.a;
  const CScalar& e = kit.e;
  const CScalar& q = f.q();

  ComplexMatrix x = ratio_matrix(kit.rows(&RowKit::plain, &RowKit::a_over), f, "X");

  // Y_{jk} = theta(aq^{2j-3})/theta(aq^{-1})
  //          * (aq^{-1}, q^{1-k}, eq^{k-2})_{j-1} / (q, aq^{k-1}, aq^{2-k}/e)_{j-1} * q^{j-1}
  ComplexMatrix y(n);
  const CScalar aq_inv = a / q;
  const CScalar theta_aq_inv = f.theta_den(aq_inv, "theta(aq^{-1})");
  const auto t_aq_inv = f.table(aq_inv, n - 1);
  const auto t_q = f.den_table(q, n - 1, "(q)");
  for (int k = 1; k <= n; ++k) {
    const auto t_num1 = f.table(f.qpow(1 - k), n - 1);
    const auto t_num2 = f.table(e * f.qpow(k - 2), n - 1);
    const auto t_den1 = f.den_table(a * f.qpow(k - 1), n - 1, "(aq^{k-1})");
    const auto t_den2 = f.den_table(a * f.qpow(2 - k) / e, n - 1, "(aq^{2-k}/e)");
    for (int j = 1; j <= n; ++j) {
      const int l = j - 1;
      y(j - 1, k - 1) = f.theta(a * f.qpow(2 * j - 3)) / theta_aq_inv * t_aq_inv[l] *
                        t_num1[l] * t_num2[l] / (t_q[l] * t_den1[l] * t_den2[l]) * f.qpow(l);
    }
  }

  ComplexMatrix xy = matmul(x, y);

  std::vector<RowBases> closed_rows;
  for (int j = 0; j < n; ++j) {
    std::vector<CScalar> num{a};
    for (auto& v : kit.a_over_pairs(j)) num.push_back(v);
    std::vector<CScalar> den{e / a};
    for (auto& v : kit.a_over(j)) den.push_back(v);
    closed_rows.push_back({std::move(num), std::move(den)});
  }
  ComplexMatrix xy_closed = ratio_matrix(closed_rows, f, "XY closed form");

  // det(Y) = (e/a)^{C(n,2)} prod_{j=2}^n (a, eq^{j-2})_{j-1} / (aq^{j-2}, e/a)_{j-1}
  const auto t_a = f.table(a, n - 1);
  const auto t_e_over_a = f.den_table(e / a, n - 1, "(e/a)");
  CScalar det_y_closed = pow_int(e / a, binom2(n));
  for (int j = 2; j <= n; ++j) {
    det_y_closed *= t_a[j - 1] / t_e_over_a[j - 1];
  }
  det_y_closed *= staircase(e, -2, n, f, false, "(eq^{j-2})");
  det_y_closed /= staircase(a, -2, n, f, true, "(aq^{j-2})");

  XyFactorization out{x, y, xy, xy_closed, CScalar(), CScalar(), det_y_closed, CScalar(),
                      Real(0), Real(0), Real(0), Real(0)};
  out.det_x = det_lu(x, ctx);
  out.det_y = det_lu(y, ctx);
  out.det_xy = det_lu(xy, ctx);

  Real y_scale(1);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) y_scale = max(y_scale, abs(y(r, c)));
  }
  for (int r = 1; r < n; ++r) {
    for (int c = 0; c < r; ++c) {
      out.triangular_residual = max(out.triangular_residual, abs(y(r, c)) / y_scale);
    }
  }
  out.det_y_residual = rel_residual(out.det_y, det_y_closed);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      out.xy_residual = max(out.xy_residual, rel_residual(xy(r, c), xy_closed(r, c)));
    }
  }
  out.det_product_residual = rel_residual(out.det_x * out.det_y, out.det_xy);
  return out;
}

VerificationReport check_xy_factorization(const DtParams& p, const PrecisionContext& ctx) {
  const XyFactorization xy = xy_factorization_details(p, ctx);
  const PrecisionScope scope(ctx);
  Real worst = max(max(xy.triangular_residual, xy.det_y_residual),
                   max(xy.xy_residual, xy.det_product_residual));
  return make_report("xy", xy.det_x * xy.det_y, xy.det_xy, std::move(worst), ctx, p.digest(ctx));
}

// ------------------------------------------------------------------ tdt

namespace {

std::vector<RowBases> tdt_rows(const TdtParams& p, bool lhs) {
  std::vector<RowBases> rows;
  for (int j = 0; j < p.n; ++j) {
    rows.push_back({{lhs ? p.z[j] : p.a[j]}, {p.a[j] * p.z[j]}});
  }
  return rows;
}

}  // namespace

void check_tdt_poles(const TdtParams& p, const Real& threshold, const PrecisionContext& ctx) {
  p.validate();
  const PrecisionScope scope(ctx);
  const EllipticBase base(CScalar(0), p.q);
  const Factorials f(base, ctx, threshold);
  for (int j = 0; j < p.n; ++j) {
    f.den_table(p.a[j] * p.z[j], p.n - 1, "(a_j z_j) j=" + std::to_string(j + 1));
  }
}

VerificationReport eval_tdt(const TdtParams& p, const PrecisionContext& ctx) {
  p.validate();
  const PrecisionScope scope(ctx);
  const EllipticBase base(CScalar(0), p.q);
  const Factorials f(base, ctx);
  const int n = p.n;

  const CScalar lhs = det_lu(ratio_matrix(tdt_rows(p, true), f, "lhs"), ctx);

  ComplexMatrix right = ratio_matrix(tdt_rows(p, false), f, "rhs");
  for (int j = 0; j < n; ++j) {
    CScalar zpow(1);
    for (int k = 0; k < n; ++k) {
      right(j, k) *= zpow;
      zpow *= p.z[j];
    }
  }
  const CScalar rhs = CScalar(sign_pow(binom2(n))) * pow_int(p.q, binom3(n)) * det_lu(right, ctx);
  return make_report("tdt", lhs, rhs, ctx, p.digest(ctx));
}

}  // namespace ellipdet
