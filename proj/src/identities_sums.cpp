#include <algorithm>
#include <string>
#include <utility>

#include "ellipdet/identities.hpp"
#include "factorials.hpp"

namespace ellipdet {

using detail::Factorials;
using detail::RowBases;
using detail::ratio_matrix;
using detail::staircase;

// --------------------------------------------------------------- jackson

namespace {

struct JacksonBases {
  std::vector<CScalar> lhs_num;
  std::vector<CScalar> lhs_den;
  std::vector<CScalar> rhs_num;
  std::vector<CScalar> rhs_den;
};

JacksonBases jackson_bases(const JsParams& p, const Factorials& f) {
  const CScalar aq = p.a * f.q();
  return {
      {p.a, p.b, p.c, p.d, p.e, f.qpow(-p.n)},
      {f.q(), aq / p.b, aq / p.c, aq / p.d, aq / p.e, p.a * f.qpow(p.n + 1)},
      {aq, aq / (p.b * p.c), aq / (p.b * p.d), aq / (p.c * p.d)},
      {aq / p.b, aq / p.c, aq / p.d, aq / (p.b * p.c * p.d)},
  };
}

}  // namespace

void check_jackson_poles(const JsParams& p, const Real& threshold, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  const Factorials f(p.base, ctx, threshold);
  const JacksonBases bases = jackson_bases(p, f);
  f.theta_den(p.a, "theta(a)");
  for (const auto& x : bases.lhs_den) f.den_table(x, p.n, "sum denominator");
  for (const auto& x : bases.rhs_den) f.den_table(x, p.n, "product denominator");
}

VerificationReport eval_jackson(const JsParams& p, const PrecisionContext& ctx) {
  p.validate(ctx);
  const PrecisionScope scope(ctx);
  const Factorials f(p.base, ctx);
  const JacksonBases bases = jackson_bases(p, f);
  const CScalar theta_a = f.theta_den(p.a, "theta(a)");

  std::vector<CScalar> term_ratio(static_cast<std::size_t>(p.n) + 1, CScalar(1));
  for (const auto& x : bases.lhs_num) {
    const auto t = f.table(x, p.n);
    for (int l = 0; l <= p.n; ++l) term_ratio[l] *= t[l];
  }
  for (const auto& x : bases.lhs_den) {
    const auto t = f.den_table(x, p.n, "sum denominator");
    for (int l = 0; l <= p.n; ++l) term_ratio[l] /= t[l];
  }
  CScalar lhs(0);
  for (int l = 0; l <= p.n; ++l) {
    lhs += f.theta(p.a * f.qpow(2 * l)) / theta_a * term_ratio[l] * f.qpow(l);
  }
  const CScalar rhs = f.ratio(bases.rhs_num, bases.rhs_den, p.n, "product");
  return make_report("jackson", lhs, rhs, ctx, p.digest(ctx));
}

// --------------------------------------------------------------- warnaar

namespace {

std::vector<RowBases> warnaar_rows(const WdParams& p) {
  std::vector<RowBases> rows;
  for (int j = 0; j < p.n; ++j) {
    const CScalar& x = p.x[j];
    rows.push_back({{p.b * x, p.c / x}, {p.a / (p.b * x), p.a * x / p.c}});
  }
  return rows;
}

}  // namespace

void check_warnaar_poles(const WdParams& p, const Real& threshold, const PrecisionContext& ctx) {
  p.validate();
  const PrecisionScope scope(ctx);
  const Factorials f(p.base, ctx, threshold);
  for (const auto& row : warnaar_rows(p)) {
    for (const auto& x : row.den) f.den_table(x, p.n - 1, "(a/bx_j, ax_j/c)");
  }
}

CScalar warnaar_rhs(const WdParams& p, const PrecisionContext& ctx) {
  p.validate();
  const PrecisionScope scope(ctx);
  const Factorials f(p.base, ctx);
  const int n = p.n;
  CScalar rhs = pow_int(p.c, binom2(n)) * pow_int(f.q(), binom3(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      rhs *= f.theta(p.x[i] / p.x[j]) * f.theta(p.b * p.x[i] * p.x[j] / p.c) / p.x[i];
    }
  }
  const auto t_abc = f.table(p.a / (p.b * p.c), n - 1);
  for (int j = 2; j <= n; ++j) rhs *= t_abc[j - 1];
  rhs *= staircase(p.a, -2, n, f, false, "(aq^{j-2})");
  for (const auto& row : warnaar_rows(p)) rhs *= f.ratio({}, row.den, n - 1, "(a/bx_j, ax_j/c)");
  return rhs;
}

VerificationReport eval_warnaar(const WdParams& p, const PrecisionContext& ctx) {
  p.validate();
  const PrecisionScope scope(ctx);
  const Factorials f(p.base, ctx);
  const CScalar lhs = det_lu(ratio_matrix(warnaar_rows(p), f, "warnaar"), ctx);
  const CScalar rhs = warnaar_rhs(p, ctx);
  return make_report("warnaar", lhs, rhs, ctx, p.digest(ctx));
}

// --------------------------------------------------------------- multiple sum

namespace {

long grid_size(const CntParams& p) {
  long size = 1;
  for (const int mj : p.m) {
    size *= static_cast<long>(mj) + 1;
    if (size > kMaxCntTerms) {
      throw CostGuardExceeded("multiple sum exceeds " + std::to_string(kMaxCntTerms) + " terms");
    }
  }
  return size;
}

std::vector<CScalar> single_den_bases(const CntParams& p, int j, const Factorials& f) {
  const CScalar aq = p.a * f.q();
  return {f.q(), aq / p.b, aq / p.c[j], aq / p.d[j], aq / p.e[j], p.a * f.qpow(1 + p.m[j])};
}

// Factors of a summand that depend on one index (single) or on a pair of
// indices (pair).
struct CntTables {
  // single[j][k] = theta(aq^{2k})/theta(a) * (a,b,c_j,d_j,e_j,q^{-m_j})_k
  //               / (q,aq/b,aq/c_j,aq/d_j,aq/e_j,aq^{1+m_j})_k * q^k
  std::vector<std::vector<CScalar>> single;
  // pair[u][v] = q^u theta(q^{v-u}) theta(aq^{u+v})
  std::vector<std::vector<CScalar>> pair;
};

CntTables cnt_tables(const CntParams& p, const Factorials& f) {
  const int top = *std::max_element(p.m.begin(), p.m.end());
  CntTables t;
  const CScalar theta_a = f.theta_den(p.a, "theta(a)");
  for (int j = 0; j < p.n; ++j) {
    const int mj = p.m[j];
    std::vector<CScalar> row(static_cast<std::size_t>(mj) + 1);
    for (int k = 0; k <= mj; ++k) row[k] = f.theta(p.a * f.qpow(2 * k)) / theta_a * f.qpow(k);
    for (const auto& x : {p.a, p.b, p.c[j], p.d[j], p.e[j], f.qpow(-mj)}) {
      const auto tab = f.table(x, mj);
      for (int k = 0; k <= mj; ++k) row[k] *= tab[k];
    }
    for (const auto& x : single_den_bases(p, j, f)) {
      const auto tab = f.den_table(x, mj, "sum denominator j=" + std::to_string(j + 1));
      for (int k = 0; k <= mj; ++k) row[k] /= tab[k];
    }
    t.single.push_back(std::move(row));
  }
  t.pair.assign(static_cast<std::size_t>(top) + 1,
                std::vector<CScalar>(static_cast<std::size_t>(top) + 1));
  for (int u = 0; u <= top; ++u) {
    for (int v = 0; v <= top; ++v) {
      t.pair[u][v] = f.qpow(u) * f.theta(f.qpow(v - u)) * f.theta(p.a * f.qpow(u + v));
    }
  }
  return t;
}

}  // namespace

void check_cnt_poles(const CntParams& p, const Real& threshold, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  const Factorials f(p.base, ctx, threshold);
  const int n = p.n;
  f.theta_den(p.a, "theta(a)");
  const CScalar aq = p.a * f.q();
  const CScalar s = p.a * f.qpow(2 - n) / p.b;
  for (int j = 0; j < n; ++j) {
    for (const auto& x : single_den_bases(p, j, f)) f.den_table(x, p.m[j], "sum denominator");
    for (const auto& x : {aq / p.c[j], aq / p.d[j], aq / p.e[j], aq / (p.c[j] * p.d[j] * p.e[j])}) {
      f.den_table(x, p.m[j], "product denominator");
    }
    f.den_table(p.a * f.qpow(2 + n - 2 * (j + 1)) / p.b, j, "(aq^{2+n-2j}/b)");
    for (const auto& x : {s / p.c[j], s / p.d[j], s / p.e[j], s * f.qpow(p.m[j])}) {
      f.den_table(x, n - 1, "determinant denominator");
    }
  }
}

std::vector<CntTerm> cnt_terms(const CntParams& p, const PrecisionContext& ctx) {
  p.validate(ctx);
  const long size = grid_size(p);
  const PrecisionScope scope(ctx);
  const Factorials f(p.base, ctx);
  const CntTables t = cnt_tables(p, f);
  const int n = p.n;

  std::vector<CntTerm> terms;
  terms.reserve(static_cast<std::size_t>(size));
  std::vector<int> k(static_cast<std::size_t>(n), 0);
  for (long index = 0; index < size; ++index) {
    CScalar value(1);
    for (int i = 0; i < n && !value.is_zero(); ++i) {
      for (int j = i + 1; j < n; ++j) value *= t.pair[k[i]][k[j]];
    }
    if (!value.is_zero()) {
      for (int j = 0; j < n; ++j) value *= t.single[j][k[j]];
    }
    terms.push_back({k, std::move(value)});
    for (int j = n - 1; j >= 0; --j) {
      if (++k[j] <= p.m[j]) break;
      k[j] = 0;
    }
  }
  return terms;
}

CScalar cnt_rhs(const CntParams& p, const PrecisionContext& ctx) {
  p.validate(ctx);
  const PrecisionScope scope(ctx);
  const Factorials f(p.base, ctx);
  const int n = p.n;
  const CScalar& a = p.a;
  const CScalar& b = p.b;
  const CScalar aq = a * f.q();

  CScalar out = pow_int(b, -binom2(n)) * pow_int(f.q(), -2 * binom3(n));
  const CScalar lead = f.table(a * f.qpow(2 - n) / b, n - 1).back();
  const auto t_b = f.table(b, n - 1);
  for (int j = 1; j <= n; ++j) {
    const int idx = j - 1;
    out *= lead * t_b[idx] /
           f.den_table(a * f.qpow(2 + n - 2 * j) / b, j - 1, "(aq^{2+n-2j}/b)").back();
    const CScalar& c = p.c[idx];
    const CScalar& d = p.d[idx];
    const CScalar& e = p.e[idx];
    out *= f.ratio({aq, aq / (c * d), aq / (c * e), aq / (d * e)},
                   {aq / c, aq / d, aq / e, aq / (c * d * e)}, p.m[idx], "product");
  }

  const CScalar s = a * f.qpow(2 - n) / b;
  std::vector<RowBases> rows;
  for (int j = 0; j < n; ++j) {
    rows.push_back({{p.c[j], p.d[j], p.e[j], f.qpow(-p.m[j])},
                    {s / p.c[j], s / p.d[j], s / p.e[j], s * f.qpow(p.m[j])}});
  }
  return out * det_lu(ratio_matrix(rows, f, "multiple-sum determinant"), ctx);
}

VerificationReport eval_cnt(const CntParams& p, const PrecisionContext& ctx) {
  const auto terms = cnt_terms(p, ctx);
  const PrecisionScope scope(ctx);
  CScalar lhs(0);
  for (const auto& term : terms) lhs += term.value;
  return make_report("cnt", lhs, cnt_rhs(p, ctx), ctx, p.digest(ctx));
}

// ------------------------------------------------ m_j = n - 1 specialization

CntParams cnt_from_dt(const DtParams& p) {
  const CScalar& q = p.base.q();
  CntParams out{p.base, p.n, std::vector<int>(static_cast<std::size_t>(p.n), p.n - 1),
                p.a / q, p.e() / q, p.b, p.c, p.d};
  return out;
}

namespace {

bool is_permutation(const std::vector<int>& k) {
  std::vector<bool> seen(k.size(), false);
  for (const int v : k) {
    if (v < 0 || v >= static_cast<int>(k.size()) || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

int permutation_sign(const std::vector<int>& k) {
  int sign = 1;
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (std::size_t j = i + 1; j < k.size(); ++j) {
      if (k[i] > k[j]) sign = -sign;
    }
  }
  return sign;
}

}  // namespace

CntSpecialization cnt_specialization_details(const DtParams& p, const PrecisionContext& ctx) {
  p.validate(ctx);
  const CntParams cp = cnt_from_dt(p);
  const auto terms = cnt_terms(cp, ctx);
  const PrecisionScope scope(ctx);
  const Factorials f(p.base, ctx);
  const CntTables t = cnt_tables(cp, f);
  const int n = p.n;
  const CScalar& a = cp.a;

  CntSpecialization out;
  out.total_terms = static_cast<int>(terms.size());
  out.max_term = Real(0);
  for (const auto& term : terms) {
    if (!term.value.is_zero()) ++out.nonzero_terms;
    out.max_term = max(out.max_term, abs(term.value));
  }

  // prod_{0<=i<j<=n-1} q^i theta(q^{j-i}), and the same with theta(aq^{i+j}).
  CScalar vandermonde(1);
  CScalar constant(1);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const CScalar v = f.qpow(i) * f.theta(f.qpow(j - i));
      vandermonde *= v;
      constant *= v * f.theta(a * f.qpow(i + j));
    }
  }

  CScalar permutation_sum(0);
  CScalar total(0);
  out.max_nonpermutation_ratio = Real(0);
  out.sign_identity_residual = Real(0);
  for (const auto& term : terms) {
    total += term.value;
    if (!is_permutation(term.k)) {
      if (!out.max_term.is_zero()) {
        out.max_nonpermutation_ratio =
            max(out.max_nonpermutation_ratio, abs(term.value) / out.max_term);
      }
      continue;
    }
    permutation_sum += term.value;
    CScalar lhs_sign(1);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        lhs_sign *= f.qpow(term.k[i]) * f.theta(f.qpow(term.k[j] - term.k[i]));
      }
    }
    out.sign_identity_residual =
        max(out.sign_identity_residual,
            rel_residual(lhs_sign, CScalar(permutation_sign(term.k)) * vandermonde));
  }

  ComplexMatrix single(n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) single(j, k) = t.single[j][k];
  }
  out.permutation_det_residual = rel_residual(permutation_sum, constant * det_lu(single, ctx));

  const CScalar rhs = cnt_rhs(cp, ctx);
  out.identity_residual = rel_residual(total, rhs);

  // Column factors shared by every row: theta(aq^{2k})/theta(a)
  // * (a, b, q^{1-n})_k / (q, aq/b, aq^n)_k * q^k.
  CScalar normaliser = constant;
  const CScalar theta_a = f.theta_den(a, "theta(a)");
  const CScalar aq = a * f.q();
  for (int k = 0; k < n; ++k) {
    normaliser *= f.theta(a * f.qpow(2 * k)) / theta_a * f.qpow(k) *
                  f.ratio({a, cp.b, f.qpow(1 - n)}, {f.q(), aq / cp.b, a * f.qpow(n)}, k,
                          "column factor");
  }
  out.normalised_lhs = permutation_sum / normaliser;
  out.normalised_rhs = rhs / normaliser;

  const CScalar det_x = det_lu(dt_lhs_matrix(p, ctx), ctx);
  const FormParts third = dt_form(p, DtForm::sigma_tau_sigma, ctx);
  out.endpoint_lhs_residual = rel_residual(out.normalised_lhs, det_x);
  out.endpoint_rhs_residual = rel_residual(out.normalised_rhs, third.prefactor * third.det);
  return out;
}

VerificationReport check_cnt_specialization(const DtParams& p, const PrecisionContext& ctx) {
  const CntSpecialization s = cnt_specialization_details(p, ctx);
  const PrecisionScope scope(ctx);
  Real worst = max(max(s.sign_identity_residual, s.permutation_det_residual),
                   max(s.identity_residual,
                       max(s.endpoint_lhs_residual, s.endpoint_rhs_residual)));
  worst = max(worst, s.max_nonpermutation_ratio);
  VerificationReport report = make_report("cnt_special", s.normalised_lhs, s.normalised_rhs,
                                          std::move(worst), ctx, p.digest(ctx));
  if (s.max_nonpermutation_ratio > pow10_int(-(ctx.precision_bits / 8))) report.passed = false;
  return report;
}

}  // namespace ellipdet
