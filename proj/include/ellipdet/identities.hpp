#pragma once

/// \file
/// One evaluator per identity. Each builds both sides from raw parameters
/// and returns a VerificationReport; none of them simplifies one side into
/// the other.
///
/// Every theta factor that appears in a denominator is checked against the
/// pole threshold 10^-(precision_bits/4) before use. Parameter sets that hit
/// it raise DegenerateParameters instead of producing a meaningless residual.

#include <string>
#include <vector>

#include "ellipdet/linalg.hpp"
#include "ellipdet/numeric.hpp"
#include "ellipdet/params.hpp"

namespace ellipdet {

struct VerificationReport {
  std::string identity_name;
  CScalar lhs;
  CScalar rhs;
  Real abs_residual;
  Real rel_residual;
  /// rel_residual <= ctx.tolerance
  bool passed = false;
  std::string params_digest;
};

/// Report comparing lhs against rhs.
VerificationReport make_report(std::string name, CScalar lhs, CScalar rhs,
                               const PrecisionContext& ctx, std::string digest);

/// Report whose residual is the worst of several sub-checks (the caller
/// supplies it); abs_residual is still |lhs - rhs|.
VerificationReport make_report(std::string name, CScalar lhs, CScalar rhs, Real residual,
                               const PrecisionContext& ctx, std::string digest);

/// 10^-(precision_bits/4): denominators below this magnitude are poles.
Real pole_threshold(const PrecisionContext& ctx);

// ------------------------------------------------------------ single sums

VerificationReport eval_jackson(const JsParams& p, const PrecisionContext& ctx);
VerificationReport eval_warnaar(const WdParams& p, const PrecisionContext& ctx);
/// Product side of the Warnaar determinant evaluation.
CScalar warnaar_rhs(const WdParams& p, const PrecisionContext& ctx);

// ----------------------------------------------- determinant transformation

/// The five non-trivial members of the symmetry orbit of
/// det[(b_j,c_j,d_j)_{k-1} / (a/b_j,a/c_j,a/d_j)_{k-1}], named by the group
/// element that produces them (words act right to left: sigma_tau applies
/// tau first).
enum class DtForm { sigma, tau, sigma_tau, tau_sigma, sigma_tau_sigma };

/// Branches of the three-way expansion; first = sigma_tau,
/// second = tau_sigma, third = sigma_tau_sigma.
enum class EtBranch { first, second, third };

DtForm to_form(EtBranch branch);
const char* form_name(DtForm form);

/// rhs = prefactor * det(matrix)
struct FormParts {
  CScalar prefactor;
  ComplexMatrix matrix;
  CScalar det;
};

/// X_{jk} = (b_j,c_j,d_j)_{k-1} / (a/b_j,a/c_j,a/d_j)_{k-1}
ComplexMatrix dt_lhs_matrix(const DtParams& p, const PrecisionContext& ctx);

/// Explicit closed-form prefactor of one orbit member.
CScalar dt_prefactor(const DtParams& p, DtForm form, const PrecisionContext& ctx);

/// Explicit closed-form prefactor and determinant of one orbit member.
FormParts dt_form(const DtParams& p, DtForm form, const PrecisionContext& ctx);

VerificationReport eval_dt(const DtParams& p, const PrecisionContext& ctx);
VerificationReport eval_ts(const DtParams& p, const PrecisionContext& ctx);
VerificationReport eval_et(const DtParams& p, EtBranch which, const PrecisionContext& ctx);

/// Evaluates every denominator factor used by eval_dt, eval_ts, eval_et,
/// check_xy_factorization and the symmetry generators; throws
/// DegenerateParameters when one is below `threshold`.
void check_dt_poles(const DtParams& p, const Real& threshold, const PrecisionContext& ctx);

/// Only the denominators of det X and of the given orbit member.
void check_dt_poles(const DtParams& p, DtForm form, const Real& threshold,
                    const PrecisionContext& ctx);

/// With d_j = d for every j, both determinants of the sigma transformation
/// are Warnaar determinants up to a column factor: writing K = b_j c_j,
///   det X          = prod_k (d)_{k-1}/(a/d)_{k-1}    * W(a; 1, K; b_j)
///   det sigma-form = prod_k (a/K)_{k-1}/(a/d)_{k-1}  * W(e; a/(Kd), a/d; b_j)
/// where W is the Warnaar product formula.
struct ConstantDReduction {
  CScalar lhs_det;
  CScalar lhs_closed;
  CScalar rhs_det;
  CScalar rhs_closed;
  Real lhs_residual;
  Real rhs_residual;
};

/// Throws ConstraintViolation unless the d_j agree to 2^-(P-8).
ConstantDReduction constant_d_reduction(const DtParams& p, const PrecisionContext& ctx);
VerificationReport check_constant_d(const DtParams& p, const PrecisionContext& ctx);

// ------------------------------------------------------ trigonometric case

VerificationReport eval_tdt(const TdtParams& p, const PrecisionContext& ctx);
void check_tdt_poles(const TdtParams& p, const Real& threshold, const PrecisionContext& ctx);

// ------------------------------------------------------------ multiple sum

/// Upper bound on prod_j (m_j + 1) accepted by eval_cnt.
inline constexpr long kMaxCntTerms = 100'000;

struct CntTerm {
  std::vector<int> k;
  CScalar value;
};

/// Every summand of the multiple sum, in odometer order (k_n fastest).
std::vector<CntTerm> cnt_terms(const CntParams& p, const PrecisionContext& ctx);

/// Closed-form right-hand side of the multiple sum.
CScalar cnt_rhs(const CntParams& p, const PrecisionContext& ctx);

VerificationReport eval_cnt(const CntParams& p, const PrecisionContext& ctx);

void check_jackson_poles(const JsParams& p, const Real& threshold, const PrecisionContext& ctx);
void check_warnaar_poles(const WdParams& p, const Real& threshold, const PrecisionContext& ctx);
void check_cnt_poles(const CntParams& p, const Real& threshold, const PrecisionContext& ctx);

/// The m_j = n - 1 multiple sum induced by a determinant parameter set:
/// a -> a/q, b -> e/q, (c_j, d_j, e_j) -> (b_j, c_j, d_j).
CntParams cnt_from_dt(const DtParams& p);

struct CntSpecialization {
  int total_terms = 0;
  int nonzero_terms = 0;
  Real max_term;
  /// max over non-permutation k of |term| / max_term
  Real max_nonpermutation_ratio;
  /// sign identity for the Vandermonde-type factor, worst over permutations
  Real sign_identity_residual;
  /// permutation sum vs constant * det[single-index factors]
  Real permutation_det_residual;
  /// multiple-sum identity itself at m_j = n - 1
  Real identity_residual;
  /// normalised lhs vs det X, normalised rhs vs the third-branch rhs
  Real endpoint_lhs_residual;
  Real endpoint_rhs_residual;
  CScalar normalised_lhs;
  CScalar normalised_rhs;
};

CntSpecialization cnt_specialization_details(const DtParams& p, const PrecisionContext& ctx);
VerificationReport check_cnt_specialization(const DtParams& p, const PrecisionContext& ctx);

// ------------------------------------------------ proof-path factorization

struct XyFactorization {
  ComplexMatrix x;
  ComplexMatrix y;
  ComplexMatrix xy;         // matmul(x, y)
  ComplexMatrix xy_closed;  // closed-form entries
  CScalar det_x;
  CScalar det_y;
  CScalar det_y_closed;
  CScalar det_xy;
  /// max |Y_jk| (j > k) relative to max(1, max |Y|)
  Real triangular_residual;
  Real det_y_residual;
  /// worst entrywise rel_residual of xy vs xy_closed
  Real xy_residual;
  /// det(X) det(Y) vs det(XY)
  Real det_product_residual;
};

XyFactorization xy_factorization_details(const DtParams& p, const PrecisionContext& ctx);
VerificationReport check_xy_factorization(const DtParams& p, const PrecisionContext& ctx);

}  // namespace ellipdet
