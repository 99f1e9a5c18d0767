#include "doctest.h"

#include <vector>

#include "ellipdet/identities.hpp"
#include "ellipdet/sampling.hpp"
#include "support.hpp"

using namespace ellipdet;
using testing::dec;

namespace {

SamplerConfig config(std::uint64_t seed, double p_max = 0.6) {
  SamplerConfig cfg;
  cfg.seed = seed;
  cfg.p_modulus_max = p_max;
  return cfg;
}

}  // namespace

TEST_CASE("jackson: empty sum and small cases") {
  const PrecisionContext ctx = testing::ctx256();
  const PrecisionScope scope(ctx);
  const JsParams zero = sample_jackson(0, config(1), ctx);
  const VerificationReport r0 = eval_jackson(zero, ctx);
  CHECK(r0.lhs == CScalar(1));
  CHECK(r0.rhs == CScalar(1));
  CHECK(r0.passed);

  const VerificationReport r1 = eval_jackson(sample_jackson(1, config(2), ctx), ctx);
  CHECK(r1.rel_residual <= Real(1e-40));

  const VerificationReport trig = eval_jackson(sample_jackson(3, config(3, 0.0), ctx), ctx);
  CHECK(trig.rel_residual <= Real(1e-40));
}

// Product side frozen from an independent mpmath evaluation (80 digits).
TEST_CASE("jackson: fixed parameters against a frozen value") {
  const PrecisionContext ctx = testing::ctx256();
  const PrecisionScope scope(ctx);
  const CScalar q = dec("0.8", "0.1");
  JsParams p{EllipticBase(dec("0.35"), q), 2, dec("0.9"), dec("1.3"), dec("0.7", "0.2"),
             dec("1.1", "-0.3"), CScalar()};
  p.e = p.a * p.a * pow_int(q, 3) / (p.b * p.c * p.d);
  const VerificationReport r = eval_jackson(p, ctx);
  const CScalar expected = dec("-0.17302663451340395882239543761526312166264271886232",
                               "-1.3296343129677591985179078414514007751408294463526");
  CHECK(rel_diff(r.rhs, expected) <= Real(1e-48));
  CHECK(r.rel_residual <= Real(1e-40));
}

TEST_CASE("jackson: unbalanced and degenerate parameters are refused") {
  const PrecisionContext ctx = testing::ctx256();
  const PrecisionScope scope(ctx);
  JsParams p = sample_jackson(2, config(4), ctx);
  p.e *= CScalar(1.001);
  CHECK_THROWS_AS(eval_jackson(p, ctx), ConstraintViolation);

  // b = a q puts theta(aq/b) = theta(1) in a denominator
  JsParams pole = sample_jackson(2, config(5), ctx);
  const CScalar q = pole.base.q();
  pole.b = pole.a * q;
  pole.e = pole.a * pole.a * pow_int(q, 3) / (pole.b * pole.c * pole.d);
  CHECK_THROWS_AS(eval_jackson(pole, ctx), DegenerateParameters);
}

TEST_CASE("warnaar determinant") {
  const PrecisionContext ctx = testing::ctx256();
  const PrecisionScope scope(ctx);
  const VerificationReport one = eval_warnaar(sample_warnaar(1, config(6), ctx), ctx);
  CHECK(one.lhs == CScalar(1));
  CHECK(one.rhs == CScalar(1));

  WdParams same = sample_warnaar(2, config(7), ctx);
  same.x[1] = same.x[0];
  const VerificationReport coincident = eval_warnaar(same, ctx);
  CHECK(abs(coincident.lhs) <= exp2_int(-240));
  CHECK(coincident.rhs.is_zero());

  const VerificationReport four = eval_warnaar(sample_warnaar(4, config(8, 0.3), ctx), ctx);
  CHECK(four.rel_residual <= Real(1e-35));
}

// Determinant frozen from an independent mpmath evaluation (80 digits).
TEST_CASE("warnaar determinant: fixed parameters against a frozen value") {
  const PrecisionContext ctx = testing::ctx256();
  const PrecisionScope scope(ctx);
  const WdParams p{EllipticBase(dec("0.3"), dec("0.9", "0.2")), 2, dec("1.2", "0.1"), dec("0.8"),
                   dec("1.5", "-0.2"), {dec("0.6", "0.3"), dec("1.4")}};
  const VerificationReport r = eval_warnaar(p, ctx);
  const CScalar expected = dec("-1.6529688265373112865440434957565342614343178595088",
                               "0.1957800173714339939439177177405551284349884090015");
  CHECK(rel_diff(r.lhs, expected) <= Real(1e-48));
  CHECK(rel_diff(warnaar_rhs(p, ctx), expected) <= Real(1e-48));
}

TEST_CASE("determinant transformation") {
  const PrecisionContext ctx = testing::ctx256();
  const PrecisionScope scope(ctx);
  const VerificationReport one = eval_dt(sample_dt(1, config(9), ctx), ctx);
  CHECK(one.lhs == CScalar(1));
  CHECK(one.rhs == CScalar(1));

  const VerificationReport five = eval_dt(sample_dt(5, config(10, 0.4), ctx), ctx);
  CHECK(five.rel_residual <= Real(1e-35));

  const VerificationReport trig = eval_dt(sample_dt(3, config(11, 0.0), ctx), ctx);
  CHECK(trig.rel_residual <= Real(1e-35));

  DtParams broken = sample_dt(3, config(12), ctx);
  broken.d[2] *= CScalar(1.01);
  CHECK_THROWS_AS(eval_dt(broken, ctx), ConstraintViolation);
}

// det X frozen from an independent mpmath evaluation (80 digits).
TEST_CASE("determinant transformation: fixed parameters against a frozen value") {
  const PrecisionContext ctx = testing::ctx256();
  const PrecisionScope scope(ctx);
  const CScalar k = dec("0.8", "-0.1");
  DtParams p{EllipticBase(dec("0.25"), dec("0.7", "0.4")), 2, dec("1.1", "0.3"),
             {dec("0.9"), dec("1.3", "0.2")}, {dec("0.5", "0.5"), dec("1.2")}, {}};
  for (int j = 0; j < 2; ++j) p.d.push_back(k / (p.b[j] * p.c[j]));
  const VerificationReport r = eval_dt(p, ctx);
  const CScalar expected = dec("0.23322641950501676251511143901942710561276540701221",
                               "-0.61212334296483460121567619573971607076092813678922");
  CHECK(rel_diff(r.lhs, expected) <= Real(1e-48));
  CHECK(r.rel_residual <= Real(1e-35));
}

TEST_CASE("constant d_j instances reduce to the warnaar product") {
  const PrecisionContext ctx = testing::ctx256();
  const PrecisionScope scope(ctx);
  for (const int n : {1, 2, 3, 4}) {
    const DtParams p = sample_dt_constant_d(n, config(20 + n), ctx);
    const ConstantDReduction red = constant_d_reduction(p, ctx);
    CAPTURE(n);
    CHECK(red.lhs_residual <= Real(1e-35));
    CHECK(red.rhs_residual <= Real(1e-35));
    CHECK(check_constant_d(p, ctx).passed);
    CHECK(eval_dt(p, ctx).passed);
  }
  CHECK_THROWS_AS(constant_d_reduction(sample_dt(3, config(30), ctx), ctx), ConstraintViolation);
}

TEST_CASE("column reversal and the three-way expansion") {
  const PrecisionContext ctx = testing::ctx256();
  const PrecisionScope scope(ctx);
  const DtParams one = sample_dt(1, config(40), ctx);
  CHECK(eval_ts(one, ctx).rhs == CScalar(1));
  for (const EtBranch b : {EtBranch::first, EtBranch::second, EtBranch::third}) {
    CHECK(rel_diff(eval_et(one, b, ctx).rhs, CScalar(1)) <= exp2_int(-250));
  }

  CHECK(eval_ts(sample_dt(2, config(41), ctx), ctx).rel_residual <= Real(1e-35));
  CHECK(eval_ts(sample_dt(3, config(42, 0.0), ctx), ctx).rel_residual <= Real(1e-35));
  CHECK(eval_et(sample_dt(2, config(43), ctx), EtBranch::first, ctx).rel_residual <=
        Real(1e-35));
  CHECK(eval_et(sample_dt(4, config(44), ctx), EtBranch::third, ctx).rel_residual <=
        Real(1e-35));
  CHECK(to_form(EtBranch::first) == DtForm::sigma_tau);
  CHECK(to_form(EtBranch::second) == DtForm::tau_sigma);
  CHECK(to_form(EtBranch::third) == DtForm::sigma_tau_sigma);
}

TEST_CASE("trigonometric determinant identity") {
  const PrecisionContext ctx = testing::ctx256();
  const PrecisionScope scope(ctx);
  const VerificationReport one = eval_tdt(sample_tdt(1, config(50), ctx), ctx);
  CHECK(one.lhs == CScalar(1));
  CHECK(one.rhs == CScalar(1));

  // Expanding the 2x2 determinants by hand gives -1/90 on both sides.
  const TdtParams hand{CScalar(0.5), 2, {CScalar(2), CScalar(3)}, {CScalar(5), CScalar(7)}};
  const VerificationReport r = eval_tdt(hand, ctx);
  const CScalar expected = CScalar(-1) / CScalar(90);
  CHECK(rel_diff(r.lhs, expected) <= exp2_int(-270));
  CHECK(rel_diff(r.rhs, expected) <= exp2_int(-270));

  CHECK(eval_tdt(sample_tdt(6, config(51), ctx), ctx).rel_residual <= Real(1e-40));
}

TEST_CASE("multiple sum") {
  const PrecisionContext ctx = testing::ctx256();
  const PrecisionScope scope(ctx);

  // n = 1 is the single balanced sum
  for (int m = 0; m <= 3; ++m) {
    const CntParams p = sample_cnt(1, {m}, config(60 + m), ctx);
    const VerificationReport multi = eval_cnt(p, ctx);
    const VerificationReport single = eval_jackson(to_jackson(p), ctx);
    CAPTURE(m);
    CHECK(rel_diff(multi.lhs, single.lhs) <= exp2_int(-240));
    CHECK(rel_diff(multi.rhs, single.rhs) <= exp2_int(-240));
  }

  const VerificationReport zero = eval_cnt(sample_cnt(2, {0, 0}, config(70), ctx), ctx);
  CHECK(zero.lhs.is_zero());
  CHECK(zero.rhs.is_zero());

  const CntParams three = sample_cnt(3, {2, 1, 3}, config(71), ctx);
  CHECK(cnt_terms(three, ctx).size() == 3 * 2 * 4);
  CHECK(eval_cnt(three, ctx).rel_residual <= Real(1e-30));

  CHECK_THROWS_AS(sample_cnt(2, {1}, config(72), ctx), DomainError);
}

TEST_CASE("permutation-vanishing specialization") {
  const PrecisionContext ctx = testing::ctx256();
  const PrecisionScope scope(ctx);
  const CntSpecialization two = cnt_specialization_details(sample_dt(2, config(80), ctx), ctx);
  CHECK(two.total_terms == 4);
  CHECK(two.nonzero_terms == 2);

  const DtParams p3 = sample_dt(3, config(81), ctx);
  const CntSpecialization three = cnt_specialization_details(p3, ctx);
  CHECK(three.total_terms == 27);
  CHECK(three.nonzero_terms == 6);
  CHECK(three.max_nonpermutation_ratio <= Real(1e-30));
  CHECK(three.permutation_det_residual <= Real(1e-30));
  CHECK(three.endpoint_lhs_residual <= Real(1e-30));
  CHECK(three.endpoint_rhs_residual <= Real(1e-30));
  CHECK(check_cnt_specialization(p3, ctx).passed);
}

TEST_CASE("proof-path factorization") {
  const PrecisionContext ctx = testing::ctx256();
  const PrecisionScope scope(ctx);
  const XyFactorization one = xy_factorization_details(sample_dt(1, config(90), ctx), ctx);
  CHECK(one.y(0, 0) == CScalar(1));
  CHECK(one.xy(0, 0) == CScalar(1));

  const XyFactorization two = xy_factorization_details(sample_dt(2, config(91), ctx), ctx);
  CHECK(rel_diff(two.xy(0, 0), CScalar(1)) <= exp2_int(-250));
  CHECK(two.xy_residual <= Real(1e-35));

  const XyFactorization five = xy_factorization_details(sample_dt(5, config(92, 0.3), ctx), ctx);
  CHECK(five.triangular_residual <= Real(1e-35));
  CHECK(five.det_y_residual <= Real(1e-35));
  CHECK(five.xy_residual <= Real(1e-35));
  CHECK(five.det_product_residual <= Real(1e-35));
}

TEST_CASE("pole guard") {
  const PrecisionContext ctx = testing::ctx256();
  const PrecisionScope scope(ctx);
  CHECK(pole_threshold(ctx) == pow10_int(-64));

  // b_1 = a makes theta(a/b_1) = theta(1) vanish in the first row
  DtParams p = sample_dt(2, config(100), ctx);
  const CScalar k = p.triple_product();
  p.b[0] = p.a;
  p.d[0] = k / (p.b[0] * p.c[0]);
  try {
    eval_dt(p, ctx);
    FAIL("expected DegenerateParameters");
  } catch (const DegenerateParameters& e) {
    CHECK(!e.factor().empty());
  }
}
