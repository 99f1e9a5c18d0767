#include "doctest.h"

#include "ellipdet/numeric.hpp"
#include "ellipdet/sampling.hpp"
#include "support.hpp"

using namespace ellipdet;
using testing::dec;

TEST_CASE("make_context validates its arguments") {
  const PrecisionContext ctx = make_context(256, 32, 1e-35);
  CHECK(ctx.precision_bits == 256);
  CHECK(ctx.guard_bits == 32);
  CHECK(ctx.theta_truncation == 1);
  CHECK(ctx.working_bits() == 288);
  CHECK_NOTHROW(make_context(64, 0, 1e-10));
  CHECK_THROWS_AS(make_context(32, 0, 1e-5), DomainError);
  CHECK_THROWS_AS(make_context(256, -1, 1e-35), DomainError);
  CHECK_THROWS_AS(make_context(256, 32, 0.0), DomainError);
}

TEST_CASE("precision scope installs and restores the working precision") {
  const mpfr_prec_t before = working_precision();
  {
    const PrecisionScope scope(make_context(512, 16, 1e-35));
    CHECK(working_precision() == 528);
    CHECK(Real(1).precision() == 528);
  }
  CHECK(working_precision() == before);
}

TEST_CASE("rel_residual") {
  const PrecisionScope scope(testing::ctx256());
  CHECK(rel_residual(CScalar(1), CScalar(1)).is_zero());
  CHECK(rel_residual(CScalar(0), CScalar(0)).is_zero());

  // 1 vs 1 + 10^-10: the scale is 1 + 10^-10, so the residual sits one
  // relative unit of 10^-10 below 10^-10.
  const Real eps = pow10_int(-10);
  const Real r = rel_residual(CScalar(1), CScalar(Real(1) + eps));
  CHECK(abs(r - eps) <= eps * eps * Real(2));

  // the floor of 1 keeps tiny values from inflating the residual
  CHECK(rel_residual(dec("1e-50"), dec("2e-50")) <= Real(1.1e-50));
  CHECK(rel_diff(dec("1e-50"), dec("2e-50")) == Real(0.5));
}

TEST_CASE("pow_int") {
  const PrecisionScope scope(testing::ctx256());
  const CScalar z(0.3, -1.7);
  CHECK(pow_int(z, 0) == CScalar(1));
  CHECK(pow_int(CScalar(2), 3) == CScalar(8));
  CHECK(pow_int(CScalar::i(), 2) == CScalar(-1));
  CHECK(pow_int(CScalar(2), -2) == CScalar(0.25));
  CHECK_THROWS_AS(pow_int(CScalar(0), -1), DomainError);

  // z^(j+k) = z^j z^k
  Rng rng(11);
  const SamplerConfig cfg;
  for (int t = 0; t < 200; ++t) {
    const CScalar w = sample_scalar(cfg, rng);
    const long j = static_cast<long>(rng.uniform() * 40) - 20;
    const long k = static_cast<long>(rng.uniform() * 40) - 20;
    CHECK(rel_diff(pow_int(w, j + k), pow_int(w, j) * pow_int(w, k)) <= exp2_int(-270));
  }
}

TEST_CASE("complex arithmetic") {
  const PrecisionScope scope(testing::ctx256());
  const CScalar a(1.5, -2.0);
  const CScalar b(-0.25, 3.0);
  CHECK(a * b == CScalar(5.625, 5.0));
  CHECK(rel_diff(a / b * b, a) <= exp2_int(-280));
  CHECK(a.reciprocal() * a == CScalar(1));
  CHECK_THROWS_AS(a / CScalar(0), DomainError);
  CHECK(abs(CScalar(3.0, 4.0)) == Real(5));
  CHECK(CScalar(1.0, -2.0).to_string(3) == "1.00e+00-2.00e+00i");
}

TEST_CASE("polar is exact on the axes") {
  const PrecisionScope scope(testing::ctx256());
  CHECK(CScalar::polar(2.0, 0.0) == CScalar(2));
  CHECK(abs(CScalar::polar(1.5, 2.0)) - Real(1.5) <= exp2_int(-280));
}

TEST_CASE("decimal parsing") {
  const PrecisionScope scope(testing::ctx256());
  CHECK(Real(std::string_view("0.5")) == Real(0.5));
  CHECK_THROWS_AS(Real(std::string_view("half")), DomainError);
  CHECK(testing::ctx256().decimal_digits() == 79);
}
