#include "doctest.h"

#include <vector>

#include "ellipdet/linalg.hpp"
#include "ellipdet/sampling.hpp"
#include "support.hpp"

using namespace ellipdet;

namespace {

ComplexMatrix random_matrix(int n, Rng& rng) {
  const SamplerConfig cfg;
  ComplexMatrix m(n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m(r, c) = sample_scalar(cfg, rng);
  }
  return m;
}

}  // namespace

TEST_CASE("matrix construction") {
  CHECK_THROWS_AS(ComplexMatrix(2, std::vector<CScalar>(3)), DomainError);
  const ComplexMatrix id = ComplexMatrix::identity(3);
  CHECK(id(1, 1) == CScalar(1));
  CHECK(id(0, 2) == CScalar(0));
  CHECK(id.all_finite());
}

TEST_CASE("determinants of small hand cases") {
  const PrecisionContext ctx = testing::ctx256();
  const PrecisionScope scope(ctx);
  for (int n = 1; n <= 7; ++n) {
    CHECK(det_lu(ComplexMatrix::identity(n), ctx) == CScalar(1));
    CHECK(det_cofactor(ComplexMatrix::identity(n)) == CScalar(1));
  }

  const ComplexMatrix two(2, {CScalar(3.0, 1.0), CScalar(2), CScalar(-1), CScalar(0.5, -2.0)});
  const CScalar expected = CScalar(3.0, 1.0) * CScalar(0.5, -2.0) + CScalar(2);
  CHECK(det_cofactor(two) == expected);
  CHECK(rel_diff(det_lu(two, ctx), expected) <= exp2_int(-280));

  const ComplexMatrix one(1, {CScalar(0.25, -4.0)});
  CHECK(det_cofactor(one) == CScalar(0.25, -4.0));
  CHECK(det_lu(one, ctx) == CScalar(0.25, -4.0));

  // a transposition of the 3x3 identity
  const ComplexMatrix swap(3, {0, 1, 0, 1, 0, 0, 0, 0, 1});
  CHECK(det_cofactor(swap) == CScalar(-1));
  CHECK(det_lu(swap, ctx) == CScalar(-1));

  const ComplexMatrix singular(2, {1, 2, 2, 4});
  CHECK(det_lu(singular, ctx).is_zero());
}

TEST_CASE("matmul") {
  const PrecisionScope scope(testing::ctx256());
  const ComplexMatrix a(2, {1, 1, 0, 1});
  const ComplexMatrix b(2, {1, 0, 1, 1});
  const ComplexMatrix ab = matmul(a, b);
  CHECK(ab(0, 0) == CScalar(2));
  CHECK(ab(0, 1) == CScalar(1));
  CHECK(ab(1, 0) == CScalar(1));
  CHECK(ab(1, 1) == CScalar(1));

  Rng rng(5);
  const ComplexMatrix m = random_matrix(4, rng);
  const ComplexMatrix left = matmul(ComplexMatrix::identity(4), m);
  const ComplexMatrix right = matmul(m, ComplexMatrix::identity(4));
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      CHECK(left(r, c) == m(r, c));
      CHECK(right(r, c) == m(r, c));
    }
  }
  CHECK_THROWS_AS(matmul(ComplexMatrix(2), ComplexMatrix(3)), DomainError);
}

TEST_CASE("cofactor expansion refuses large orders") {
  CHECK_NOTHROW(det_cofactor(ComplexMatrix::identity(kMaxCofactorOrder)));
  CHECK_THROWS_AS(det_cofactor(ComplexMatrix::identity(kMaxCofactorOrder + 1)), DomainError);
}

TEST_CASE("column reversal multiplies the determinant by (-1)^C(n,2)") {
  const PrecisionContext ctx = testing::ctx256();
  const PrecisionScope scope(ctx);
  Rng rng(17);
  for (int n = 1; n <= 6; ++n) {
    const ComplexMatrix m = random_matrix(n, rng);
    const ComplexMatrix r = m.reversed_columns();
    CHECK(r(0, 0) == m(0, n - 1));
    CHECK(rel_diff(det_lu(r, ctx), CScalar(sign_pow(binom2(n))) * det_lu(m, ctx)) <=
          exp2_int(-200));
  }
}

TEST_CASE("LU agrees with cofactor expansion on random matrices") {
  const PrecisionContext ctx = testing::ctx256();
  const PrecisionScope scope(ctx);
  Rng rng(99);
  for (int t = 0; t < 60; ++t) {
    const int n = 1 + t % 6;
    const ComplexMatrix m = random_matrix(n, rng);
    CAPTURE(n);
    CHECK(rel_diff(det_lu(m, ctx), det_cofactor(m)) <= exp2_int(-200));
  }
}

TEST_CASE("det(AB) = det(A) det(B)") {
  const PrecisionContext ctx = testing::ctx256();
  const PrecisionScope scope(ctx);
  Rng rng(3);
  for (int n = 1; n <= 6; ++n) {
    const ComplexMatrix a = random_matrix(n, rng);
    const ComplexMatrix b = random_matrix(n, rng);
    CHECK(rel_diff(det_lu(matmul(a, b), ctx), det_lu(a, ctx) * det_lu(b, ctx)) <= exp2_int(-200));
  }
}
