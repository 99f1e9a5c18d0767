#include "ellipdet/selftest.hpp"

#include <cmath>
#include <utility>

#include "ellipdet/linalg.hpp"
#include "ellipdet/sampling.hpp"
#include "ellipdet/theta.hpp"

namespace ellipdet {

namespace {

constexpr double kTwoPi = 6.283185307179586;

SelfCheck compare(std::string name, CScalar lhs, CScalar rhs, Real bound) {
  SelfCheck c{std::move(name), std::move(lhs), std::move(rhs), Real(0), std::move(bound), false};
  c.residual = rel_diff(c.lhs, c.rhs);
  c.passed = c.residual <= c.bound;
  return c;
}

int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(std::floor(rng.uniform() * (hi - lo + 1)));
}

// Modulus log-uniform in [10^-2, 10^2].
CScalar wide_scalar(Rng& rng) {
  const double modulus = std::pow(10.0, -2.0 + 4.0 * rng.uniform());
  return CScalar::polar(modulus, kTwoPi * rng.uniform());
}

// prod_{j=2}^n (scale * q^{shift + mult*j})_{j-1}
CScalar staircase(const CScalar& scale, long shift, long mult, int n, const EllipticBase& base,
                  const PrecisionContext& ctx) {
  CScalar out(1);
  for (int j = 2; j <= n; ++j) {
    out *= epoch(scale * pow_int(base.q(), shift + mult * j), j - 1, base, ctx);
  }
  return out;
}

}  // namespace

std::vector<SelfCheck> selftest_round(std::uint64_t seed, double p_modulus_max,
                                      const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  SamplerConfig cfg;
  cfg.seed = seed;
  cfg.p_modulus_max = p_modulus_max;
  cfg.validate();
  Rng rng(seed);
  const int bits = ctx.precision_bits;
  const Real theta_bound = exp2_int(-(bits - 32));
  const Real tol(ctx.tolerance);
  std::vector<SelfCheck> out;

  {
    const EllipticBase base(sample_nome(cfg, rng), CScalar(1));
    const CScalar x = wide_scalar(rng);
    const CScalar t = theta_product(x, base, ctx);
    out.push_back(compare("theta_series", t, theta_series(x, base, ctx), theta_bound));
    const CScalar minus_t_over_x = -t / x;
    if (base.trigonometric()) {
      // theta(0 * x) is undefined; the inversion law still holds at p = 0.
      out.push_back(compare("quasi_periodicity", CScalar(0), CScalar(0), theta_bound));
    } else {
      out.push_back(compare("quasi_periodicity", theta_product(base.p() * x, base, ctx),
                            minus_t_over_x, theta_bound));
    }
    out.push_back(compare("inversion", theta_product(CScalar(1) / x, base, ctx), minus_t_over_x,
                          theta_bound));
  }

  {
    const CScalar p = sample_nome(cfg, rng);
    const EllipticBase base(p, sample_scalar(cfg, rng));
    const CScalar x = sample_scalar(cfg, rng);
    const CScalar y = sample_scalar(cfg, rng);
    const int j = uniform_int(rng, 1, 8);
    const CScalar s = pow_int(base.q(), 2 - j);
    const CScalar lhs = epoch(x, j - 1, base, ctx) / epoch(y, j - 1, base, ctx);
    const CScalar rhs =
        pow_int(x / y, j - 1) * epoch(s / x, j - 1, base, ctx) / epoch(s / y, j - 1, base, ctx);
    out.push_back(compare("ei", lhs, rhs, tol));
  }

  {
    const CScalar p = sample_nome(cfg, rng);
    const EllipticBase base(p, sample_scalar(cfg, rng));
    const CScalar a = sample_scalar(cfg, rng);
    const int n = uniform_int(rng, 2, 8);
    const CScalar first = staircase(a, -2, 1, n, base, ctx);
    const CScalar second = staircase(a, 2L * n, -2, n, base, ctx);
    const CScalar third = pow_int(-a, binom2(n)) * pow_int(base.q(), 3 * binom3(n)) *
                          staircase(CScalar(1) / a, 2 - 2L * n, 1, n, base, ctx);
    SelfCheck c = compare("product_identities", first, second, tol);
    const Real other = rel_diff(first, third);
    if (c.residual < other) c.residual = other;
    c.rhs = third;
    c.passed = c.residual <= c.bound;
    out.push_back(std::move(c));
  }

  {
    const int order = uniform_int(rng, 1, 6);
    ComplexMatrix m(order);
    for (int r = 0; r < order; ++r) {
      for (int c = 0; c < order; ++c) m(r, c) = sample_scalar(cfg, rng);
    }
    out.push_back(
        compare("det_lu_cofactor", det_lu(m, ctx), det_cofactor(m), exp2_int(-(bits - 56))));
  }

  {
    const EllipticBase base(CScalar(0), sample_scalar(cfg, rng));
    const CScalar a = sample_scalar(cfg, rng);
    const int k = uniform_int(rng, 0, 8);
    out.push_back(
        compare("trig_reduction", epoch(a, k, base, ctx), trig_epoch(a, k, base.q()), Real(0)));
  }
  return out;
}

}  // namespace ellipdet
