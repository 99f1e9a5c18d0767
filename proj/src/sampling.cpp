#include "ellipdet/sampling.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "ellipdet/identities.hpp"
#include "ellipdet/theta.hpp"

namespace ellipdet {

namespace {

constexpr double kTwoPi = 6.283185307179586;

thread_local SampleStats g_last_stats;

Real threshold_of(const SamplerConfig& cfg, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  return cfg.pole_threshold ? Real(*cfg.pole_threshold) : pole_threshold(ctx);
}

// Draws until `draw` returns a set that `accept` does not reject with
// DegenerateParameters.
template <class Draw, class Accept>
auto sample_until(const SamplerConfig& cfg, const PrecisionContext& ctx, Draw draw, Accept accept)
    -> decltype(draw(std::declval<Rng&>())) {
  cfg.validate();
  const PrecisionScope scope(ctx);
  const Real threshold = threshold_of(cfg, ctx);
  Rng rng(cfg.seed);
  g_last_stats = {};
  std::string last_reason;
  for (;;) {
    auto params = draw(rng);
    try {
      accept(params, threshold);
      return params;
    } catch (const DegenerateParameters& e) {
      last_reason = e.what();
    }
    if (++g_last_stats.rejections > cfg.max_rejections) {
      throw SamplerExhausted("could not find generic parameters after " +
                             std::to_string(cfg.max_rejections) + " rejections (last: " +
                             last_reason + ")");
    }
  }
}

void require_n(int n, int lowest) {
  if (n < lowest) throw DomainError("n must be at least " + std::to_string(lowest));
}

std::vector<CScalar> scalars(int count, const SamplerConfig& cfg, Rng& rng) {
  std::vector<CScalar> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(sample_scalar(cfg, rng));
  return out;
}

// Rejects when theta(x_i/x_j) nearly vanishes, i.e. x_i and x_j coincide up
// to the theta lattice.
void require_distinct(const std::vector<CScalar>& x, const EllipticBase& base, const Real& threshold,
                      const PrecisionContext& ctx, const char* what) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      if (abs(theta_product(x[i] / x[j], base, ctx)) < threshold) {
        throw DegenerateParameters(std::string(what) + " not distinct");
      }
    }
  }
}

}  // namespace

void SamplerConfig::validate() const {
  if (!(modulus_low > 0.0) || !(modulus_low <= modulus_high) || !std::isfinite(modulus_high)) {
    throw DomainError("modulus range must satisfy 0 < low <= high");
  }
  if (!(p_modulus_max >= 0.0) || !(p_modulus_max < 1.0)) {
    throw DomainError("p_modulus_max must lie in [0, 1)");
  }
  if (pole_threshold && !(*pole_threshold > 0.0)) {
    throw DomainError("pole_threshold must be positive");
  }
  if (max_rejections < 1) throw DomainError("max_rejections must be positive");
}

double Rng::uniform() {
  ++draws_;
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

CScalar sample_scalar(const SamplerConfig& cfg, Rng& rng) {
  const double modulus = cfg.modulus_low + (cfg.modulus_high - cfg.modulus_low) * rng.uniform();
  return CScalar::polar(modulus, kTwoPi * rng.uniform());
}

CScalar sample_nome(const SamplerConfig& cfg, Rng& rng) {
  const double modulus = cfg.p_modulus_max * rng.uniform();
  return CScalar::polar(modulus, kTwoPi * rng.uniform());
}

SampleStats last_sample_stats() { return g_last_stats; }

DtParams sample_dt(int n, const SamplerConfig& cfg, const PrecisionContext& ctx) {
  require_n(n, 1);
  return sample_until(
      cfg, ctx,
      [&](Rng& rng) {
        const CScalar p = sample_nome(cfg, rng);
        const CScalar q = sample_scalar(cfg, rng);
        DtParams out{EllipticBase(p, q), n, sample_scalar(cfg, rng), scalars(n, cfg, rng),
                     scalars(n, cfg, rng), {}};
        const CScalar constant = sample_scalar(cfg, rng);
        for (int j = 0; j < n; ++j) out.d.push_back(constant / (out.b[j] * out.c[j]));
        return out;
      },
      [&](const DtParams& p, const Real& threshold) {
        check_dt_poles(p, DtForm::sigma, threshold, ctx);
      });
}

DtParams sample_dt_constant_d(int n, const SamplerConfig& cfg, const PrecisionContext& ctx) {
  require_n(n, 1);
  return sample_until(
      cfg, ctx,
      [&](Rng& rng) {
        const CScalar p = sample_nome(cfg, rng);
        const CScalar q = sample_scalar(cfg, rng);
        DtParams out{EllipticBase(p, q), n, sample_scalar(cfg, rng), scalars(n, cfg, rng), {}, {}};
        const CScalar k = sample_scalar(cfg, rng);
        const CScalar d = sample_scalar(cfg, rng);
        for (int j = 0; j < n; ++j) {
          out.c.push_back(k / out.b[j]);
          out.d.push_back(d);
        }
        return out;
      },
      [&](const DtParams& p, const Real& threshold) {
        check_dt_poles(p, DtForm::sigma, threshold, ctx);
        require_distinct(p.b, p.base, threshold, ctx, "b_j");
      });
}

JsParams sample_jackson(int n, const SamplerConfig& cfg, const PrecisionContext& ctx) {
  require_n(n, 0);
  return sample_until(
      cfg, ctx,
      [&](Rng& rng) {
        const CScalar p = sample_nome(cfg, rng);
        const CScalar q = sample_scalar(cfg, rng);
        JsParams out{EllipticBase(p, q), n, sample_scalar(cfg, rng), sample_scalar(cfg, rng),
                     sample_scalar(cfg, rng), sample_scalar(cfg, rng), CScalar()};
        out.e = out.a * out.a * pow_int(q, n + 1) / (out.b * out.c * out.d);
        return out;
      },
      [&](const JsParams& p, const Real& threshold) { check_jackson_poles(p, threshold, ctx); });
}

CntParams sample_cnt(int n, const std::vector<int>& m, const SamplerConfig& cfg,
                     const PrecisionContext& ctx) {
  require_n(n, 1);
  if (static_cast<int>(m.size()) != n) throw DomainError("m must have n entries");
  for (const int mj : m) {
    if (mj < 0) throw DomainError("m_j must be non-negative");
  }
  return sample_until(
      cfg, ctx,
      [&](Rng& rng) {
        const CScalar p = sample_nome(cfg, rng);
        const CScalar q = sample_scalar(cfg, rng);
        CntParams out{EllipticBase(p, q), n, m, sample_scalar(cfg, rng), sample_scalar(cfg, rng),
                      scalars(n, cfg, rng), scalars(n, cfg, rng), {}};
        for (int j = 0; j < n; ++j) {
          out.e.push_back(out.a * out.a * pow_int(q, 2 - n + m[j]) / (out.b * out.c[j] * out.d[j]));
        }
        return out;
      },
      [&](const CntParams& p, const Real& threshold) { check_cnt_poles(p, threshold, ctx); });
}

WdParams sample_warnaar(int n, const SamplerConfig& cfg, const PrecisionContext& ctx) {
  require_n(n, 1);
  return sample_until(
      cfg, ctx,
      [&](Rng& rng) {
        const CScalar p = sample_nome(cfg, rng);
        const CScalar q = sample_scalar(cfg, rng);
        return WdParams{EllipticBase(p, q), n, sample_scalar(cfg, rng), sample_scalar(cfg, rng),
                        sample_scalar(cfg, rng), scalars(n, cfg, rng)};
      },
      [&](const WdParams& p, const Real& threshold) {
        check_warnaar_poles(p, threshold, ctx);
        require_distinct(p.x, p.base, threshold, ctx, "x_j");
      });
}

TdtParams sample_tdt(int n, const SamplerConfig& cfg, const PrecisionContext& ctx) {
  require_n(n, 1);
  return sample_until(
      cfg, ctx,
      [&](Rng& rng) {
        const CScalar q = sample_scalar(cfg, rng);
        return TdtParams{q, n, scalars(n, cfg, rng), scalars(n, cfg, rng)};
      },
      [&](const TdtParams& p, const Real& threshold) {
        check_tdt_poles(p, threshold, ctx);
        require_distinct(p.z, EllipticBase(CScalar(0), p.q), threshold, ctx, "z_j");
      });
}

}  // namespace ellipdet
