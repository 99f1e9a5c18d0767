#pragma once

/// \file
/// Seeded random parameter sets for every identity. Balancing constraints
/// are met by solving for the last variable; sets whose denominators come
/// within the pole threshold of zero are redrawn.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ellipdet/params.hpp"

namespace ellipdet {

/// No generic parameter set was found within max_rejections redraws.
class SamplerExhausted : public Error {
 public:
  using Error::Error;
};

struct SamplerConfig {
  std::uint64_t seed = 0;
  /// |value| of sampled scalars is uniform in [modulus_low, modulus_high]
  double modulus_low = 0.2;
  double modulus_high = 2.0;
  /// |p| is uniform in [0, p_modulus_max]
  double p_modulus_max = 0.6;
  /// defaults to 10^-(precision_bits/4)
  std::optional<double> pole_threshold;
  int max_rejections = 1000;

  /// Throws DomainError on an inconsistent configuration.
  void validate() const;
};

/// Random stream. Draws depend only on (seed, draw index), identically on
/// every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  [[nodiscard]] std::uint64_t draws() const { return draws_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

/// Modulus uniform in the configured range, argument uniform in [0, 2pi).
CScalar sample_scalar(const SamplerConfig& cfg, Rng& rng);

/// Nome with modulus uniform in [0, p_modulus_max].
CScalar sample_nome(const SamplerConfig& cfg, Rng& rng);

/// Rejection statistics of the most recent call on this thread.
struct SampleStats {
  int rejections = 0;
};
SampleStats last_sample_stats();

// Each sampler seeds a fresh Rng from cfg.seed.

/// d_j = C / (b_j c_j).
DtParams sample_dt(int n, const SamplerConfig& cfg, const PrecisionContext& ctx);
/// d_j = d for every j and b_j c_j = K.
DtParams sample_dt_constant_d(int n, const SamplerConfig& cfg, const PrecisionContext& ctx);
/// e = a^2 q^{n+1} / (b c d).
JsParams sample_jackson(int n, const SamplerConfig& cfg, const PrecisionContext& ctx);
/// e_j = a^2 q^{2-n+m_j} / (b c_j d_j).
CntParams sample_cnt(int n, const std::vector<int>& m, const SamplerConfig& cfg,
                     const PrecisionContext& ctx);
/// x_j pairwise distinct.
WdParams sample_warnaar(int n, const SamplerConfig& cfg, const PrecisionContext& ctx);
/// p = 0; only q, z_j and a_j are drawn.
TdtParams sample_tdt(int n, const SamplerConfig& cfg, const PrecisionContext& ctx);

}  // namespace ellipdet
