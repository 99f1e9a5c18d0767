#include "ellipdet/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

namespace ellipdet {

namespace {

constexpr mpfr_rnd_t kRound = MPFR_RNDN;

void check_argument(const CScalar& x, const EllipticBase& base) {
  if (x.is_zero()) throw DomainError("theta(x) is undefined at x = 0");
  if (!base.trigonometric() && abs(base.p()).to_double() > kMaxNomeModulus) {
    throw DomainError("theta evaluation refused for |p| > 0.99");
  }
}

// Bits of relative accuracy a product term of magnitude |u| needs for the
// factor (1 - u) to be right to 2^-bits: the leading 1 absorbs the rest.
long needed_bits(mpfr_srcptr re, mpfr_srcptr im, long bits) {
  long e = std::numeric_limits<long>::min();
  if (!mpfr_zero_p(re)) e = std::max<long>(e, mpfr_get_exp(re));
  if (!mpfr_zero_p(im)) e = std::max<long>(e, mpfr_get_exp(im));
  if (e == std::numeric_limits<long>::min()) return 0;
  return bits + 8 + std::min<long>(e, 0);
}

// One of the two geometric sequences p^j x and p^{j+1}/x, stepped by
// multiplication with p at a precision that shrinks with its magnitude.
class Sequence {
 public:
  Sequence(const CScalar& start, const CScalar& p, long bits)
      : re_(start.re()), im_(start.im()), p_re_(p.re()), p_im_(p.im()), bits_(bits) {}

  // Precision needed by the current term; 0 once it no longer matters.
  [[nodiscard]] long needed() const { return needed_bits(re_.raw(), im_.raw(), bits_); }

  // acc <- acc * (1 - u)
  void apply(Real& acc_re, Real& acc_im, long prec) {
    prec = std::clamp<long>(prec, MPFR_PREC_MIN + 16, bits_);
    mpfr_set_prec(a_re_.raw(), prec);
    mpfr_set_prec(a_im_.raw(), prec);
    mpfr_set_prec(t_re_.raw(), prec);
    mpfr_set_prec(t_im_.raw(), prec);
    mpfr_set(a_re_.raw(), acc_re.raw(), kRound);
    mpfr_set(a_im_.raw(), acc_im.raw(), kRound);
    mpfr_fmms(t_re_.raw(), a_re_.raw(), re_.raw(), a_im_.raw(), im_.raw(), kRound);
    mpfr_fmma(t_im_.raw(), a_re_.raw(), im_.raw(), a_im_.raw(), re_.raw(), kRound);
    mpfr_sub(acc_re.raw(), acc_re.raw(), t_re_.raw(), kRound);
    mpfr_sub(acc_im.raw(), acc_im.raw(), t_im_.raw(), kRound);
  }

  // u <- u * p
  void step() {
    const long prec = std::clamp<long>(needed(), MPFR_PREC_MIN + 16, bits_);
    if (prec < static_cast<long>(mpfr_get_prec(re_.raw()))) {
      mpfr_prec_round(re_.raw(), prec, kRound);
      mpfr_prec_round(im_.raw(), prec, kRound);
      mpfr_prec_round(p_re_.raw(), prec, kRound);
      mpfr_prec_round(p_im_.raw(), prec, kRound);
      mpfr_set_prec(t_re_.raw(), prec);
      mpfr_set_prec(t_im_.raw(), prec);
    } else {
      mpfr_set_prec(t_re_.raw(), mpfr_get_prec(re_.raw()));
      mpfr_set_prec(t_im_.raw(), mpfr_get_prec(re_.raw()));
    }
    mpfr_fmms(t_re_.raw(), re_.raw(), p_re_.raw(), im_.raw(), p_im_.raw(), kRound);
    mpfr_fmma(t_im_.raw(), re_.raw(), p_im_.raw(), im_.raw(), p_re_.raw(), kRound);
    mpfr_swap(re_.raw(), t_re_.raw());
    mpfr_swap(im_.raw(), t_im_.raw());
  }

 private:
  Real re_, im_;
  Real p_re_, p_im_;
  Real a_re_, a_im_;
  Real t_re_, t_im_;
  long bits_;
};

// theta_product is pure and the identity evaluators revisit the same
// arguments many times (pole checks, shared rows, prefactors), so results
// are memoised per thread, keyed on the exact bits of (precision, p, x).
class ThetaCache {
 public:
  static constexpr std::size_t kMaxEntries = 1 << 16;

  static std::string key(long bits, const CScalar& p, const CScalar& x) {
    std::string k(reinterpret_cast<const char*>(&bits), sizeof bits);
    for (const Real* r : {&p.re(), &p.im(), &x.re(), &x.im()}) append(k, r->raw());
    return k;
  }

  const CScalar* find(const std::string& k) const {
    const auto it = map_.find(k);
    return it == map_.end() ? nullptr : &it->second;
  }

  void insert(std::string k, const CScalar& v) {
    if (map_.size() >= kMaxEntries) map_.clear();
    map_.emplace(std::move(k), v);
  }

 private:
  static void append(std::string& k, mpfr_srcptr x) {
    const int sign = mpfr_signbit(x) ? 1 : 0;
    const long prec = mpfr_get_prec(x);
    k.append(reinterpret_cast<const char*>(&sign), sizeof sign);
    k.append(reinterpret_cast<const char*>(&prec), sizeof prec);
    if (mpfr_zero_p(x) || !mpfr_number_p(x)) {
      k.push_back(mpfr_zero_p(x) ? 'z' : 'n');
      return;
    }
    const long exp = mpfr_get_exp(x);
    k.append(reinterpret_cast<const char*>(&exp), sizeof exp);
    const std::size_t limbs = (static_cast<std::size_t>(prec) + mp_bits_per_limb - 1) /
                              static_cast<std::size_t>(mp_bits_per_limb);
    k.append(static_cast<const char*>(mpfr_custom_get_significand(x)), limbs * sizeof(mp_limb_t));
  }

  std::unordered_map<std::string, CScalar> map_;
};

thread_local ThetaCache g_theta_cache;

}  // namespace

EllipticBase::EllipticBase(CScalar p, CScalar q) : p_(std::move(p)), q_(std::move(q)) {
  if (!(abs(p_) < Real(1))) throw DomainError("elliptic nome must satisfy |p| < 1");
  if (q_.is_zero()) throw DomainError("base q must be non-zero");
}

int theta_truncation(const CScalar& x, const EllipticBase& base, const PrecisionContext& ctx) {
  check_argument(x, base);
  if (base.trigonometric()) return 1;
  const double p_mod = abs(base.p()).to_double();
  // Tail factors are 1 + O(|p|^J max(|x|, 1/|x|) / (1 - |p|)).
  const double bits = ctx.working_bits() + std::fabs(abs(x).log2_abs()) -
                      std::log2(1.0 - p_mod) + 2.0;
  const double per_factor = -std::log2(p_mod);
  const double needed = std::ceil(bits / per_factor);
  const int floor_count = std::max(1, ctx.theta_truncation);
  if (needed >= kMaxThetaFactors) return kMaxThetaFactors;
  return std::max(floor_count, static_cast<int>(needed));
}

CScalar theta_product(const CScalar& x, const EllipticBase& base, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  const int factors = theta_truncation(x, base, ctx);
  if (base.trigonometric()) return CScalar(1) - x;

  const long bits = ctx.working_bits();
  std::string cache_key = ThetaCache::key(bits, base.p(), x);
  if (const CScalar* hit = g_theta_cache.find(cache_key)) return *hit;

  Sequence u(x, base.p(), bits);
  Sequence v(base.p() / x, base.p(), bits);
  Real re(1);
  Real im(0);
  for (int j = 0; j < factors; ++j) {
    const long nu = u.needed();
    const long nv = v.needed();
    if (nu <= 0 && nv <= 0) break;
    if (nu > 0) u.apply(re, im, nu);
    if (nv > 0) v.apply(re, im, nv);
    u.step();
    v.step();
  }
  CScalar value(std::move(re), std::move(im));
  g_theta_cache.insert(std::move(cache_key), value);
  return value;
}

CScalar theta_series(const CScalar& x, const EllipticBase& base, const PrecisionContext& ctx) {
  const PrecisionScope scope(ctx);
  check_argument(x, base);
  if (base.trigonometric()) return CScalar(1) - x;

  const CScalar& p = base.p();
  const CScalar inv_x = x.reciprocal();
  const double cutoff = -(ctx.working_bits() + 8.0);

  // sum_{n in Z} (-1)^n p^{n(n-1)/2} x^n, split into n >= 0 and n < 0.
  // Consecutive ratios are -p^n x (upwards) and -p^{m+1}/x (downwards).
  CScalar sum(1);
  double max_log2 = 0.0;
  auto run = [&](const CScalar& ratio_seed, const CScalar& first_ratio_power) {
    CScalar term(1);
    CScalar pk = first_ratio_power;  // p^n for the step about to be taken
    for (int step = 0; step < kMaxThetaFactors; ++step) {
      term *= -(pk * ratio_seed);
      sum += term;
      const double lt = abs(term).log2_abs();
      max_log2 = std::max(max_log2, lt);
      const double ratio_log2 = (abs(pk).log2_abs() + abs(ratio_seed).log2_abs());
      if (ratio_log2 < -1.0 && lt < max_log2 + cutoff) break;
      pk *= p;
    }
  };
  run(x, CScalar(1));  // n = 1, 2, ...: ratio -p^{n-1} x
  run(inv_x, p);       // n = -1, -2, ...: ratio -p^{m}/x

  // prod_{j>=1} (1 - p^j)
  CScalar euler(1);
  CScalar pj = p;
  for (int j = 1; j < kMaxThetaFactors; ++j) {
    euler *= CScalar(1) - pj;
    if (abs(pj).log2_abs() < cutoff) break;
    pj *= p;
  }
  return sum / euler;
}

std::vector<CScalar> epoch_table(const CScalar& a, int k, const EllipticBase& base,
                                 const PrecisionContext& ctx) {
  if (k < 0) throw DomainError("shifted factorial with negative length " + std::to_string(k));
  const PrecisionScope scope(ctx);
  std::vector<CScalar> table;
  table.reserve(static_cast<std::size_t>(k) + 1);
  table.emplace_back(1);
  CScalar arg = a;
  for (int i = 0; i < k; ++i) {
    table.push_back(table.back() * theta_product(arg, base, ctx));
    arg *= base.q();
  }
  return table;
}

CScalar epoch(const CScalar& a, int k, const EllipticBase& base, const PrecisionContext& ctx) {
  return epoch_table(a, k, base, ctx).back();
}

CScalar multi_epoch(std::span<const CScalar> as, int k, const EllipticBase& base,
                    const PrecisionContext& ctx) {
  if (k < 0) throw DomainError("shifted factorial with negative length " + std::to_string(k));
  const PrecisionScope scope(ctx);
  CScalar out(1);
  for (const auto& a : as) out *= epoch(a, k, base, ctx);
  return out;
}

CScalar trig_epoch(const CScalar& a, int k, const CScalar& q) {
  if (k < 0) throw DomainError("shifted factorial with negative length " + std::to_string(k));
  CScalar out(1);
  CScalar arg = a;
  for (int i = 0; i < k; ++i) {
    out *= CScalar(1) - arg;
    arg *= q;
  }
  return out;
}

}  // namespace ellipdet
