#include "ellipdet/campaign.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <optional>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "ellipdet/identities.hpp"
#include "ellipdet/sampling.hpp"
#include "ellipdet/selftest.hpp"
#include "ellipdet/symmetry.hpp"

namespace ellipdet {

namespace {

using Json = nlohmann::json;

constexpr std::array<std::pair<Identity, const char*>, 13> kIdentities{{
    {Identity::jackson, "jackson"},
    {Identity::warnaar, "warnaar"},
    {Identity::dt, "dt"},
    {Identity::ts, "ts"},
    {Identity::et1, "et1"},
    {Identity::et2, "et2"},
    {Identity::et3, "et3"},
    {Identity::tdt, "tdt"},
    {Identity::cnt, "cnt"},
    {Identity::xy, "xy"},
    {Identity::cnt_special, "cnt_special"},
    {Identity::orbit, "orbit"},
    {Identity::theta_selftest, "theta_selftest"},
}};

constexpr int kMaxN = 10;
constexpr int kMaxTrials = 1'000'000;
constexpr int kMaxDrawnM = 3;

int min_n(Identity id) {
  switch (id) {
    case Identity::jackson:
    case Identity::theta_selftest: return 0;
    default: return 1;
  }
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return buf.data();
}

// One evaluated check inside a trial.
struct Outcome {
  std::string identity;
  CScalar lhs;
  CScalar rhs;
  Real residual;
  bool passed = false;
};

Outcome from_report(const VerificationReport& r) {
  return {r.identity_name, r.lhs, r.rhs, r.rel_residual, r.passed};
}

std::vector<int> cnt_m(const CampaignSpec& spec, int n, std::uint64_t seed) {
  if (!spec.m.empty()) {
    if (spec.m.size() == 1) return std::vector<int>(static_cast<std::size_t>(n), spec.m.front());
    return spec.m;
  }
  // A stream separate from the sampler's.
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<int> m;
  for (int j = 0; j < n; ++j) {
    m.push_back(static_cast<int>(rng.uniform() * (kMaxDrawnM + 1)));
  }
  return m;
}

std::vector<Outcome> run_orbit_trial(const DtParams& p, const PrecisionContext& ctx) {
  std::vector<Outcome> out{from_report(check_group_laws(p, ctx))};
  const Hexagon h = hexagon(p, ctx);
  const PrecisionScope scope(ctx);
  const Real tol(ctx.tolerance);
  const HexagonEntry& worst_det = *std::max_element(
      h.entries.begin(), h.entries.end(),
      [](const HexagonEntry& x, const HexagonEntry& y) { return x.det_residual < y.det_residual; });
  out.push_back({"hexagon", h.lhs_det, worst_det.composed * worst_det.image_det,
                 h.worst_det_residual, h.worst_det_residual <= tol});
  const HexagonEntry& worst_pre = *std::max_element(
      h.entries.begin(), h.entries.end(), [](const HexagonEntry& x, const HexagonEntry& y) {
        return x.prefactor_residual < y.prefactor_residual;
      });
  out.push_back({"composed_prefactors", worst_pre.composed, worst_pre.explicit_prefactor,
                 h.worst_prefactor_residual, h.worst_prefactor_residual <= tol});
  return out;
}

std::vector<Outcome> run_trial(const CampaignSpec& spec, int n, std::uint64_t seed,
                               const PrecisionContext& ctx) {
  SamplerConfig cfg;
  cfg.seed = seed;
  cfg.p_modulus_max = spec.p_modulus_max;
  switch (spec.identity) {
    case Identity::jackson: return {from_report(eval_jackson(sample_jackson(n, cfg, ctx), ctx))};
    case Identity::warnaar: return {from_report(eval_warnaar(sample_warnaar(n, cfg, ctx), ctx))};
    case Identity::dt: return {from_report(eval_dt(sample_dt(n, cfg, ctx), ctx))};
    case Identity::ts: return {from_report(eval_ts(sample_dt(n, cfg, ctx), ctx))};
    case Identity::et1:
      return {from_report(eval_et(sample_dt(n, cfg, ctx), EtBranch::first, ctx))};
    case Identity::et2:
      return {from_report(eval_et(sample_dt(n, cfg, ctx), EtBranch::second, ctx))};
    case Identity::et3:
      return {from_report(eval_et(sample_dt(n, cfg, ctx), EtBranch::third, ctx))};
    case Identity::tdt: return {from_report(eval_tdt(sample_tdt(n, cfg, ctx), ctx))};
    case Identity::cnt:
      return {from_report(eval_cnt(sample_cnt(n, cnt_m(spec, n, seed), cfg, ctx), ctx))};
    case Identity::xy: return {from_report(check_xy_factorization(sample_dt(n, cfg, ctx), ctx))};
    case Identity::cnt_special:
      return {from_report(check_cnt_specialization(sample_dt(n, cfg, ctx), ctx))};
    case Identity::orbit: return run_orbit_trial(sample_dt(n, cfg, ctx), ctx);
    case Identity::theta_selftest: {
      std::vector<Outcome> out;
      for (auto& c : selftest_round(seed, spec.p_modulus_max, ctx)) {
        out.push_back({c.name, c.lhs, c.rhs, c.residual, c.passed});
      }
      return out;
    }
  }
  throw DomainError("unknown identity");
}

// Names of the checks a trial of this identity produces, used to label
// rejected trials.
std::vector<std::string> check_names(Identity id) {
  switch (id) {
    case Identity::et1:
    case Identity::et2:
    case Identity::et3:
    case Identity::jackson:
    case Identity::warnaar:
    case Identity::dt:
    case Identity::ts:
    case Identity::tdt:
    case Identity::cnt:
    case Identity::xy:
    case Identity::cnt_special: return {identity_name(id)};
    case Identity::orbit: return {"group_laws", "hexagon", "composed_prefactors"};
    case Identity::theta_selftest:
      return {"theta_series", "quasi_periodicity", "inversion", "ei", "product_identities",
              "det_lu_cofactor", "trig_reduction"};
  }
  return {};
}

}  // namespace

const char* identity_name(Identity id) {
  for (const auto& [value, name] : kIdentities) {
    if (value == id) return name;
  }
  return "?";
}

Identity parse_identity(const std::string& name) {
  for (const auto& [value, text] : kIdentities) {
    if (name == text) return value;
  }
  throw DomainError("unknown identity '" + name + "'");
}

const char* format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    case OutputFormat::human: return "human";
  }
  return "?";
}

OutputFormat parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  if (name == "human") return OutputFormat::human;
  throw DomainError("unknown output format '" + name + "'");
}

const char* status_name(TrialStatus s) {
  switch (s) {
    case TrialStatus::pass: return "pass";
    case TrialStatus::fail: return "fail";
    case TrialStatus::reject: return "reject";
  }
  return "?";
}

std::pair<int, int> parse_range(const std::string& text) {
  auto parse_int = [&](std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw UsageError("invalid range '" + text + "' (expected lo..hi)");
    }
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int v = parse_int(text);
    return {v, v};
  }
  const std::string_view view(text);
  return {parse_int(view.substr(0, dots)), parse_int(view.substr(dots + 2))};
}

void CampaignSpec::validate() const {
  if (n_lo > n_hi) throw UsageError("empty n range");
  if (n_lo < 0 || n_hi > kMaxN) throw UsageError("n range must lie within [0, 10]");
  if (n_lo < min_n(identity)) {
    throw UsageError(std::string(identity_name(identity)) + " needs n >= " +
                     std::to_string(min_n(identity)));
  }
  if (trials < 1 || trials > kMaxTrials) throw UsageError("trials must lie in [1, 10^6]");
  if (!m.empty()) {
    if (identity != Identity::cnt) throw UsageError("--m applies to cnt only");
    if (m.size() != 1 && (n_lo != n_hi || static_cast<int>(m.size()) != n_lo)) {
      throw UsageError("--m needs one value, or exactly n values for a single n");
    }
    long terms = 1;
    for (const int v : m) {
      if (v < 0) throw UsageError("m_j must be non-negative");
      terms *= v + 1L;
      if (terms > kMaxCntTerms) throw UsageError("m gives more than 10^5 summands");
    }
    if (m.size() == 1) {
      long cube = 1;
      for (int j = 0; j < n_hi && cube <= kMaxCntTerms; ++j) cube *= m.front() + 1L;
      if (cube > kMaxCntTerms) throw UsageError("m gives more than 10^5 summands");
    }
  }
  try {
    (void)make_context(precision_bits, guard_bits, tolerance);
    SamplerConfig cfg;
    cfg.p_modulus_max = p_modulus_max;
    cfg.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

int CampaignResult::exit_code() const {
  if (fail > 0) return 1;
  if (exhausted) return 3;
  return 0;
}

CampaignResult run_campaign(const CampaignSpec& spec) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();
  const PrecisionContext ctx = make_context(spec.precision_bits, spec.guard_bits, spec.tolerance);
  const PrecisionScope scope(ctx);
  const int digits = ctx.decimal_digits();

  CampaignResult result;
  result.spec = spec;
  Real worst(0);
  for (int n = spec.n_lo; n <= spec.n_hi; ++n) {
    for (int t = 0; t < spec.trials; ++t) {
      const std::uint64_t seed = spec.seed + static_cast<std::uint64_t>(t);
      std::vector<Outcome> outcomes;
      std::optional<TrialStatus> aborted;
      try {
        outcomes = run_trial(spec, n, seed, ctx);
      } catch (const SamplerExhausted&) {
        aborted = TrialStatus::reject;
        result.exhausted = true;
      } catch (const DegenerateParameters&) {
        aborted = TrialStatus::reject;
      } catch (const Error&) {
        aborted = TrialStatus::fail;
      }
      if (aborted) {
        for (auto& name : check_names(spec.identity)) {
          result.results.push_back({t, n, std::move(name), "", "", "", *aborted});
          (*aborted == TrialStatus::reject ? result.reject : result.fail)++;
        }
        continue;
      }
      for (auto& o : outcomes) {
        const TrialStatus status = o.passed ? TrialStatus::pass : TrialStatus::fail;
        (o.passed ? result.pass : result.fail)++;
        if (worst < o.residual) worst = o.residual;
        result.results.push_back({t, n, std::move(o.identity), o.lhs.to_string(digits),
                                  o.rhs.to_string(digits), o.residual.to_string(digits), status});
      }
    }
  }
  result.max_rel_residual = worst.to_string(digits);
  if (!spec.deterministic) {
    result.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count();
  }
  return result;
}

CampaignResult cmd_verify(const CampaignSpec& spec) { return run_campaign(spec); }

CampaignResult cmd_orbit(CampaignSpec spec) {
  spec.identity = Identity::orbit;
  return run_campaign(spec);
}

CampaignResult cmd_selftest(CampaignSpec spec) {
  spec.identity = Identity::theta_selftest;
  return run_campaign(spec);
}

// ---------------------------------------------------------------- output

std::string to_json(const CampaignResult& r) {
  const CampaignSpec& s = r.spec;
  Json spec = {
      {"identity", identity_name(s.identity)},
      {"n_lo", s.n_lo},
      {"n_hi", s.n_hi},
      {"trials", s.trials},
      {"m", s.m},
      {"precision_bits", s.precision_bits},
      {"guard_bits", s.guard_bits},
      {"tolerance", format_double(s.tolerance)},
      {"seed", s.seed},
      {"p_modulus_max", format_double(s.p_modulus_max)},
      {"output", format_name(s.output)},
      {"deterministic", s.deterministic},
  };
  Json results = Json::array();
  for (const auto& t : r.results) {
    results.push_back({
        {"trial", t.trial},
        {"n", t.n},
        {"identity", t.identity},
        {"lhs", t.lhs},
        {"rhs", t.rhs},
        {"rel_residual", t.rel_residual},
        {"status", status_name(t.status)},
    });
  }
  Json summary = {
      {"max_rel_residual", r.max_rel_residual},
      {"pass", r.pass},
      {"fail", r.fail},
      {"reject", r.reject},
      {"wall_time_ms", r.wall_time_ms},
  };
  const Json doc = {{"spec", spec}, {"results", results}, {"summary", summary}};
  return doc.dump(2) + "\n";
}

std::string canonicalize_json(const std::string& text) { return Json::parse(text).dump(2) + "\n"; }

std::string to_csv(const CampaignResult& r) {
  std::ostringstream out;
  out << "trial,n,identity,rel_residual,status\n";
  for (const auto& t : r.results) {
    out << t.trial << ',' << t.n << ',' << t.identity << ',' << t.rel_residual << ','
        << status_name(t.status) << '\n';
  }
  return out.str();
}

std::string to_human(const CampaignResult& r) {
  std::ostringstream out;
  out << identity_name(r.spec.identity) << "  n=" << r.spec.n_lo << ".." << r.spec.n_hi
      << "  trials=" << r.spec.trials << "  prec=" << r.spec.precision_bits
      << "  tol=" << format_double(r.spec.tolerance) << "  seed=" << r.spec.seed << '\n';
  for (const auto& t : r.results) {
    if (t.status == TrialStatus::pass) continue;
    out << "  " << status_name(t.status) << "  n=" << t.n << " trial=" << t.trial << ' '
        << t.identity;
    if (!t.rel_residual.empty()) out << "  rel_residual=" << t.rel_residual;
    out << '\n';
  }
  std::string worst = r.max_rel_residual;
  if (!worst.empty()) worst = Real(worst).to_string(4);
  out << "pass " << r.pass << "  fail " << r.fail << "  reject " << r.reject
      << "  max_rel_residual " << worst << "  (" << r.wall_time_ms << " ms)\n";
  return out.str();
}

std::string render(const CampaignResult& r) {
  switch (r.spec.output) {
    case OutputFormat::json: return to_json(r);
    case OutputFormat::csv: return to_csv(r);
    case OutputFormat::human: return to_human(r);
  }
  return {};
}

}  // namespace ellipdet
