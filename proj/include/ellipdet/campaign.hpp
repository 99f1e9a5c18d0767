#pragma once

/// \file
/// Verification campaigns: many seeded trials of one identity over a range
/// of n, collected into a report that serialises to JSON, CSV or text.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ellipdet/numeric.hpp"

namespace ellipdet {

enum class Identity {
  jackson,
  warnaar,
  dt,
  ts,
  et1,
  et2,
  et3,
  tdt,
  cnt,
  xy,
  cnt_special,
  orbit,
  theta_selftest,
};

enum class OutputFormat { json, csv, human };

const char* identity_name(Identity id);
/// Throws DomainError for unknown names.
Identity parse_identity(const std::string& name);
const char* format_name(OutputFormat f);
OutputFormat parse_format(const std::string& name);

/// Invalid campaign specification (exit status 2).
class UsageError : public Error {
 public:
  using Error::Error;
};

struct CampaignSpec {
  Identity identity = Identity::dt;
  int n_lo = 1;
  int n_hi = 1;
  int trials = 1;
  /// cnt only; empty means m_j is drawn from {0,..,3} per trial
  std::vector<int> m;
  int precision_bits = 256;
  int guard_bits = 32;
  double tolerance = 1e-35;
  std::uint64_t seed = 0;
  double p_modulus_max = 0.6;
  OutputFormat output = OutputFormat::json;
  /// report wall_time_ms as 0 so that reruns are byte-identical
  bool deterministic = false;

  /// Throws UsageError.
  void validate() const;
};

/// Parses "lo..hi" or a single integer.
std::pair<int, int> parse_range(const std::string& text);

enum class TrialStatus { pass, fail, reject };
const char* status_name(TrialStatus s);

struct TrialRecord {
  int trial = 0;
  int n = 0;
  std::string identity;
  /// decimal strings; empty for rejected trials
  std::string lhs;
  std::string rhs;
  std::string rel_residual;
  TrialStatus status = TrialStatus::pass;
};

struct CampaignResult {
  CampaignSpec spec;
  /// sorted by (n, trial, identity order of evaluation)
  std::vector<TrialRecord> results;
  std::string max_rel_residual;
  int pass = 0;
  int fail = 0;
  int reject = 0;
  long wall_time_ms = 0;
  /// some trial ran out of sampler attempts
  bool exhausted = false;

  /// 0 all pass, 1 any failure, 3 sampler exhaustion
  [[nodiscard]] int exit_code() const;
};

/// identity = orbit runs the group-law and hexagon checks; theta_selftest
/// runs the self-test sweeps; every other identity runs its evaluator.
CampaignResult run_campaign(const CampaignSpec& spec);
CampaignResult cmd_verify(const CampaignSpec& spec);
/// As run_campaign with identity forced to orbit.
CampaignResult cmd_orbit(CampaignSpec spec);
/// As run_campaign with identity forced to theta_selftest.
CampaignResult cmd_selftest(CampaignSpec spec);

std::string to_json(const CampaignResult& result);
std::string to_csv(const CampaignResult& result);
std::string to_human(const CampaignResult& result);
std::string render(const CampaignResult& result);

/// Parses a report and serialises it again in canonical form.
std::string canonicalize_json(const std::string& text);

}  // namespace ellipdet
