// ellipdet: run verification campaigns from the command line.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ellipdet/campaign.hpp"

namespace {

struct Options {
  std::string identity = "dt";
  std::string n = "1..1";
  std::string out = "json";
  ellipdet::CampaignSpec spec;
};

void add_common(CLI::App* cmd, Options& o, const std::string& default_n) {
  o.n = default_n;
  cmd->add_option("--n", o.n, "n or inclusive range lo..hi")->capture_default_str();
  cmd->add_option("--trials", o.spec.trials, "trials per n")->capture_default_str();
  cmd->add_option("--prec", o.spec.precision_bits, "precision in bits")->capture_default_str();
  cmd->add_option("--guard", o.spec.guard_bits, "guard bits")->capture_default_str();
  cmd->add_option("--tol", o.spec.tolerance, "pass tolerance on rel_residual")
      ->capture_default_str();
  cmd->add_option("--seed", o.spec.seed, "base seed; trial t uses seed + t")
      ->capture_default_str();
  cmd->add_option("--p-max", o.spec.p_modulus_max, "largest sampled |p|")->capture_default_str();
  cmd->add_option("--out", o.out, "json, csv or human")->capture_default_str();
  cmd->add_flag("--deterministic", o.spec.deterministic, "report wall_time_ms as 0");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify elliptic determinant and summation identities at high precision"};
  app.require_subcommand(1);

  Options verify;
  auto* verify_cmd = app.add_subcommand("verify", "run one identity over random parameters");
  verify_cmd->add_option("--identity", verify.identity,
                         "jackson, warnaar, dt, ts, et1, et2, et3, tdt, cnt, xy, cnt_special, "
                         "orbit, theta_selftest")
      ->capture_default_str();
  verify_cmd->add_option("--m", verify.spec.m, "cnt summation bounds, e.g. --m 2,1,3")
      ->delimiter(',');
  add_common(verify_cmd, verify, "1..1");

  Options orbit;
  auto* orbit_cmd = app.add_subcommand("orbit", "check the six-element symmetry orbit");
  add_common(orbit_cmd, orbit, "1..1");

  Options selftest;
  auto* selftest_cmd = app.add_subcommand("selftest", "cross-check theta, factorials and det");
  add_common(selftest_cmd, selftest, "0..0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Options& o = verify_cmd->parsed() ? verify : orbit_cmd->parsed() ? orbit : selftest;
  try {
    if (verify_cmd->parsed()) o.spec.identity = ellipdet::parse_identity(o.identity);
    if (orbit_cmd->parsed()) o.spec.identity = ellipdet::Identity::orbit;
    if (selftest_cmd->parsed()) o.spec.identity = ellipdet::Identity::theta_selftest;
    std::tie(o.spec.n_lo, o.spec.n_hi) = ellipdet::parse_range(o.n);
    o.spec.output = ellipdet::parse_format(o.out);
    o.spec.validate();
  } catch (const ellipdet::Error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    const ellipdet::CampaignResult result = ellipdet::run_campaign(o.spec);
    std::cout << ellipdet::render(result);
    return result.exit_code();
  } catch (const ellipdet::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
