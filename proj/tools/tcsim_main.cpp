#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tcsim/ccrsp.hpp"
#include "tcsim/closedform.hpp"
#include "tcsim/errors.hpp"
#include "tcsim/experiment.hpp"
#include "tcsim/report.hpp"
#include "tcsim/summary.hpp"
#include "tcsim/toy_rsp.hpp"

using namespace tcsim;

namespace {

XxzzHamiltonian builtin_triangle() {
  return XxzzHamiltonian(
      3, {{0, 1, 1.0 / 3, +1}, {0, 2, 1.0 / 3, +1}, {1, 2, 1.0 / 3, +1}});
}

struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<std::int64_t> trials;
  std::optional<std::string> out;
  std::optional<std::string> format;
  bool extract = false;
};

ExperimentConfig load_with_overrides(const std::string& config_path,
                                     const RunOverrides& o) {
  ExperimentConfig config = load_experiment(config_path);
  if (o.seed) {
    config.seed = *o.seed;
  }
  if (o.mode) {
    run_mode_from_name(*o.mode);
    config.mode = *o.mode;
  }
  if (o.trials) {
    config.trials = *o.trials;
  }
  if (o.out) {
    config.out = *o.out;
  }
  if (o.format) {
    if (*o.format != "json" && *o.format != "csv") {
      throw ConfigError("--format: expected json or csv");
    }
    config.format = *o.format;
  }
  if (o.extract) {
    if (config.protocol != "fig1-tc" && config.protocol != "fig7-offline") {
      throw ConfigError("extract: only supported for fig1-tc and fig7-offline");
    }
    config.extract = true;
  }
  if (config.mode == "sample" && !config.seed) {
    throw ConfigError("seed: required in sample mode (config or --seed)");
  }
  return config;
}

int do_run(const std::string& config_path, const RunOverrides& overrides) {
  const ExperimentConfig config = load_with_overrides(config_path, overrides);
  const ExperimentResult result = run_experiment(config);
  const std::string rendered = render_result(result, config.format);
  std::cout << rendered;
  if (!config.out.empty()) {
    write_result(result, config.out, config.format);
  }
  const auto rows = evaluate_reports(std::vector<RunReport>{result.report});
  return all_pass(rows) ? 0 : 1;
}

int do_attack_demo(const std::string& hamiltonian_path, double p_succ,
                   std::uint64_t seed) {
  const XxzzHamiltonian h = hamiltonian_path.empty()
                                ? builtin_triangle()
                                : XxzzHamiltonian::load(hamiltonian_path);
  const AttackDistribution d = optimal_attack_distribution(h);
  Rng rng(seed);

  const RunReport fig2 = run_ccrsp_protocol(h, IdealCcrsp{p_succ},
                                            ClassicalAttackProver{d},
                                            RunMode::Enumerate, rng);
  const RunReport fig3 =
      run_ma_protocol(h, DistributionProver{d}, p_succ, RunMode::Enumerate, rng);
  const RunReport honest = run_ccrsp_protocol(h, IdealCcrsp{p_succ},
                                              HonestTeleportProver{},
                                              RunMode::Enumerate, rng);
  const double gap = std::abs(*fig2.exact_probability - *fig3.exact_probability);

  std::printf("instance: N=%d, %zu terms, min diagonal attack target %s\n",
              h.n_qubits(), h.terms().size(),
              min_diagonal_energy(h).bitstring.str().c_str());
  std::printf("fig2-ccrsp attack acceptance (enumerated): %.15f\n",
              *fig2.exact_probability);
  std::printf("masking-attack closed form:                %.15f\n",
              fig2.closedform_value);
  std::printf("fig3-ma malicious acceptance (enumerated): %.15f\n",
              *fig3.exact_probability);
  std::printf("|fig2 - fig3| = %.3e\n", gap);
  std::printf("honest acceptance under the same channel:  %.15f\n",
              *honest.exact_probability);
  const bool attack_reaches_honest =
      *fig2.exact_probability >= *honest.exact_probability - 1e-9;
  std::printf("classical attack %s the honest value: information-theoretic\n"
              "soundness does not survive the ccRSP replacement.\n",
              attack_reaches_honest ? "reaches" : "stays below");
  const bool ok = gap < 1e-12 && fig2.deviation < 1e-12 && fig3.deviation < 1e-12;
  std::printf("%s\n", ok ? "OK: reduction equality holds to 1e-12"
                         : "FAIL: reduction equality violated");
  return ok ? 0 : 1;
}

int do_check_identities(std::uint64_t seed, int sweep) {
  int failures = 0;
  const auto line = [&](bool pass, const std::string& text) {
    std::printf("%s  %s\n", pass ? "PASS" : "FAIL", text.c_str());
    if (!pass) {
      ++failures;
    }
  };

  {
    Rng rng(seed);
    double worst = 0.0;
    for (int t = 0; t < sweep; ++t) {
      Rng tr = rng.stream(static_cast<std::uint64_t>(t));
      const DensityOperator rho = random_density_operator(1, tr);
      const BellIdentity b = bell_identity_check(
          rho, tr.next_bit(), tr.next_bit(), tr.next_bit(), tr.next_bit());
      worst = std::max(worst, std::abs(b.lhs - b.rhs));
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2e", worst);
    line(worst < 1e-12, "bell identity sweep (" + std::to_string(sweep) +
                            " draws): max deviation " + buf);
  }

  {
    Rng rng(seed + 1);
    bool ok = true;
    for (int n = 1; n <= 3; ++n) {
      const PureState e0 = random_pure_state(n, rng);
      try {
        honest_teleport_povm(e0).validate();
      } catch (const ValidationError&) {
        ok = false;
      }
    }
    line(ok, "honest teleport POVM completeness at N=1..3");
  }

  {
    Rng rng(seed + 2);
    bool ok = true;
    for (int t = 0; t < sweep / 20 + 1; ++t) {
      Rng tr = rng.stream(static_cast<std::uint64_t>(t));
      const int n = 1 + t % 2;
      try {
        cf_sigma(random_povm(n, tr)).validate();
        const DensityOperator rho = random_density_operator(n + 2, tr);
        const Povm povm = random_povm(n, tr, {}, 2);
        cf_offline_eta(rho, povm, n).validate();
      } catch (const ValidationError&) {
        ok = false;
      }
    }
    line(ok, "sigma and eta state validity sweeps");
  }

  {
    const ToyRspProtocol protocol{1};
    const auto q = toy_rsp_transcript_distribution_quantum(protocol);
    const auto c = toy_rsp_transcript_distribution_classical(protocol);
    double tv = 0.0;
    for (const auto& [key, p] : q) {
      tv += std::abs(p - (c.count(key) ? c.at(key) : 0.0));
    }
    line(q.size() == c.size() && tv / 2 < 1e-15,
         "toy ccRSP classical simulation transcript distribution");
  }

  std::printf("%d check(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}

int do_summarize(const std::vector<std::string>& inputs, const std::string& format,
                 const std::string& out_path, double tol_exact, double sigma) {
  std::vector<RunReport> reports;
  for (const std::string& path : inputs) {
    std::ifstream in(path);
    if (!in) {
      throw ConfigError("summarize: cannot open " + path);
    }
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("summarize: parse error in " + path + ": " + e.what());
    }
    reports.push_back(report_from_json(j));
  }
  SummaryOptions opts;
  opts.tol_exact = tol_exact;
  opts.sigma_factor = sigma;
  const auto rows = evaluate_reports(reports, opts);
  const std::string rendered =
      format == "csv" ? summary_csv(rows) : summary_text(rows);
  std::cout << rendered;
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      throw ConfigError("summarize: cannot write " + out_path);
    }
    out << rendered;
  }
  return all_pass(rows) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "tcsim: simulator and verification suite for trusted-center "
      "energy-test protocols and their ccRSP variants"};
  app.require_subcommand(1);

  // run / extract share flags
  std::string config_path;
  RunOverrides overrides;
  std::uint64_t seed_flag = 0;
  std::int64_t trials_flag = 0;
  std::string mode_flag, out_flag, format_flag;

  const auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "experiment config JSON")->required();
    cmd->add_option("--seed", seed_flag, "override the config seed (u64)");
    cmd->add_option("--mode", mode_flag, "enumerate|sample");
    cmd->add_option("--trials", trials_flag, "sample-mode trial count");
    cmd->add_option("--out", out_flag, "report output path");
    cmd->add_option("--format", format_flag, "json|csv");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "run one configured experiment");
  add_run_flags(run_cmd);

  CLI::App* extract_cmd = app.add_subcommand(
      "extract", "run an experiment and extract the low-energy state");
  add_run_flags(extract_cmd);

  std::string demo_hamiltonian;
  double demo_p_succ = 1.0;
  std::uint64_t demo_seed = 1;
  CLI::App* demo_cmd = app.add_subcommand(
      "attack-demo",
      "show the ccRSP-replacement attack matching the single-message protocol");
  demo_cmd->add_option("--hamiltonian", demo_hamiltonian,
                       "instance JSON (default: built-in triangle)");
  demo_cmd->add_option("--p-succ", demo_p_succ, "channel success probability")
      ->check(CLI::Range(1e-9, 1.0));
  demo_cmd->add_option("--seed", demo_seed, "rng seed");

  std::uint64_t check_seed = 7;
  int check_sweep = 1000;
  CLI::App* check_cmd = app.add_subcommand(
      "check-identities", "Bell identity, POVM completeness, state validity");
  check_cmd->add_option("--seed", check_seed, "rng seed");
  check_cmd->add_option("--sweep", check_sweep, "random draws per sweep")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> summarize_inputs;
  std::string summarize_format = "text";
  std::string summarize_out;
  double tol_exact = 1e-12;
  double sigma = 4.0;
  CLI::App* summarize_cmd =
      app.add_subcommand("summarize", "tabulate report JSONs with pass/fail");
  summarize_cmd->add_option("reports", summarize_inputs, "report JSON files")
      ->required();
  summarize_cmd->add_option("--format", summarize_format, "text|csv");
  summarize_cmd->add_option("--out", summarize_out, "write the table here");
  summarize_cmd->add_option("--tol-exact", tol_exact,
                            "tolerance for exact-identity comparisons");
  summarize_cmd->add_option("--sigma", sigma,
                            "standard-error multiple for sampled comparisons");

  CLI11_PARSE(app, argc, argv);

  const auto fill_overrides = [&](CLI::App* cmd) {
    if (cmd->count("--seed")) {
      overrides.seed = seed_flag;
    }
    if (cmd->count("--mode")) {
      overrides.mode = mode_flag;
    }
    if (cmd->count("--trials")) {
      overrides.trials = trials_flag;
    }
    if (cmd->count("--out")) {
      overrides.out = out_flag;
    }
    if (cmd->count("--format")) {
      overrides.format = format_flag;
    }
  };

  try {
    if (run_cmd->parsed()) {
      fill_overrides(run_cmd);
      return do_run(config_path, overrides);
    }
    if (extract_cmd->parsed()) {
      fill_overrides(extract_cmd);
      overrides.extract = true;
      return do_run(config_path, overrides);
    }
    if (demo_cmd->parsed()) {
      return do_attack_demo(demo_hamiltonian, demo_p_succ, demo_seed);
    }
    if (check_cmd->parsed()) {
      return do_check_identities(check_seed, check_sweep);
    }
    if (summarize_cmd->parsed()) {
      return do_summarize(summarize_inputs, summarize_format, summarize_out,
                          tol_exact, sigma);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
