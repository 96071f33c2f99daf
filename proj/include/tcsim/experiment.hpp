#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "tcsim/extractor.hpp"
#include "tcsim/hamiltonian.hpp"
#include "tcsim/protocols.hpp"
#include "tcsim/strategies.hpp"

namespace tcsim {

// Prover description in an experiment config.
//   fig1-tc:      honest | uniform-povm | random-povm
//   fig2-ccrsp:   honest | attack       (attack carries a distribution)
//   fig3-ma:      honest | distribution
//   fig7-offline: honest | random       (random carries m_qubits)
struct ProverSpec {
  std::string type = "honest";
  std::string distribution_kind = "none";  // none | optimal | inline | file
  std::optional<AttackDistribution> distribution_inline;
  std::string distribution_file;
  int m_qubits = 0;

  bool operator==(const ProverSpec&) const = default;
};

// ccRSP channel description (fig2-ccrsp only).
struct CcrspModelSpec {
  std::string model = "ideal";  // ideal | noisy-ideal | measured-entangled
  double p_succ = 1.0;
  double noise = 0.0;                      // noisy-ideal
  std::string rho_source = "bell-pairs";   // measured-entangled: bell-pairs | random
  int m_qubits = 0;                        // measured-entangled random source

  bool operator==(const CcrspModelSpec&) const = default;
};

struct ExperimentConfig {
  std::string protocol;  // fig1-tc | fig2-ccrsp | fig3-ma | fig7-offline
  std::string hamiltonian_path;                     // exclusive with inline
  std::optional<XxzzHamiltonian> hamiltonian_inline;
  ProverSpec prover;
  std::optional<CcrspModelSpec> ccrsp;  // fig2 only
  double p_succ = 1.0;                  // fig3 only
  std::string mode = "enumerate";
  std::int64_t trials = 100000;
  std::optional<std::uint64_t> seed;  // required in sample mode
  std::string out;
  std::string format = "json";
  bool extract = false;
};

// Parse and fully validate a config. Relative hamiltonian paths resolve
// against base_dir; referenced files must exist. Error messages carry the
// offending field name.
ExperimentConfig parse_experiment(const nlohmann::json& j,
                                  const std::filesystem::path& base_dir);

// Parse a config file; JSON syntax errors are reported with the parser's
// position diagnostics.
ExperimentConfig load_experiment(const std::filesystem::path& path);

nlohmann::json experiment_to_json(const ExperimentConfig& config);

struct ExperimentResult {
  RunReport report;
  std::optional<ExtractionResult> extraction;
};

// Execute the configured run. All generated objects (random instances,
// POVMs, channel states) derive from config.seed, so identical configs give
// byte-identical reports.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Rendered report, including the extraction section when present.
std::string render_result(const ExperimentResult& result, const std::string& format);

// Write render_result to the path (creating parent directories).
void write_result(const ExperimentResult& result, const std::filesystem::path& path,
                  const std::string& format);

}  // namespace tcsim
