#include "tcsim/experiment.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "tcsim/ccrsp.hpp"
#include "tcsim/errors.hpp"
#include "tcsim/parallel.hpp"
#include "tcsim/qmath.hpp"
#include "tcsim/report.hpp"

namespace tcsim {

namespace {

const char* kProtocols[] = {"fig1-tc", "fig2-ccrsp", "fig3-ma", "fig7-offline"};

void require(bool ok, const std::string& message) {
  if (!ok) {
    throw ConfigError(message);
  }
}

ProverSpec parse_prover(const nlohmann::json& j,
                        const std::filesystem::path& base_dir) {
  ProverSpec spec;
  require(j.is_object() && j.contains("type"),
          "prover: expected an object with a \"type\" field");
  spec.type = j["type"].get<std::string>();
  if (j.contains("distribution")) {
    const auto& d = j["distribution"];
    if (d.is_string()) {
      const std::string s = d.get<std::string>();
      if (s == "optimal") {
        spec.distribution_kind = "optimal";
      } else {
        spec.distribution_kind = "file";
        std::filesystem::path p(s);
        if (p.is_relative()) {
          p = base_dir / p;
        }
        require(std::filesystem::exists(p),
                "prover.distribution: file does not exist: " + p.string());
        spec.distribution_file = p.string();
      }
    } else if (d.is_object()) {
      spec.distribution_kind = "inline";
      spec.distribution_inline = AttackDistribution::from_json(d);
    } else {
      throw ConfigError("prover.distribution: expected \"optimal\", a path, or a map");
    }
  }
  if (j.contains("m_qubits")) {
    spec.m_qubits = j["m_qubits"].get<int>();
    require(spec.m_qubits >= 1, "prover.m_qubits: must be >= 1");
  }
  return spec;
}

nlohmann::json prover_to_json(const ProverSpec& spec) {
  nlohmann::json j;
  j["type"] = spec.type;
  if (spec.distribution_kind == "optimal") {
    j["distribution"] = "optimal";
  } else if (spec.distribution_kind == "file") {
    j["distribution"] = spec.distribution_file;
  } else if (spec.distribution_kind == "inline") {
    j["distribution"] = spec.distribution_inline->to_json();
  }
  if (spec.m_qubits > 0) {
    j["m_qubits"] = spec.m_qubits;
  }
  return j;
}

CcrspModelSpec parse_ccrsp(const nlohmann::json& j) {
  CcrspModelSpec spec;
  require(j.is_object() && j.contains("model"),
          "ccrsp: expected an object with a \"model\" field");
  spec.model = j["model"].get<std::string>();
  require(spec.model == "ideal" || spec.model == "noisy-ideal" ||
              spec.model == "measured-entangled",
          "ccrsp.model: unknown model \"" + spec.model + "\"");
  if (j.contains("p_succ")) {
    spec.p_succ = j["p_succ"].get<double>();
  }
  require(spec.p_succ > 0.0 && spec.p_succ <= 1.0,
          "ccrsp.p_succ: must lie in (0, 1]");
  if (j.contains("noise")) {
    spec.noise = j["noise"].get<double>();
    require(spec.noise >= 0.0 && spec.noise <= 1.0,
            "ccrsp.noise: must lie in [0, 1]");
  }
  if (j.contains("rho_source")) {
    spec.rho_source = j["rho_source"].get<std::string>();
    require(spec.rho_source == "bell-pairs" || spec.rho_source == "random",
            "ccrsp.rho_source: expected \"bell-pairs\" or \"random\"");
  }
  if (j.contains("m_qubits")) {
    spec.m_qubits = j["m_qubits"].get<int>();
    require(spec.m_qubits >= 1, "ccrsp.m_qubits: must be >= 1");
  }
  if (spec.model == "measured-entangled" && spec.rho_source == "random") {
    require(spec.m_qubits >= 1,
            "ccrsp.m_qubits: required for a random measured-entangled state");
  }
  return spec;
}

nlohmann::json ccrsp_to_json(const CcrspModelSpec& spec) {
  nlohmann::json j;
  j["model"] = spec.model;
  j["p_succ"] = spec.p_succ;
  if (spec.model == "noisy-ideal") {
    j["noise"] = spec.noise;
  }
  if (spec.model == "measured-entangled") {
    j["rho_source"] = spec.rho_source;
    if (spec.rho_source == "random") {
      j["m_qubits"] = spec.m_qubits;
    }
  }
  return j;
}

AttackDistribution resolve_distribution(const ProverSpec& spec,
                                        const XxzzHamiltonian& h) {
  if (spec.distribution_kind == "optimal") {
    return optimal_attack_distribution(h);
  }
  if (spec.distribution_kind == "inline") {
    return *spec.distribution_inline;
  }
  if (spec.distribution_kind == "file") {
    return AttackDistribution::load(spec.distribution_file);
  }
  throw ConfigError("prover: this prover type needs a \"distribution\" field");
}

}  // namespace

ExperimentConfig parse_experiment(const nlohmann::json& j,
                                  const std::filesystem::path& base_dir) {
  require(j.is_object(), "config: expected a JSON object");
  ExperimentConfig config;

  require(j.contains("protocol") && j["protocol"].is_string(),
          "protocol: missing string field");
  config.protocol = j["protocol"].get<std::string>();
  bool known = false;
  for (const char* p : kProtocols) {
    known = known || config.protocol == p;
  }
  require(known, "protocol: unknown id \"" + config.protocol + "\"");

  require(j.contains("hamiltonian"), "hamiltonian: missing field");
  if (j["hamiltonian"].is_string()) {
    std::filesystem::path p(j["hamiltonian"].get<std::string>());
    if (p.is_relative()) {
      p = base_dir / p;
    }
    require(std::filesystem::exists(p),
            "hamiltonian: file does not exist: " + p.string());
    config.hamiltonian_path = p.string();
  } else if (j["hamiltonian"].is_object()) {
    config.hamiltonian_inline = XxzzHamiltonian::from_json(j["hamiltonian"]);
  } else {
    throw ConfigError("hamiltonian: expected a path or an inline instance");
  }

  require(j.contains("prover"), "prover: missing field");
  config.prover = parse_prover(j["prover"], base_dir);

  if (j.contains("ccrsp")) {
    config.ccrsp = parse_ccrsp(j["ccrsp"]);
  }
  require(config.protocol != "fig2-ccrsp" || config.ccrsp.has_value(),
          "ccrsp: required for protocol fig2-ccrsp");

  if (j.contains("p_succ")) {
    config.p_succ = j["p_succ"].get<double>();
    require(config.p_succ > 0.0 && config.p_succ <= 1.0,
            "p_succ: must lie in (0, 1]");
  }

  if (j.contains("mode")) {
    config.mode = j["mode"].get<std::string>();
    run_mode_from_name(config.mode);  // validates
  }
  if (j.contains("trials")) {
    config.trials = j["trials"].get<std::int64_t>();
  }
  if (config.mode == "sample") {
    require(config.trials >= 1, "trials: must be >= 1 in sample mode");
    require(j.contains("seed"), "seed: required in sample mode");
  }
  if (j.contains("seed")) {
    const bool non_negative =
        j["seed"].is_number_unsigned() ||
        (j["seed"].is_number_integer() && j["seed"].get<std::int64_t>() >= 0);
    require(non_negative, "seed: must be a 64-bit unsigned integer");
    config.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("out")) {
    std::filesystem::path p(j["out"].get<std::string>());
    if (p.is_relative() && !base_dir.empty()) {
      p = base_dir / p;
    }
    config.out = p.string();
  }
  if (j.contains("format")) {
    config.format = j["format"].get<std::string>();
    require(config.format == "json" || config.format == "csv",
            "format: expected \"json\" or \"csv\"");
  }
  if (j.contains("extract")) {
    config.extract = j["extract"].get<bool>();
    require(config.protocol == "fig1-tc" || config.protocol == "fig7-offline",
            "extract: only supported for fig1-tc and fig7-offline");
  }

  // Prover type / protocol compatibility.
  const std::string& t = config.prover.type;
  if (config.protocol == "fig1-tc") {
    require(t == "honest" || t == "uniform-povm" || t == "random-povm",
            "prover.type: fig1-tc takes honest|uniform-povm|random-povm");
  } else if (config.protocol == "fig2-ccrsp") {
    require(t == "honest" || t == "attack",
            "prover.type: fig2-ccrsp takes honest|attack");
    require(t != "attack" || config.prover.distribution_kind != "none",
            "prover.distribution: required for the attack prover");
  } else if (config.protocol == "fig3-ma") {
    require(t == "honest" || t == "distribution",
            "prover.type: fig3-ma takes honest|distribution");
    require(t != "distribution" || config.prover.distribution_kind != "none",
            "prover.distribution: required for the distribution prover");
  } else {
    require(t == "honest" || t == "random",
            "prover.type: fig7-offline takes honest|random");
    require(t != "random" || config.prover.m_qubits >= 1,
            "prover.m_qubits: required for the random fig7 prover");
  }
  const bool needs_generation =
      t == "random-povm" || t == "random" ||
      (config.ccrsp && config.ccrsp->rho_source == "random" &&
       config.ccrsp->model == "measured-entangled");
  require(!needs_generation || config.seed.has_value(),
          "seed: required when the config asks for generated random objects");
  return config;
}

ExperimentConfig load_experiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config: cannot open " + path.string());
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config: parse error in " + path.string() + ": " + e.what());
  }
  return parse_experiment(j, path.parent_path());
}

nlohmann::json experiment_to_json(const ExperimentConfig& config) {
  nlohmann::json j;
  j["protocol"] = config.protocol;
  if (!config.hamiltonian_path.empty()) {
    j["hamiltonian"] = config.hamiltonian_path;
  } else {
    j["hamiltonian"] = config.hamiltonian_inline->to_json();
  }
  j["prover"] = prover_to_json(config.prover);
  if (config.ccrsp) {
    j["ccrsp"] = ccrsp_to_json(*config.ccrsp);
  }
  if (config.protocol == "fig3-ma") {
    j["p_succ"] = config.p_succ;
  }
  j["mode"] = config.mode;
  if (config.mode == "sample") {
    j["trials"] = config.trials;
  }
  if (config.seed) {
    j["seed"] = *config.seed;
  }
  if (!config.out.empty()) {
    j["out"] = config.out;
  }
  j["format"] = config.format;
  if (config.extract) {
    j["extract"] = true;
  }
  return j;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const XxzzHamiltonian instance =
      config.hamiltonian_path.empty()
          ? *config.hamiltonian_inline
          : XxzzHamiltonian::load(config.hamiltonian_path);
  const int n = instance.n_qubits();

  Rng root(config.seed.value_or(0));
  Rng setup_rng = root.stream(0);
  Rng run_rng = root.stream(1);

  RunOptions opts;
  opts.trials = config.trials;
  opts.workers = worker_count_from_env();
  const RunMode mode = run_mode_from_name(config.mode);

  ExperimentResult result;
  const std::string& t = config.prover.type;

  if (config.protocol == "fig1-tc") {
    TcProver prover = HonestTeleportProver{};
    if (t == "uniform-povm") {
      prover = PovmProver{Povm::uniform(n)};
    } else if (t == "random-povm") {
      prover = PovmProver{random_povm(n, setup_rng, opts.limits)};
    }
    result.report = run_tc_protocol(instance, prover, mode, run_rng, opts);
    if (config.extract) {
      const Povm povm =
          std::holds_alternative<PovmProver>(prover)
              ? std::get<PovmProver>(prover).povm
              : honest_teleport_povm(ground_state(instance, opts.limits).state,
                                     opts.limits);
      const double p_acc = result.report.exact_probability
                               ? *result.report.exact_probability
                               : result.report.closedform_value;
      result.extraction =
          verify_extraction(instance, extract_tc(povm), p_acc);
    }
  } else if (config.protocol == "fig2-ccrsp") {
    const CcrspModelSpec& ms = *config.ccrsp;
    CcrspModel model = IdealCcrsp{ms.p_succ};
    if (ms.model == "noisy-ideal") {
      model = NoisyIdealCcrsp{ms.p_succ, ms.noise};
    } else if (ms.model == "measured-entangled") {
      if (ms.rho_source == "bell-pairs") {
        model = MeasuredEntangledCcrsp{ms.p_succ, bell_pairs_density(n), n};
      } else {
        model = MeasuredEntangledCcrsp{
            ms.p_succ, random_density_operator(ms.m_qubits + n, setup_rng),
            ms.m_qubits};
      }
    }
    CcrspProver prover = HonestTeleportProver{};
    if (t == "attack") {
      prover = ClassicalAttackProver{resolve_distribution(config.prover, instance)};
    }
    result.report = run_ccrsp_protocol(instance, model, prover, mode, run_rng, opts);
  } else if (config.protocol == "fig3-ma") {
    MaProver prover = HonestMeasureProver{};
    if (t == "distribution") {
      prover = DistributionProver{resolve_distribution(config.prover, instance)};
    }
    result.report =
        run_ma_protocol(instance, prover, config.p_succ, mode, run_rng, opts);
  } else {  // fig7-offline
    DensityOperator rho = DensityOperator::maximally_mixed(1);
    int m_qubits = n;
    std::optional<Povm> povm;
    if (t == "honest") {
      auto [honest_rho, honest_povm] = honest_offline_setup(instance, opts.limits);
      rho = std::move(honest_rho);
      povm = std::move(honest_povm);
    } else {
      m_qubits = config.prover.m_qubits;
      rho = random_density_operator(m_qubits + n, setup_rng);
      povm = random_povm(m_qubits, setup_rng, opts.limits, n);
    }
    result.report =
        run_offline_protocol(instance, rho, m_qubits, *povm, mode, run_rng, opts);
    if (config.extract) {
      const double p_acc = result.report.exact_probability
                               ? *result.report.exact_probability
                               : result.report.closedform_value;
      result.extraction = verify_extraction(
          instance, extract_ccrsp(rho, *povm, m_qubits), p_acc);
    }
  }
  return result;
}

std::string render_result(const ExperimentResult& result,
                          const std::string& format) {
  if (format == "csv") {
    return report_csv_header() + "\n" + report_csv_row(result.report) + "\n";
  }
  nlohmann::json j = report_to_json(result.report);
  if (result.extraction) {
    j["extraction"] = extraction_to_json(*result.extraction);
  }
  return j.dump(2) + "\n";
}

void write_result(const ExperimentResult& result,
                  const std::filesystem::path& path, const std::string& format) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot write report to " + path.string());
  }
  out << render_result(result, format);
}

}  // namespace tcsim
