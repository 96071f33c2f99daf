// Acceptance suite: the protocol-level identities this project exists to
// check, one pass/fail line each. Exit status 0 only when every criterion
// holds at its pinned tolerance.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "tcsim/ccrsp.hpp"
#include "tcsim/closedform.hpp"
#include "tcsim/experiment.hpp"
#include "tcsim/extractor.hpp"
#include "tcsim/protocols.hpp"
#include "tcsim/toy_rsp.hpp"

#include <nlohmann/json.hpp>

using namespace tcsim;

namespace {

int g_failures = 0;

void report(int index, bool pass, const std::string& text, double seconds) {
  std::printf("[%d/9] %s  %s  (%.2f s)\n", index, pass ? "PASS" : "FAIL",
              text.c_str(), seconds);
  if (!pass) {
    ++g_failures;
  }
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", v);
  return buf;
}

XxzzHamiltonian single_term(int s) { return XxzzHamiltonian(2, {{0, 1, 1.0, s}}); }

XxzzHamiltonian triangle() {
  return XxzzHamiltonian(
      3, {{0, 1, 1.0 / 3, +1}, {0, 2, 1.0 / 3, +1}, {1, 2, 1.0 / 3, +1}});
}

AttackDistribution random_distribution(int n_bits, Rng& rng) {
  std::vector<double> w(std::size_t{1} << n_bits);
  double total = 0.0;
  for (auto& v : w) {
    v = rng.next_double();
    total += v;
  }
  for (auto& v : w) {
    v /= total;
  }
  return AttackDistribution(n_bits, std::move(w));
}

class Timer {
public:
  double seconds() const {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// 1. Enumerated honest acceptance equals 1 - Tr(H |E0><E0|) within 1e-9 on
//    twenty random instances (N = 2, 3, 4) plus both fixtures, in under 60 s.
void criterion1() {
  Timer timer;
  Rng rng(101);
  std::vector<XxzzHamiltonian> instances{single_term(+1), triangle()};
  for (int t = 0; t < 20; ++t) {
    Rng tr = rng.stream(static_cast<std::uint64_t>(t));
    instances.push_back(XxzzHamiltonian::random(2 + t % 3, tr));
  }
  double worst = 0.0;
  Rng run_rng(102);
  for (const auto& h : instances) {
    const RunReport r =
        run_tc_protocol(h, HonestTeleportProver{}, RunMode::Enumerate, run_rng);
    const double oracle = 1.0 - ground_state(h).energy;
    worst = std::max(worst, std::abs(*r.exact_probability - oracle));
  }
  const double secs = timer.seconds();
  const bool pass = worst < 1e-9 && secs < 60.0;
  report(1, pass,
         "completeness: honest fig1 acceptance = 1 - Tr(H E0) on " +
             std::to_string(instances.size()) + " instances, max dev " +
             sci(worst),
         secs);
}

// 2. Two hundred random POVMs per instance: acceptance <= 1 - lambda_min and
//    equals Tr[(I-H) sigma] to 1e-12.
void criterion2() {
  Timer timer;
  Rng rng(201);
  std::vector<XxzzHamiltonian> instances{single_term(+1), single_term(-1),
                                         triangle()};
  Rng gen(202);
  instances.push_back(XxzzHamiltonian::random(2, gen));
  instances.push_back(XxzzHamiltonian::random(3, gen));
  double worst_dev = 0.0;
  double worst_excess = -1.0;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const XxzzHamiltonian& h = instances[i];
    const double lam = ground_state(h).energy;
    for (int t = 0; t < 200; ++t) {
      Rng tr = rng.stream(i * 1000 + static_cast<std::uint64_t>(t));
      const Povm povm = random_povm(h.n_qubits(), tr);
      const RunReport r = run_tc_protocol(h, PovmProver{povm}, RunMode::Enumerate, tr);
      worst_dev = std::max(worst_dev, r.deviation);
      worst_excess = std::max(worst_excess, *r.exact_probability - (1.0 - lam));
    }
  }
  const bool pass = worst_dev < 1e-12 && worst_excess < 1e-9;
  report(2, pass,
         "soundness: 1000 random POVMs, max |p - Tr[(I-H)sigma]| = " +
             sci(worst_dev) + ", max excess over 1-lambda = " +
             sci(worst_excess),
         timer.seconds());
}

// 3. Fig.2 attack acceptance equals Fig.3 malicious acceptance exactly on one
//    hundred random triples; noisy honest Fig.2 stays within epsilon of the
//    Fig.3 honest value.
void criterion3() {
  Timer timer;
  Rng rng(301);
  double worst_eq = 0.0;
  double worst_slack = -1.0;
  for (int t = 0; t < 100; ++t) {
    Rng tr = rng.stream(static_cast<std::uint64_t>(t));
    const XxzzHamiltonian h = XxzzHamiltonian::random(2 + t % 2, tr);
    const AttackDistribution d = random_distribution(h.n_qubits(), tr);
    const double p_succ = 0.4 + 0.6 * tr.next_double();
    const RunReport fig2 = run_ccrsp_protocol(h, IdealCcrsp{p_succ},
                                              ClassicalAttackProver{d},
                                              RunMode::Enumerate, tr);
    const RunReport fig3 =
        run_ma_protocol(h, DistributionProver{d}, p_succ, RunMode::Enumerate, tr);
    worst_eq = std::max(
        worst_eq, std::abs(*fig2.exact_probability - *fig3.exact_probability));

    const NoisyIdealCcrsp noisy{p_succ, 0.4 * tr.next_double()};
    const double eps = noisy_ideal_epsilon(noisy, h.n_qubits());
    const RunReport fig2h = run_ccrsp_protocol(h, noisy, HonestTeleportProver{},
                                               RunMode::Enumerate, tr);
    const RunReport fig3h =
        run_ma_protocol(h, HonestMeasureProver{}, p_succ, RunMode::Enumerate, tr);
    worst_slack =
        std::max(worst_slack, *fig2h.exact_probability -
                                  (*fig3h.exact_probability + eps));
  }
  const bool pass = worst_eq < 1e-12 && worst_slack < 1e-9;
  report(3, pass,
         "reduction: 100 triples, max |fig2 - fig3| = " + sci(worst_eq) +
             ", max honest excess over fig3+eps = " + sci(worst_slack),
         timer.seconds());
}

// 4. Soundness-breaking witness on the antiferromagnetic triangle.
void criterion4() {
  Timer timer;
  const XxzzHamiltonian tri = triangle();
  const double lam = ground_state(tri).energy;
  bool pass = lam > 0.0;
  double worst_eq = 0.0;
  Rng rng(401);
  for (double p_succ : {1.0, 0.9, 0.75}) {
    const RunReport attack = run_ccrsp_protocol(
        tri, IdealCcrsp{p_succ},
        ClassicalAttackProver{optimal_attack_distribution(tri)},
        RunMode::Enumerate, rng);
    worst_eq = std::max(worst_eq, std::abs(*attack.exact_probability -
                                           p_succ * 2.0 / 3.0));
    pass = pass && attack.deviation < 1e-12;
    const double honest = p_succ * (1.0 - lam);
    if (2.0 / 3.0 >= 1.0 - lam) {
      pass = pass && *attack.exact_probability >= honest - 1e-9;
    }
  }
  pass = pass && worst_eq < 1e-12;
  report(4, pass,
         "witness: triangle lambda_min = " + sci(lam) +
             " > 0, classical attack = (2/3) p_succ matching the masking-attack closed form, max dev " +
             sci(worst_eq),
         timer.seconds());
}

// 5. Measured-entangled model: acceptance = 1 - Tr(H eta) exactly and below
//    the soundness bound on fifty random pairs; Bell-pair input reproduces
//    the trusted-center distribution.
void criterion5() {
  Timer timer;
  const XxzzHamiltonian h = single_term(+1);
  const double lam = ground_state(h).energy;
  Rng rng(501);
  double worst_dev = 0.0;
  double worst_excess = -1.0;
  for (int t = 0; t < 50; ++t) {
    Rng tr = rng.stream(static_cast<std::uint64_t>(t));
    const int m = 1 + t % 2;
    const DensityOperator rho = random_density_operator(m + h.n_qubits(), tr);
    const Povm povm = random_povm(m, tr, {}, h.n_qubits());
    const RunReport r =
        run_offline_protocol(h, rho, m, povm, RunMode::Enumerate, tr);
    worst_dev = std::max(worst_dev, r.deviation);
    worst_excess = std::max(worst_excess, *r.exact_probability - (1.0 - lam));
  }
  double worst_td = 0.0;
  double worst_p = 0.0;
  for (int n = 1; n <= 2; ++n) {
    const MeasuredEntangledCcrsp model{1.0, bell_pairs_density(n), n};
    const double uniform = std::pow(2.0, -(n + 1));
    for (const auto& branch : enumerate_measured_entangled(model)) {
      worst_p = std::max(worst_p, std::abs(branch.probability - uniform));
      worst_td = std::max(
          worst_td, trace_distance(branch.state, bb84_density(branch.cm.h, branch.cm.m)));
    }
  }
  const bool pass =
      worst_dev < 1e-12 && worst_excess < 1e-9 && worst_td < 1e-9 && worst_p < 1e-9;
  report(5, pass,
         "measured-entangled model: 50 random pairs, max |p - (1 - Tr(H eta))| = " +
             sci(worst_dev) + ", bell-pair max trace distance " +
             sci(worst_td),
         timer.seconds());
}

// 6. Extractors: operational = closed form entrywise, Tr(eta H) = 1 - p_acc,
//    honest prover extracts the ground energy.
void criterion6() {
  Timer timer;
  Rng rng(601);
  double worst_entry = 0.0;
  double worst_identity = 0.0;
  for (const auto& h : {single_term(+1), triangle()}) {
    for (int t = 0; t < 50; ++t) {
      Rng tr = rng.stream(static_cast<std::uint64_t>(t) + (h.n_qubits() == 3 ? 500 : 0));
      const Povm povm = random_povm(h.n_qubits(), tr);
      const DensityOperator op = extract_tc(povm);
      const DensityOperator cf = extract_tc_closed_form(povm);
      worst_entry = std::max(
          worst_entry, (op.matrix() - cf.matrix()).cwiseAbs().maxCoeff());
      const RunReport r = run_tc_protocol(h, PovmProver{povm}, RunMode::Enumerate, tr);
      worst_identity = std::max(
          worst_identity, std::abs(energy(h, op) - (1.0 - *r.exact_probability)));
    }
  }
  Rng rng2(602);
  for (int t = 0; t < 20; ++t) {
    Rng tr = rng2.stream(static_cast<std::uint64_t>(t));
    const XxzzHamiltonian h = single_term(+1);
    const int m = 1 + t % 2;
    const DensityOperator rho = random_density_operator(m + 2, tr);
    const Povm povm = random_povm(m, tr, {}, 2);
    const DensityOperator op = extract_ccrsp(rho, povm, m);
    const DensityOperator cf = extract_ccrsp_closed_form(rho, povm, m);
    worst_entry =
        std::max(worst_entry, (op.matrix() - cf.matrix()).cwiseAbs().maxCoeff());
    const RunReport r = run_offline_protocol(h, rho, m, povm, RunMode::Enumerate, tr);
    worst_identity = std::max(
        worst_identity, std::abs(energy(h, op) - (1.0 - *r.exact_probability)));
  }
  double worst_honest = 0.0;
  for (const auto& h : {single_term(+1), single_term(-1), triangle()}) {
    const GroundState gs = ground_state(h);
    const DensityOperator eta = extract_tc(honest_teleport_povm(gs.state));
    worst_honest = std::max(worst_honest, std::abs(energy(h, eta) - gs.energy));
  }
  const bool pass =
      worst_entry < 1e-12 && worst_identity < 1e-9 && worst_honest < 1e-9;
  report(6, pass,
         "extractors: max entrywise gap " + sci(worst_entry) +
             ", max |Tr(eta H) - (1 - p_acc)| = " + sci(worst_identity) +
             ", honest gap " + sci(worst_honest),
         timer.seconds());
}

// 7. Toy RSP: classical transcript simulation is exact, and the simulating
//    prover learns (h, m) every time.
void criterion7() {
  Timer timer;
  const ToyRspProtocol protocol{1};
  const auto quantum = toy_rsp_transcript_distribution_quantum(protocol);
  const auto classical = toy_rsp_transcript_distribution_classical(protocol);
  double tv = 0.0;
  bool same_support = quantum.size() == classical.size();
  for (const auto& [key, p] : quantum) {
    const auto it = classical.find(key);
    if (it == classical.end()) {
      same_support = false;
      continue;
    }
    tv += std::abs(p - it->second);
  }
  tv /= 2;

  Rng rng(701);
  int matches = 0;
  const int runs = 10000;
  for (int t = 0; t < runs; ++t) {
    Rng tr = rng.stream(static_cast<std::uint64_t>(t));
    const ClassicalSimulation sim = classical_simulate_ccrsp(protocol, tr);
    const std::string want =
        "h=" + std::to_string(sim.learned.h) + " m=" + sim.learned.m.str();
    if (sim.transcript.events.back().payload == want) {
      ++matches;
    }
  }
  const bool pass = same_support && tv < 1e-15 && matches == runs;
  report(7, pass,
         "transcript simulation: TV distance " + sci(tv) + ", learned (h,m) matched " +
             std::to_string(matches) + "/" + std::to_string(runs),
         timer.seconds());
}

// 8. Single-qubit Bell identity over one thousand random draws.
void criterion8() {
  Timer timer;
  Rng rng(801);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    Rng tr = rng.stream(static_cast<std::uint64_t>(t));
    const DensityOperator rho = random_density_operator(1, tr);
    const BellIdentity b = bell_identity_check(rho, tr.next_bit(), tr.next_bit(),
                                               tr.next_bit(), tr.next_bit());
    worst = std::max(worst, std::abs(b.lhs - b.rhs));
  }
  report(8, worst < 1e-12,
         "bell identity: 1000 draws, max |lhs - rhs| = " + sci(worst),
         timer.seconds());
}

// 9. Sample mode (1e5 trials) within four standard errors of enumerate mode
//    on every fixture; identical seeds give byte-identical reports.
void criterion9() {
  Timer timer;
  RunOptions opts;
  opts.trials = 100000;
  const XxzzHamiltonian plus = single_term(+1);
  const XxzzHamiltonian tri = triangle();
  bool pass = true;
  double worst_sigmas = 0.0;

  const auto check_pair = [&](const RunReport& exact, const RunReport& sampled) {
    const double se = std::max(*sampled.std_error, 1e-9);
    const double sigmas =
        std::abs(sampled.acceptance_estimate - *exact.exact_probability) / se;
    worst_sigmas = std::max(worst_sigmas, sigmas);
    pass = pass && sigmas <= 4.0;
  };

  {
    Rng a(901), b(901);
    check_pair(run_tc_protocol(tri, HonestTeleportProver{}, RunMode::Enumerate, a),
               run_tc_protocol(tri, HonestTeleportProver{}, RunMode::Sample, b, opts));
  }
  {
    Rng g(902), a(903), b(903);
    const Povm povm = random_povm(2, g);
    check_pair(run_tc_protocol(plus, PovmProver{povm}, RunMode::Enumerate, a),
               run_tc_protocol(plus, PovmProver{povm}, RunMode::Sample, b, opts));
  }
  {
    Rng a(904), b(904);
    const AttackDistribution d = optimal_attack_distribution(tri);
    check_pair(run_ccrsp_protocol(tri, IdealCcrsp{0.8}, ClassicalAttackProver{d},
                                  RunMode::Enumerate, a),
               run_ccrsp_protocol(tri, IdealCcrsp{0.8}, ClassicalAttackProver{d},
                                  RunMode::Sample, b, opts));
  }
  {
    Rng a(905), b(905);
    const NoisyIdealCcrsp noisy{0.9, 0.2};
    check_pair(run_ccrsp_protocol(plus, noisy, HonestTeleportProver{},
                                  RunMode::Enumerate, a),
               run_ccrsp_protocol(plus, noisy, HonestTeleportProver{},
                                  RunMode::Sample, b, opts));
  }
  {
    Rng a(906), b(906);
    check_pair(run_ma_protocol(tri, HonestMeasureProver{}, 0.9, RunMode::Enumerate, a),
               run_ma_protocol(tri, HonestMeasureProver{}, 0.9, RunMode::Sample, b, opts));
  }
  {
    Rng g(907), a(908), b(908);
    const AttackDistribution d = random_distribution(3, g);
    check_pair(run_ma_protocol(tri, DistributionProver{d}, 0.7, RunMode::Enumerate, a),
               run_ma_protocol(tri, DistributionProver{d}, 0.7, RunMode::Sample, b, opts));
  }
  {
    Rng a(909), b(909);
    auto [rho, povm] = honest_offline_setup(plus);
    check_pair(run_offline_protocol(plus, rho, 2, povm, RunMode::Enumerate, a),
               run_offline_protocol(plus, rho, 2, povm, RunMode::Sample, b, opts));
  }
  {
    Rng g(910), a(911), b(911);
    const DensityOperator rho = random_density_operator(3, g);
    const Povm povm = random_povm(1, g, {}, 2);
    check_pair(run_offline_protocol(plus, rho, 1, povm, RunMode::Enumerate, a),
               run_offline_protocol(plus, rho, 1, povm, RunMode::Sample, b, opts));
  }

  // byte-identical reports for identical config + seed
  const nlohmann::json config_json{
      {"protocol", "fig2-ccrsp"},
      {"hamiltonian",
       {{"n_qubits", 3},
        {"terms",
         {{{"i", 0}, {"j", 1}, {"p", 1.0 / 3}, {"s", 1}},
          {{"i", 0}, {"j", 2}, {"p", 1.0 / 3}, {"s", 1}},
          {{"i", 1}, {"j", 2}, {"p", 1.0 / 3}, {"s", 1}}}}}},
      {"prover", {{"type", "attack"}, {"distribution", "optimal"}}},
      {"ccrsp", {{"model", "ideal"}, {"p_succ", 0.85}}},
      {"mode", "sample"},
      {"trials", 100000},
      {"seed", 20240817},
  };
  const ExperimentConfig config = parse_experiment(config_json, ".");
  const std::string r1 = render_result(run_experiment(config), "json");
  const std::string r2 = render_result(run_experiment(config), "json");
  pass = pass && (r1 == r2);

  report(9, pass,
         "statistics: 8 fixtures sample vs enumerate, worst " +
             sci(worst_sigmas) + " sigma; reports byte-identical: " +
             (r1 == r2 ? "yes" : "no"),
         timer.seconds());
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (g_failures == 0) {
    std::printf("ACCEPTANCE: 9/9 criteria passed\n");
    return 0;
  }
  std::printf("ACCEPTANCE: %d criterion(s) FAILED\n", g_failures);
  return 1;
}
