#include "tcsim/strategies.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "tcsim/errors.hpp"

namespace tcsim {

AttackDistribution::AttackDistribution(int n_bits, std::vector<double> probs)
    : n_bits_(n_bits), probs_(std::move(probs)) {
  if (n_bits < 1 || n_bits > 20) {
    throw DimensionError("AttackDistribution: bit count out of range");
  }
  if (probs_.size() != (std::size_t{1} << n_bits)) {
    throw DimensionError("AttackDistribution: expected 2^n probabilities");
  }
}

AttackDistribution AttackDistribution::point_mass(const BitString& k) {
  std::vector<double> p(std::size_t{1} << k.size(), 0.0);
  p[static_cast<std::size_t>(k.index())] = 1.0;
  return AttackDistribution(k.size(), std::move(p));
}

AttackDistribution AttackDistribution::uniform(int n_bits) {
  const std::size_t cells = std::size_t{1} << n_bits;
  return AttackDistribution(
      n_bits, std::vector<double>(cells, 1.0 / static_cast<double>(cells)));
}

AttackDistribution AttackDistribution::from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.empty()) {
    throw ConfigError("attack distribution: expected a non-empty JSON object");
  }
  int n_bits = -1;
  for (const auto& [key, value] : j.items()) {
    if (n_bits < 0) {
      n_bits = static_cast<int>(key.size());
    } else if (static_cast<int>(key.size()) != n_bits) {
      throw ConfigError("attack distribution: inconsistent bitstring lengths");
    }
    if (!value.is_number()) {
      throw ConfigError("attack distribution: probability for \"" + key +
                        "\" is not a number");
    }
  }
  std::vector<double> probs(std::size_t{1} << n_bits, 0.0);
  for (const auto& [key, value] : j.items()) {
    const BitString k = BitString::from_string(key);
    probs[static_cast<std::size_t>(k.index())] = value.get<double>();
  }
  AttackDistribution d(n_bits, std::move(probs));
  d.validate();
  return d;
}

nlohmann::json AttackDistribution::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t k = 0; k < probs_.size(); ++k) {
    if (probs_[k] > 0.0) {
      j[BitString(k, n_bits_).str()] = probs_[k];
    }
  }
  return j;
}

AttackDistribution AttackDistribution::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("attack distribution: cannot open " + path.string());
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("attack distribution: parse error in " + path.string() +
                      ": " + e.what());
  }
  return from_json(j);
}

double AttackDistribution::probability(const BitString& k) const {
  if (k.size() != n_bits_) {
    throw DimensionError("AttackDistribution: bitstring length mismatch");
  }
  return probs_[static_cast<std::size_t>(k.index())];
}

BitString AttackDistribution::sample(Rng& rng) const {
  return BitString(rng.sample_discrete(probs_), n_bits_);
}

void AttackDistribution::validate(double tol) const {
  double total = 0.0;
  for (double p : probs_) {
    if (p < 0.0) {
      throw ValidationError("AttackDistribution: negative probability");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > tol) {
    throw ValidationError("AttackDistribution: probabilities sum to " +
                          std::to_string(total));
  }
}

std::pair<CenterMessage, PureState> trusted_center_sample(int n_qubits, Rng& rng) {
  if (n_qubits < 1) {
    throw DimensionError("trusted_center_sample: need at least one qubit");
  }
  const int h = rng.next_bit();
  const BitString m = rng.next_bits(n_qubits);
  return {CenterMessage{h, m}, bb84_state(h, m)};
}

Povm honest_teleport_povm(const PureState& e0, const Limits& limits) {
  const int n = e0.n_qubits();
  if (n > limits.max_povm_qubits) {
    throw LimitError("honest_teleport_povm: " + std::to_string(n) +
                     " qubits exceeds POVM limit " +
                     std::to_string(limits.max_povm_qubits));
  }
  const std::int64_t dim = e0.dim();
  const double scale = std::pow(2.0, -0.5 * n);
  std::vector<Povm::Element> elems;
  elems.reserve(static_cast<std::size_t>(dim * dim));
  Vector v(dim);
  for (std::int64_t x = 0; x < dim; ++x) {
    for (std::int64_t z = 0; z < dim; ++z) {
      // Contraction of <e0| against the Bell-pair projectors leaves the
      // rank-one vector 2^{-N/2} X^x Z^z conj(e0).
      for (std::int64_t r = 0; r < dim; ++r) {
        const std::int64_t q = r ^ x;
        const int par = std::popcount(static_cast<std::uint64_t>(z & q)) & 1;
        const Complex amp = std::conj(e0.amplitudes()(q)) * scale;
        v(r) = par ? -amp : amp;
      }
      elems.push_back({{BitString(static_cast<std::uint64_t>(x), n),
                        BitString(static_cast<std::uint64_t>(z), n)},
                       v * v.adjoint()});
    }
  }
  return Povm(n, std::move(elems));
}

BitString decoded_bits(const CenterMessage& cm, const ProverOutcome& po) {
  if (po.x.size() != cm.m.size() || po.z.size() != cm.m.size()) {
    throw DimensionError("decoded_bits: outcome length mismatch");
  }
  return cm.m ^ (cm.h ? po.z : po.x);
}

namespace {

bool pair_accepts(const HamiltonianTerm& t, const BitString& mprime) {
  // accept iff (-1)^(m'_i + m'_j) == -s_ij
  const int par = mprime.bit(t.i) ^ mprime.bit(t.j);
  const int lhs = par ? -1 : 1;
  return lhs == -t.s;
}

}  // namespace

VerifierDecision verifier_decide(const XxzzHamiltonian& h, const CenterMessage& cm,
                                 const ProverOutcome& po, Rng& rng) {
  std::vector<double> weights;
  weights.reserve(h.terms().size());
  for (const auto& t : h.terms()) {
    weights.push_back(t.p);
  }
  const auto& term = h.terms()[rng.sample_discrete(weights)];
  const BitString mprime = decoded_bits(cm, po);
  return VerifierDecision{pair_accepts(term, mprime), term.i, term.j};
}

double verifier_accept_probability(const XxzzHamiltonian& h, const CenterMessage& cm,
                                   const ProverOutcome& po) {
  const BitString mprime = decoded_bits(cm, po);
  double total = 0.0;
  for (const auto& t : h.terms()) {
    if (pair_accepts(t, mprime)) {
      total += t.p;
    }
  }
  return total;
}

ProverOutcome attack_masked_outcome(const CenterMessage& cm, const BitString& draw,
                                    const BitString& filler) {
  const BitString masked = draw ^ cm.m;
  if (cm.h == 0) {
    return ProverOutcome{masked, filler};
  }
  return ProverOutcome{filler, masked};
}

ProverOutcome classical_attack_outcome(const CenterMessage& cm,
                                       const AttackDistribution& d, Rng& rng) {
  if (d.n_bits() != cm.m.size()) {
    throw DimensionError("classical_attack_outcome: distribution width mismatch");
  }
  const BitString draw = d.sample(rng);
  const BitString filler = rng.next_bits(cm.m.size());
  return attack_masked_outcome(cm, draw, filler);
}

AttackDistribution optimal_attack_distribution(const XxzzHamiltonian& h) {
  return AttackDistribution::point_mass(min_diagonal_energy(h).bitstring);
}

}  // namespace tcsim
