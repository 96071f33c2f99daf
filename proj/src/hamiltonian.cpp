#include "tcsim/hamiltonian.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "tcsim/errors.hpp"

namespace tcsim {

XxzzHamiltonian::XxzzHamiltonian(int n_qubits, std::vector<HamiltonianTerm> terms,
                                 std::optional<double> alpha,
                                 std::optional<double> beta)
    : n_qubits_(n_qubits), terms_(std::move(terms)), alpha_(alpha), beta_(beta) {
  if (n_qubits < 2 || n_qubits > 30) {
    throw ValidationError("XxzzHamiltonian: qubit count must be in [2, 30]");
  }
  if (terms_.empty()) {
    throw ValidationError("XxzzHamiltonian: needs at least one term");
  }
  std::set<std::pair<int, int>> pairs;
  double total = 0.0;
  for (const auto& t : terms_) {
    if (t.i < 0 || t.j >= n_qubits || t.i >= t.j) {
      throw ValidationError("XxzzHamiltonian: term requires 0 <= i < j < N, got (" +
                            std::to_string(t.i) + ", " + std::to_string(t.j) + ")");
    }
    if (!(t.p > 0.0)) {
      throw ValidationError("XxzzHamiltonian: term weight must be positive");
    }
    if (t.s != 1 && t.s != -1) {
      throw ValidationError("XxzzHamiltonian: term sign must be +1 or -1");
    }
    if (!pairs.insert({t.i, t.j}).second) {
      throw ValidationError("XxzzHamiltonian: duplicate pair (" +
                            std::to_string(t.i) + ", " + std::to_string(t.j) + ")");
    }
    total += t.p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ValidationError("XxzzHamiltonian: term weights sum to " +
                          std::to_string(total) + ", expected 1");
  }
  if (alpha_ && beta_) {
    if (!(*alpha_ >= 0.0 && *alpha_ < *beta_)) {
      throw ValidationError("XxzzHamiltonian: thresholds must satisfy 0 <= alpha < beta");
    }
  }
}

XxzzHamiltonian XxzzHamiltonian::random(int n_qubits, Rng& rng, double edge_prob) {
  std::vector<HamiltonianTerm> terms;
  for (int i = 0; i < n_qubits; ++i) {
    for (int j = i + 1; j < n_qubits; ++j) {
      if (rng.next_double() < edge_prob) {
        terms.push_back({i, j, 0.2 + 0.8 * rng.next_double(),
                         rng.next_bit() ? +1 : -1});
      }
    }
  }
  if (terms.empty()) {
    terms.push_back({0, 1, 1.0, rng.next_bit() ? +1 : -1});
  }
  double total = 0.0;
  for (const auto& t : terms) {
    total += t.p;
  }
  for (auto& t : terms) {
    t.p /= total;
  }
  return XxzzHamiltonian(n_qubits, std::move(terms));
}

XxzzHamiltonian XxzzHamiltonian::from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw ConfigError("hamiltonian: expected a JSON object");
  }
  if (!j.contains("n_qubits") || !j["n_qubits"].is_number_integer()) {
    throw ConfigError("hamiltonian: missing integer field \"n_qubits\"");
  }
  if (!j.contains("terms") || !j["terms"].is_array()) {
    throw ConfigError("hamiltonian: missing array field \"terms\"");
  }
  const int n = j["n_qubits"].get<int>();
  std::vector<HamiltonianTerm> terms;
  double total = 0.0;
  for (const auto& tj : j["terms"]) {
    for (const char* key : {"i", "j", "p", "s"}) {
      if (!tj.contains(key)) {
        throw ConfigError(std::string("hamiltonian: term missing field \"") + key +
                          "\"");
      }
    }
    HamiltonianTerm t{tj["i"].get<int>(), tj["j"].get<int>(),
                      tj["p"].get<double>(), tj["s"].get<int>()};
    total += t.p;
    terms.push_back(t);
  }
  if (std::abs(total - 1.0) > 1e-6) {
    throw ConfigError("hamiltonian: term weights sum to " + std::to_string(total) +
                      "; refusing to renormalize beyond 1e-6");
  }
  if (total > 0.0) {
    for (auto& t : terms) {
      t.p /= total;
    }
  }
  std::optional<double> alpha;
  std::optional<double> beta;
  if (j.contains("alpha") && !j["alpha"].is_null()) {
    alpha = j["alpha"].get<double>();
  }
  if (j.contains("beta") && !j["beta"].is_null()) {
    beta = j["beta"].get<double>();
  }
  return XxzzHamiltonian(n, std::move(terms), alpha, beta);
}

nlohmann::json XxzzHamiltonian::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : terms_) {
    terms.push_back({{"i", t.i}, {"j", t.j}, {"p", t.p}, {"s", t.s}});
  }
  nlohmann::json j{{"n_qubits", n_qubits_}, {"terms", std::move(terms)}};
  j["alpha"] = alpha_ ? nlohmann::json(*alpha_) : nlohmann::json(nullptr);
  j["beta"] = beta_ ? nlohmann::json(*beta_) : nlohmann::json(nullptr);
  return j;
}

XxzzHamiltonian XxzzHamiltonian::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("hamiltonian: cannot open " + path.string());
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("hamiltonian: parse error in " + path.string() + ": " +
                      e.what());
  }
  return from_json(j);
}

Matrix build_hamiltonian_matrix(const XxzzHamiltonian& h) {
  const int n = h.n_qubits();
  const std::int64_t dim = h.dim();
  Matrix out = Matrix::Zero(dim, dim);
  // ZZ and identity pieces are diagonal; XX flips the two coupled bits.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
  for (const auto& t : h.terms()) {
    const std::uint64_t bi = std::uint64_t{1} << (n - 1 - t.i);
    const std::uint64_t bj = std::uint64_t{1} << (n - 1 - t.j);
    for (std::int64_t k = 0; k < dim; ++k) {
      const std::uint64_t ku = static_cast<std::uint64_t>(k);
      const double zz = ((std::popcount(ku & (bi | bj)) & 1) ? -1.0 : 1.0);
      diag(k) += (t.p / 2) * (1.0 + t.s * zz / 2.0);
      const std::int64_t flipped = static_cast<std::int64_t>(ku ^ (bi | bj));
      out(flipped, k) += (t.p / 2) * (t.s / 2.0);
    }
  }
  out += diag.cast<Complex>().asDiagonal();
  return out;
}

Eigen::VectorXd build_hz_diagonal(const XxzzHamiltonian& h) {
  const int n = h.n_qubits();
  const std::int64_t dim = h.dim();
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
  for (const auto& t : h.terms()) {
    const std::uint64_t bi = std::uint64_t{1} << (n - 1 - t.i);
    const std::uint64_t bj = std::uint64_t{1} << (n - 1 - t.j);
    for (std::int64_t k = 0; k < dim; ++k) {
      const double zz =
          ((std::popcount(static_cast<std::uint64_t>(k) & (bi | bj)) & 1) ? -1.0
                                                                          : 1.0);
      diag(k) += t.p * (1.0 + t.s * zz) / 2.0;
    }
  }
  return diag;
}

Matrix build_hz_matrix(const XxzzHamiltonian& h) {
  return build_hz_diagonal(h).cast<Complex>().asDiagonal();
}

GroundState ground_state(const XxzzHamiltonian& h, const Limits& limits) {
  if (h.n_qubits() > limits.max_state_qubits) {
    throw LimitError("ground_state: " + std::to_string(h.n_qubits()) +
                     " qubits exceeds dense limit " +
                     std::to_string(limits.max_state_qubits));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(build_hamiltonian_matrix(h));
  return GroundState{solver.eigenvalues()(0),
                     PureState(h.n_qubits(), solver.eigenvectors().col(0))};
}

double energy(const XxzzHamiltonian& h, const DensityOperator& rho) {
  if (rho.dim() != h.dim()) {
    throw DimensionError("energy: state dimension does not match Hamiltonian");
  }
  const Complex tr = (build_hamiltonian_matrix(h) * rho.matrix()).trace();
  if (std::abs(tr.imag()) > 1e-9) {
    throw ValidationError("energy: imaginary residue " +
                          std::to_string(tr.imag()) + " exceeds 1e-9");
  }
  return tr.real();
}

double energy(const XxzzHamiltonian& h, const PureState& psi) {
  if (psi.dim() != h.dim()) {
    throw DimensionError("energy: state dimension does not match Hamiltonian");
  }
  const Complex val =
      (psi.amplitudes().adjoint() * build_hamiltonian_matrix(h) * psi.amplitudes())(0);
  return val.real();
}

void check_promise_gap(const XxzzHamiltonian& h, double min_gap) {
  if (!h.alpha() || !h.beta()) {
    throw ValidationError("check_promise_gap: instance carries no thresholds");
  }
  const double gap = *h.beta() - *h.alpha();
  if (gap < min_gap) {
    throw ValidationError("check_promise_gap: beta - alpha = " +
                          std::to_string(gap) + " below required " +
                          std::to_string(min_gap));
  }
}

DiagonalMinimum min_diagonal_energy(const XxzzHamiltonian& h) {
  const Eigen::VectorXd diag = build_hz_diagonal(h);
  std::int64_t best = 0;
  for (std::int64_t k = 1; k < diag.size(); ++k) {
    if (diag(k) < diag(best)) {
      best = k;
    }
  }
  return DiagonalMinimum{BitString(static_cast<std::uint64_t>(best), h.n_qubits()),
                         diag(best)};
}

}  // namespace tcsim
