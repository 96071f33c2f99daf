#include "tcsim/ccrsp.hpp"

#include <cmath>
#include <string>

#include "tcsim/errors.hpp"

namespace tcsim {

double ccrsp_p_succ(const CcrspModel& model) {
  return std::visit([](const auto& m) { return m.p_succ; }, model);
}

void validate_ccrsp_model(const CcrspModel& model, double tol) {
  const double p = ccrsp_p_succ(model);
  if (!(p > 0.0) || p > 1.0) {
    throw ValidationError("ccrsp model: p_succ must lie in (0, 1]");
  }
  if (const auto* noisy = std::get_if<NoisyIdealCcrsp>(&model)) {
    if (noisy->noise < 0.0 || noisy->noise > 1.0) {
      throw ValidationError("ccrsp model: noise must lie in [0, 1]");
    }
  }
  if (const auto* me = std::get_if<MeasuredEntangledCcrsp>(&model)) {
    if (me->m_qubits < 1 || me->m_qubits >= me->rho_b1b2.n_qubits()) {
      throw ValidationError("ccrsp model: M must satisfy 1 <= M < M+N");
    }
    me->rho_b1b2.validate(tol);
  }
}

DensityOperator depolarize_each_qubit(const DensityOperator& rho, double lambda) {
  if (lambda < 0.0 || lambda > 1.0) {
    throw ValidationError("depolarize_each_qubit: strength must lie in [0, 1]");
  }
  const int n = rho.n_qubits();
  Matrix out = rho.matrix();
  for (int q = 0; q < n; ++q) {
    const std::vector<int> target{q};
    Matrix acc = (1.0 - lambda) * out + (lambda / 4.0) * out;
    for (const Matrix* pauli : {&pauli_x(), &pauli_y(), &pauli_z()}) {
      const Matrix p = embed(*pauli, target, n);
      acc += (lambda / 4.0) * (p * out * p.adjoint());
    }
    out = std::move(acc);
  }
  return DensityOperator(n, std::move(out));
}

double noisy_ideal_epsilon(const NoisyIdealCcrsp& model, int n_qubits) {
  const std::int64_t dim = std::int64_t{1} << n_qubits;
  Matrix noisy = Matrix::Zero(dim, dim);
  Matrix ideal = Matrix::Zero(dim, dim);
  const double w = 1.0 / static_cast<double>(2 * dim);
  for (int h = 0; h < 2; ++h) {
    for (std::int64_t m = 0; m < dim; ++m) {
      const DensityOperator rho =
          bb84_density(h, BitString(static_cast<std::uint64_t>(m), n_qubits));
      ideal += w * rho.matrix();
      noisy += w * depolarize_each_qubit(rho, model.noise).matrix();
    }
  }
  return trace_distance(DensityOperator(n_qubits, std::move(noisy)),
                        DensityOperator(n_qubits, std::move(ideal)));
}

namespace {

// P(h,m) and the sandwiched operator for one (h, m) sector. The projector is
// rank one, so Tr_B2 of the sandwich is an outer-product contraction of the
// B2 index against phi_hm.
std::pair<double, Matrix> sector_sandwich(const MeasuredEntangledCcrsp& model,
                                          int h, const BitString& m) {
  const int big_n = model.rho_b1b2.n_qubits();
  const int mq = model.m_qubits;
  const int nq = big_n - mq;
  const std::int64_t dm = std::int64_t{1} << mq;
  const std::int64_t dn = std::int64_t{1} << nq;
  const Vector phi = bb84_state(h, m).amplitudes();
  const Matrix& rho = model.rho_b1b2.matrix();
  // contracted(a, b) = <a, phi| rho |b, phi> on the B1 register
  Matrix contracted = Matrix::Zero(dm, dm);
  for (std::int64_t a = 0; a < dm; ++a) {
    for (std::int64_t b = 0; b < dm; ++b) {
      Complex sum = 0.0;
      for (std::int64_t r = 0; r < dn; ++r) {
        for (std::int64_t c = 0; c < dn; ++c) {
          sum += std::conj(phi(r)) * rho(a * dn + r, b * dn + c) * phi(c);
        }
      }
      contracted(a, b) = sum;
    }
  }
  const double prob = 0.5 * contracted.trace().real();
  return {prob, std::move(contracted)};
}

}  // namespace

std::vector<CcrspBranch> enumerate_measured_entangled(
    const MeasuredEntangledCcrsp& model) {
  const int nq = model.n_qubits();
  const std::int64_t dn = std::int64_t{1} << nq;
  std::vector<CcrspBranch> branches;
  branches.reserve(static_cast<std::size_t>(2 * dn));
  for (int h = 0; h < 2; ++h) {
    for (std::int64_t m = 0; m < dn; ++m) {
      const BitString mbits(static_cast<std::uint64_t>(m), nq);
      auto [prob, contracted] = sector_sandwich(model, h, mbits);
      if (prob > 0.0) {
        branches.push_back(CcrspBranch{
            CenterMessage{h, mbits}, prob,
            DensityOperator(model.m_qubits, contracted / (2.0 * prob))});
      } else {
        branches.push_back(CcrspBranch{
            CenterMessage{h, mbits}, 0.0,
            DensityOperator::maximally_mixed(model.m_qubits)});
      }
    }
  }
  return branches;
}

CcrspSample measured_entangled_ccrsp(const MeasuredEntangledCcrsp& model, Rng& rng) {
  const int nq = model.n_qubits();
  if (rng.next_double() >= model.p_succ) {
    return CcrspSample{false, CenterMessage{0, BitString::zeros(nq)},
                       DensityOperator::maximally_mixed(model.m_qubits)};
  }
  const std::vector<CcrspBranch> branches = enumerate_measured_entangled(model);
  std::vector<double> probs;
  probs.reserve(branches.size());
  double total = 0.0;
  for (const auto& b : branches) {
    probs.push_back(b.probability);
    total += b.probability;
  }
  if (std::abs(total - 1.0) > kInvariantTol) {
    throw InternalError("measured_entangled_ccrsp: P(h,m) sums to " +
                        std::to_string(total));
  }
  const std::size_t idx = rng.sample_discrete(probs);
  if (!(probs[idx] > 0.0)) {
    throw InternalError("measured_entangled_ccrsp: zero-probability branch drawn");
  }
  return CcrspSample{true, branches[idx].cm, branches[idx].state};
}

PureState bell_pairs_state(int n_pairs) {
  if (n_pairs < 1 || n_pairs > 15) {
    throw DimensionError("bell_pairs_state: pair count out of range");
  }
  const std::int64_t dn = std::int64_t{1} << n_pairs;
  Vector v = Vector::Zero(dn * dn);
  const double amp = std::pow(2.0, -0.5 * n_pairs);
  for (std::int64_t k = 0; k < dn; ++k) {
    v(k * dn + k) = amp;
  }
  return PureState(2 * n_pairs, std::move(v));
}

DensityOperator bell_pairs_density(int n_pairs) {
  return bell_pairs_state(n_pairs).to_density();
}

}  // namespace tcsim
