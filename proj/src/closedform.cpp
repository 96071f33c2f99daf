#include "tcsim/closedform.hpp"

#include <cmath>

#include "tcsim/errors.hpp"
#include "tcsim/qmath.hpp"

namespace tcsim {

double cf_honest(const XxzzHamiltonian& h, const DensityOperator& rho) {
  const double value = 1.0 - energy(h, rho);
  if (value < -kInvariantTol || value > 1.0 + kInvariantTol) {
    throw ValidationError("cf_honest: value escapes [0, 1]");
  }
  return std::clamp(value, 0.0, 1.0);
}

DensityOperator cf_sigma(const Povm& povm) {
  const int n = povm.n_qubits();
  const std::int64_t dim = povm.dim();
  const double w = 1.0 / static_cast<double>(dim);
  Matrix sigma = Matrix::Zero(dim, dim);
  for (const auto& e : povm.elements()) {
    if (e.outcome.x.size() != n || e.outcome.z.size() != n) {
      throw DimensionError("cf_sigma: outcome label width must match qubit count");
    }
    const Matrix frame = pauli_frame_matrix(e.outcome.x, e.outcome.z);
    sigma += w * (frame * e.op * frame.adjoint());
  }
  return DensityOperator(n, std::move(sigma));
}

double cf_povm_soundness(const XxzzHamiltonian& h, const Povm& povm) {
  const DensityOperator sigma = cf_sigma(povm);
  sigma.validate();
  return 1.0 - energy(h, sigma);
}

double cf_attack(const XxzzHamiltonian& h, const AttackDistribution& d,
                 double p_succ) {
  if (d.n_bits() != h.n_qubits()) {
    throw DimensionError("cf_attack: distribution width must match qubit count");
  }
  const Eigen::VectorXd hz = build_hz_diagonal(h);
  double value = 0.0;
  for (std::int64_t k = 0; k < hz.size(); ++k) {
    value += d.probabilities()[static_cast<std::size_t>(k)] * (1.0 - hz(k));
  }
  return p_succ * value;
}

double cf_ma_honest(const XxzzHamiltonian& h, const PureState& e0, double p_succ) {
  return p_succ * (1.0 - energy(h, e0));
}

double cf_ma_malicious(const XxzzHamiltonian& h, const AttackDistribution& d,
                       double p_succ) {
  return cf_attack(h, d, p_succ);
}

DensityOperator cf_offline_eta(const DensityOperator& rho_b1b2, const Povm& povm_on_b1,
                            int m_qubits) {
  const int total = rho_b1b2.n_qubits();
  const int nq = total - m_qubits;
  if (m_qubits < 1 || nq < 1) {
    throw DimensionError("cf_offline_eta: register split out of range");
  }
  if (povm_on_b1.n_qubits() != m_qubits) {
    throw DimensionError("cf_offline_eta: POVM must act on the B1 register");
  }
  const std::int64_t dm = std::int64_t{1} << m_qubits;
  const std::int64_t dn = std::int64_t{1} << nq;
  const Matrix& rho = rho_b1b2.matrix();
  Matrix eta = Matrix::Zero(dn, dn);
  for (const auto& e : povm_on_b1.elements()) {
    if (e.outcome.x.size() != nq || e.outcome.z.size() != nq) {
      throw DimensionError("cf_offline_eta: outcome label width must be N");
    }
    const Matrix root = matrix_sqrt_psd(e.op);
    // K(a,b; r,c) = sum_{a',b'} root(a,a') rho(a' dn + r, b' dn + c) conj(root(b,b'))
    // traced over a = b, then conjugated by the correction frame.
    Matrix traced = Matrix::Zero(dn, dn);
    for (std::int64_t r = 0; r < dn; ++r) {
      for (std::int64_t c = 0; c < dn; ++c) {
        Complex sum = 0.0;
        for (std::int64_t a = 0; a < dm; ++a) {
          for (std::int64_t ap = 0; ap < dm; ++ap) {
            if (root(a, ap) == Complex{0.0, 0.0}) {
              continue;
            }
            for (std::int64_t bp = 0; bp < dm; ++bp) {
              sum += root(a, ap) * rho(ap * dn + r, bp * dn + c) *
                     std::conj(root(a, bp));
            }
          }
        }
        traced(r, c) = sum;
      }
    }
    const Matrix frame = pauli_frame_matrix(e.outcome.x, e.outcome.z);
    eta += frame * traced * frame.adjoint();
  }
  return DensityOperator(nq, std::move(eta));
}

double cf_offline(const XxzzHamiltonian& h, const DensityOperator& rho_b1b2,
               const Povm& povm_on_b1) {
  const DensityOperator eta =
      cf_offline_eta(rho_b1b2, povm_on_b1, rho_b1b2.n_qubits() - h.n_qubits());
  eta.validate();
  return 1.0 - energy(h, eta);
}

BellIdentity bell_identity_check(const DensityOperator& rho, int alpha, int beta,
                                 int h, int m) {
  if (rho.n_qubits() != 1) {
    throw DimensionError("bell_identity_check: rho must be a single-qubit state");
  }
  const Vector phi = bell_state(alpha, beta).amplitudes();
  const DensityOperator tau = bb84_density(h, BitString(static_cast<std::uint64_t>(m), 1));
  const std::vector<DensityOperator> parts{rho, tau};
  const Matrix joint = tensor_product(std::span<const DensityOperator>(parts)).matrix();
  const double lhs = (phi.adjoint() * joint * phi)(0).real();

  Vector ket = Vector::Zero(2);
  ket(m) = 1.0;
  if (h) {
    ket = hadamard() * ket;
  }
  if (beta) {
    ket = pauli_z() * ket;
  }
  if (alpha) {
    ket = pauli_x() * ket;
  }
  const double rhs = 0.5 * (ket.adjoint() * rho.matrix() * ket)(0).real();
  return BellIdentity{lhs, rhs};
}

}  // namespace tcsim
