#include "tcsim/extractor.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "tcsim/errors.hpp"
#include "tcsim/qmath.hpp"

namespace tcsim {

namespace {

void check_labels(const Povm& povm, int width, const char* what) {
  for (const auto& e : povm.elements()) {
    if (e.outcome.x.size() != width || e.outcome.z.size() != width) {
      throw DimensionError(std::string(what) +
                           ": outcome labels must carry N-bit (x, z)");
    }
  }
}

}  // namespace

DensityOperator extract_tc(const Povm& povm) {
  const int n = povm.n_qubits();
  check_labels(povm, n, "extract_tc");
  const std::int64_t dim = povm.dim();
  const Matrix mixed = Matrix::Identity(dim, dim) / static_cast<double>(dim);
  Matrix eta = Matrix::Zero(dim, dim);
  for (const auto& e : povm.elements()) {
    // Measurement update, then the controlled correction conditioned on the
    // (x, z) outcome register; summing realizes the trace over that register.
    const Matrix root = matrix_sqrt_psd(e.op);
    const Matrix post = root * mixed * root;
    const Matrix zx = pauli_frame_matrix(e.outcome.x, e.outcome.z).adjoint();
    eta += zx * post * zx.adjoint();
  }
  return DensityOperator(n, std::move(eta));
}

DensityOperator extract_tc_closed_form(const Povm& povm) {
  const int n = povm.n_qubits();
  check_labels(povm, n, "extract_tc_closed_form");
  const std::int64_t dim = povm.dim();
  const double w = 1.0 / static_cast<double>(dim);
  Matrix eta = Matrix::Zero(dim, dim);
  for (const auto& e : povm.elements()) {
    // Z^z X^x = (X^x Z^z)^dag up to a global sign that conjugation cancels.
    const Matrix zx = pauli_frame_matrix(e.outcome.x, e.outcome.z).adjoint();
    eta += w * (zx * e.op * zx.adjoint());
  }
  return DensityOperator(n, std::move(eta));
}

DensityOperator extract_ccrsp(const DensityOperator& rho_b1b2,
                              const Povm& povm_on_b1, int m_qubits) {
  const int total = rho_b1b2.n_qubits();
  const int n = total - m_qubits;
  if (m_qubits < 1 || n < 1) {
    throw DimensionError("extract_ccrsp: register split out of range");
  }
  if (povm_on_b1.n_qubits() != m_qubits) {
    throw DimensionError("extract_ccrsp: POVM must act on the B1 register");
  }
  check_labels(povm_on_b1, n, "extract_ccrsp");

  std::vector<int> b1(static_cast<std::size_t>(m_qubits));
  for (int q = 0; q < m_qubits; ++q) {
    b1[static_cast<std::size_t>(q)] = q;
  }
  std::vector<int> b2(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) {
    b2[static_cast<std::size_t>(q)] = m_qubits + q;
  }
  std::vector<int> keep_b2 = b2;

  const std::int64_t dn = std::int64_t{1} << n;
  Matrix eta = Matrix::Zero(dn, dn);
  for (const auto& e : povm_on_b1.elements()) {
    // Stage 1: measurement update on B1.
    const Matrix root_full = embed(matrix_sqrt_psd(e.op), b1, total);
    Matrix staged = root_full * rho_b1b2.matrix() * root_full.adjoint();
    // Stage 2: controlled correction on B2.
    const Matrix frame =
        embed(pauli_frame_matrix(e.outcome.x, e.outcome.z), b2, total);
    staged = frame * staged * frame.adjoint();
    // Stage 3: trace out B1 (the outcome register is traced by the sum).
    eta += partial_trace(DensityOperator(total, std::move(staged)), keep_b2)
               .matrix();
  }
  return DensityOperator(n, std::move(eta));
}

DensityOperator extract_ccrsp_closed_form(const DensityOperator& rho_b1b2,
                                          const Povm& povm_on_b1, int m_qubits) {
  const int total = rho_b1b2.n_qubits();
  const int n = total - m_qubits;
  if (m_qubits < 1 || n < 1) {
    throw DimensionError("extract_ccrsp_closed_form: register split out of range");
  }
  if (povm_on_b1.n_qubits() != m_qubits) {
    throw DimensionError("extract_ccrsp_closed_form: POVM must act on B1");
  }
  check_labels(povm_on_b1, n, "extract_ccrsp_closed_form");
  const std::int64_t dm = std::int64_t{1} << m_qubits;
  const std::int64_t dn = std::int64_t{1} << n;
  const Matrix& rho = rho_b1b2.matrix();
  Matrix eta = Matrix::Zero(dn, dn);
  for (const auto& e : povm_on_b1.elements()) {
    const Matrix root = matrix_sqrt_psd(e.op);
    const Matrix frame = pauli_frame_matrix(e.outcome.x, e.outcome.z);
    // A = sqrt(Pi) (x) X^x Z^z applied as one Kronecker factor pair, traced
    // over B1 on the fly.
    Matrix term = Matrix::Zero(dn, dn);
    for (std::int64_t a = 0; a < dm; ++a) {
      for (std::int64_t ap = 0; ap < dm; ++ap) {
        if (root(a, ap) == Complex{0.0, 0.0}) {
          continue;
        }
        for (std::int64_t bp = 0; bp < dm; ++bp) {
          const Complex coeff = root(a, ap) * std::conj(root(a, bp));
          if (coeff == Complex{0.0, 0.0}) {
            continue;
          }
          term += coeff * rho.block(ap * dn, bp * dn, dn, dn);
        }
      }
    }
    eta += frame * term * frame.adjoint();
  }
  return DensityOperator(n, std::move(eta));
}

ExtractionResult verify_extraction(const XxzzHamiltonian& h,
                                   const DensityOperator& eta, double p_acc) {
  eta.validate();
  const double e = energy(h, eta);
  const double expected = 1.0 - p_acc;
  if (std::abs(e - expected) > 1e-9) {
    throw ExtractionError("extraction identity violated: Tr(eta H) = " +
                              std::to_string(e) + " but 1 - p_acc = " +
                              std::to_string(expected),
                          e, expected);
  }
  return ExtractionResult{eta, e, p_acc, expected};
}

}  // namespace tcsim
