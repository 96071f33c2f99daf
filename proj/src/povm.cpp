#include "tcsim/povm.hpp"

#include <string>

#include "tcsim/errors.hpp"
#include "tcsim/qmath.hpp"

namespace tcsim {

Povm::Povm(int n_qubits, std::vector<Element> elements)
    : n_qubits_(n_qubits), elements_(std::move(elements)) {
  if (n_qubits < 0 || n_qubits > 30) {
    throw DimensionError("Povm: qubit count out of range");
  }
  if (elements_.empty()) {
    throw DimensionError("Povm: needs at least one element");
  }
  const std::int64_t d = dim();
  for (const auto& e : elements_) {
    if (e.op.rows() != d || e.op.cols() != d) {
      throw DimensionError("Povm: element dimension mismatch");
    }
  }
}

Povm Povm::identity(int n_qubits, int label_size) {
  const std::int64_t d = std::int64_t{1} << n_qubits;
  std::vector<Element> elems;
  elems.push_back({{BitString::zeros(label_size), BitString::zeros(label_size)},
                   Matrix::Identity(d, d)});
  return Povm(n_qubits, std::move(elems));
}

Povm Povm::uniform(int n_qubits) {
  const std::int64_t d = std::int64_t{1} << n_qubits;
  const std::int64_t n_labels = d * d;
  std::vector<Element> elems;
  elems.reserve(static_cast<std::size_t>(n_labels));
  const Matrix op = Matrix::Identity(d, d) / static_cast<double>(n_labels);
  for (std::int64_t x = 0; x < d; ++x) {
    for (std::int64_t z = 0; z < d; ++z) {
      elems.push_back({{BitString(static_cast<std::uint64_t>(x), n_qubits),
                        BitString(static_cast<std::uint64_t>(z), n_qubits)},
                       op});
    }
  }
  return Povm(n_qubits, std::move(elems));
}

Povm Povm::computational_basis(int n_qubits) {
  const std::int64_t d = std::int64_t{1} << n_qubits;
  std::vector<Element> elems;
  elems.reserve(static_cast<std::size_t>(d));
  for (std::int64_t k = 0; k < d; ++k) {
    Matrix proj = Matrix::Zero(d, d);
    proj(k, k) = 1.0;
    elems.push_back({{BitString(static_cast<std::uint64_t>(k), n_qubits),
                      BitString::zeros(n_qubits)},
                     std::move(proj)});
  }
  return Povm(n_qubits, std::move(elems));
}

Povm Povm::bell_basis() {
  std::vector<Element> elems;
  for (int alpha = 0; alpha < 2; ++alpha) {
    for (int beta = 0; beta < 2; ++beta) {
      elems.push_back({{BitString(static_cast<std::uint64_t>(alpha), 1),
                        BitString(static_cast<std::uint64_t>(beta), 1)},
                       bell_projector(alpha, beta)});
    }
  }
  return Povm(2, std::move(elems));
}

void Povm::validate(double tol) const {
  const std::int64_t d = dim();
  Matrix sum = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const Matrix& op = elements_[i].op;
    const double herm = (op - op.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol) {
      throw ValidationError("Povm: element " + std::to_string(i) +
                            " is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(op, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -tol) {
      throw ValidationError("Povm: element " + std::to_string(i) +
                            " is not positive semidefinite");
    }
    sum += op;
  }
  const double dev = (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (dev > tol) {
    throw ValidationError("Povm: elements sum deviates from identity by " +
                          std::to_string(dev));
  }
}

}  // namespace tcsim
