#include "tcsim/state.hpp"

#include <cmath>
#include <string>

#include "tcsim/errors.hpp"

namespace tcsim {

namespace {

void check_dim(int n_qubits, std::int64_t got, const char* what) {
  if (n_qubits < 0 || n_qubits > 30) {
    throw DimensionError(std::string(what) + ": qubit count out of range");
  }
  const std::int64_t want = std::int64_t{1} << n_qubits;
  if (got != want) {
    throw DimensionError(std::string(what) + ": expected dimension " +
                         std::to_string(want) + ", got " + std::to_string(got));
  }
}

}  // namespace

PureState::PureState(int n_qubits, Vector amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  check_dim(n_qubits, amplitudes_.size(), "PureState");
}

PureState PureState::basis(const BitString& k) {
  Vector v = Vector::Zero(std::int64_t{1} << k.size());
  v(static_cast<Eigen::Index>(k.index())) = 1.0;
  return PureState(k.size(), std::move(v));
}

DensityOperator PureState::to_density() const {
  return DensityOperator(n_qubits_, amplitudes_ * amplitudes_.adjoint());
}

void PureState::validate(double tol) const {
  const double sq = squared_norm();
  if (std::abs(sq - 1.0) > tol) {
    throw ValidationError("PureState: squared norm " + std::to_string(sq) +
                          " deviates from 1 beyond tolerance");
  }
}

DensityOperator::DensityOperator(int n_qubits, Matrix matrix)
    : n_qubits_(n_qubits), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw DimensionError("DensityOperator: matrix must be square");
  }
  check_dim(n_qubits, matrix_.rows(), "DensityOperator");
}

DensityOperator DensityOperator::maximally_mixed(int n_qubits) {
  const std::int64_t dim = std::int64_t{1} << n_qubits;
  return DensityOperator(
      n_qubits, Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

void DensityOperator::validate(double tol) const {
  const double herm = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) {
    throw ValidationError("DensityOperator: not Hermitian (max deviation " +
                          std::to_string(herm) + ")");
  }
  const Complex tr = matrix_.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > tol) {
    throw ValidationError("DensityOperator: trace deviates from 1 by " +
                          std::to_string(std::abs(tr - Complex{1.0, 0.0})));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -tol) {
    throw ValidationError("DensityOperator: minimum eigenvalue " +
                          std::to_string(min_eig) + " below -tolerance");
  }
}

}  // namespace tcsim
