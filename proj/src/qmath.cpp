#include "tcsim/qmath.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "tcsim/errors.hpp"

namespace tcsim {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_same_dim(std::int64_t a, std::int64_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

const Matrix& pauli_x() {
  static const Matrix m = [] {
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    return x;
  }();
  return m;
}

const Matrix& pauli_y() {
  static const Matrix m = [] {
    Matrix y(2, 2);
    y << 0, -kI, kI, 0;
    return y;
  }();
  return m;
}

const Matrix& pauli_z() {
  static const Matrix m = [] {
    Matrix z(2, 2);
    z << 1, 0, 0, -1;
    return z;
  }();
  return m;
}

const Matrix& hadamard() {
  static const Matrix m = [] {
    Matrix h(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    return h;
  }();
  return m;
}

PureState tensor_product(std::span<const PureState> parts) {
  if (parts.empty()) {
    throw DimensionError("tensor_product: empty part list");
  }
  Vector acc = parts[0].amplitudes();
  int n = parts[0].n_qubits();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const Vector& b = parts[i].amplitudes();
    Vector next(acc.size() * b.size());
    for (Eigen::Index r = 0; r < acc.size(); ++r) {
      next.segment(r * b.size(), b.size()) = acc(r) * b;
    }
    acc = std::move(next);
    n += parts[i].n_qubits();
  }
  return PureState(n, std::move(acc));
}

DensityOperator tensor_product(std::span<const DensityOperator> parts) {
  if (parts.empty()) {
    throw DimensionError("tensor_product: empty part list");
  }
  Matrix acc = parts[0].matrix();
  int n = parts[0].n_qubits();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const Matrix& b = parts[i].matrix();
    Matrix next(acc.rows() * b.rows(), acc.cols() * b.cols());
    for (Eigen::Index r = 0; r < acc.rows(); ++r) {
      for (Eigen::Index c = 0; c < acc.cols(); ++c) {
        next.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = acc(r, c) * b;
      }
    }
    acc = std::move(next);
    n += parts[i].n_qubits();
  }
  return DensityOperator(n, std::move(acc));
}

StateVariant tensor_product(std::span<const StateVariant> parts) {
  if (parts.empty()) {
    throw DimensionError("tensor_product: empty part list");
  }
  const bool pure = std::holds_alternative<PureState>(parts[0]);
  for (const auto& p : parts) {
    if (std::holds_alternative<PureState>(p) != pure) {
      throw KindMismatchError(
          "tensor_product: parts mix PureState and DensityOperator");
    }
  }
  if (pure) {
    std::vector<PureState> v;
    v.reserve(parts.size());
    for (const auto& p : parts) {
      v.push_back(std::get<PureState>(p));
    }
    return tensor_product(std::span<const PureState>(v));
  }
  std::vector<DensityOperator> v;
  v.reserve(parts.size());
  for (const auto& p : parts) {
    v.push_back(std::get<DensityOperator>(p));
  }
  return tensor_product(std::span<const DensityOperator>(v));
}

PureState bell_state(int alpha, int beta) {
  // (Z^beta (x) X^alpha)(|00>+|11>)/sqrt(2): amplitude at |q, q^alpha> is
  // (-1)^(beta q)/sqrt(2).
  Vector v = Vector::Zero(4);
  const double s = 1.0 / std::sqrt(2.0);
  for (int q = 0; q < 2; ++q) {
    const int r = q ^ (alpha & 1);
    v(2 * q + r) = (beta && q) ? -s : s;
  }
  return PureState(2, std::move(v));
}

Matrix bell_projector(int alpha, int beta) {
  const Vector v = bell_state(alpha, beta).amplitudes();
  return v * v.adjoint();
}

PureState bb84_state(int h, const BitString& m) {
  const int n = m.size();
  const std::int64_t dim = std::int64_t{1} << n;
  Vector v = Vector::Zero(dim);
  if (h == 0) {
    v(static_cast<Eigen::Index>(m.index())) = 1.0;
  } else {
    const double s = std::pow(2.0, -0.5 * n);
    for (std::int64_t k = 0; k < dim; ++k) {
      const int par = std::popcount(static_cast<std::uint64_t>(k) & m.index()) & 1;
      v(k) = par ? -s : s;
    }
  }
  return PureState(n, std::move(v));
}

DensityOperator bb84_density(int h, const BitString& m) {
  return bb84_state(h, m).to_density();
}

Matrix pauli_frame_matrix(const BitString& x, const BitString& z) {
  if (x.size() != z.size()) {
    throw DimensionError("pauli_frame_matrix: x/z length mismatch");
  }
  const int n = x.size();
  const std::int64_t dim = std::int64_t{1} << n;
  // (X^x Z^z)|k> = (-1)^(z.k) |k ^ x>, bitwise over indices.
  Matrix m = Matrix::Zero(dim, dim);
  for (std::int64_t k = 0; k < dim; ++k) {
    const int par =
        std::popcount(z.index() & static_cast<std::uint64_t>(k)) & 1;
    m(static_cast<Eigen::Index>(k ^ static_cast<std::int64_t>(x.index())), k) =
        par ? -1.0 : 1.0;
  }
  return m;
}

DensityOperator apply_pauli_frame(const DensityOperator& state,
                                  const BitString& x, const BitString& z) {
  if (x.size() != state.n_qubits() || z.size() != state.n_qubits()) {
    throw DimensionError("apply_pauli_frame: frame length must equal qubit count");
  }
  const std::int64_t dim = state.dim();
  const std::uint64_t xs = x.index();
  const std::uint64_t zs = z.index();
  Matrix out(dim, dim);
  for (std::int64_t r = 0; r < dim; ++r) {
    const int pr = std::popcount(zs & static_cast<std::uint64_t>(r)) & 1;
    for (std::int64_t c = 0; c < dim; ++c) {
      const int pc = std::popcount(zs & static_cast<std::uint64_t>(c)) & 1;
      const double sign = (pr ^ pc) ? -1.0 : 1.0;
      out(static_cast<Eigen::Index>(r ^ static_cast<std::int64_t>(xs)),
          static_cast<Eigen::Index>(c ^ static_cast<std::int64_t>(xs))) =
          sign * state.matrix()(r, c);
    }
  }
  return DensityOperator(state.n_qubits(), std::move(out));
}

DensityOperator partial_trace(const DensityOperator& op, std::span<const int> keep) {
  const int n = op.n_qubits();
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (kept[i] < 0 || kept[i] >= n) {
      throw DimensionError("partial_trace: qubit index out of range");
    }
    if (i > 0 && kept[i] == kept[i - 1]) {
      throw DimensionError("partial_trace: duplicate qubit index");
    }
  }
  std::vector<int> traced;
  for (int q = 0; q < n; ++q) {
    if (!std::binary_search(kept.begin(), kept.end(), q)) {
      traced.push_back(q);
    }
  }
  const int nk = static_cast<int>(kept.size());
  const int nt = static_cast<int>(traced.size());
  const std::int64_t dk = std::int64_t{1} << nk;
  const std::int64_t dt = std::int64_t{1} << nt;

  // Precompute the scatter of compact kept/traced indices into full indices.
  auto scatter = [n](const std::vector<int>& qubits, std::int64_t compact) {
    std::int64_t full = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j) {
      const std::int64_t b =
          (compact >> (qubits.size() - 1 - j)) & 1;
      full |= b << (n - 1 - qubits[j]);
    }
    return full;
  };
  std::vector<std::int64_t> keep_idx(static_cast<std::size_t>(dk));
  for (std::int64_t i = 0; i < dk; ++i) {
    keep_idx[static_cast<std::size_t>(i)] = scatter(kept, i);
  }
  std::vector<std::int64_t> trace_idx(static_cast<std::size_t>(dt));
  for (std::int64_t i = 0; i < dt; ++i) {
    trace_idx[static_cast<std::size_t>(i)] = scatter(traced, i);
  }

  Matrix out = Matrix::Zero(dk, dk);
  const Matrix& m = op.matrix();
  for (std::int64_t r = 0; r < dk; ++r) {
    for (std::int64_t c = 0; c < dk; ++c) {
      Complex sum = 0.0;
      for (std::int64_t t = 0; t < dt; ++t) {
        sum += m(keep_idx[static_cast<std::size_t>(r)] +
                     trace_idx[static_cast<std::size_t>(t)],
                 keep_idx[static_cast<std::size_t>(c)] +
                     trace_idx[static_cast<std::size_t>(t)]);
      }
      out(r, c) = sum;
    }
  }
  return DensityOperator(nk, std::move(out));
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
  check_same_dim(a.dim(), b.dim(), "trace_distance");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix() - b.matrix(),
                                               Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

Matrix matrix_sqrt_psd(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  Eigen::VectorXd vals = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * vals.asDiagonal() *
         solver.eigenvectors().adjoint();
}

Matrix embed(const Matrix& op, std::span<const int> targets, int n_total) {
  const int k = static_cast<int>(targets.size());
  if (op.rows() != (std::int64_t{1} << k) || op.rows() != op.cols()) {
    throw DimensionError("embed: operator dimension does not match target count");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n_total), false);
  for (int q : targets) {
    if (q < 0 || q >= n_total) {
      throw DimensionError("embed: target qubit out of range");
    }
    if (seen[static_cast<std::size_t>(q)]) {
      throw DimensionError("embed: duplicate target qubit");
    }
    seen[static_cast<std::size_t>(q)] = true;
  }
  const std::int64_t dim = std::int64_t{1} << n_total;
  const std::int64_t dk = std::int64_t{1} << k;
  std::vector<std::int64_t> target_bit(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    target_bit[static_cast<std::size_t>(j)] = std::int64_t{1}
                                              << (n_total - 1 - targets[j]);
  }
  auto place = [&](std::int64_t compact) {
    std::int64_t full = 0;
    for (int j = 0; j < k; ++j) {
      if ((compact >> (k - 1 - j)) & 1) {
        full |= target_bit[static_cast<std::size_t>(j)];
      }
    }
    return full;
  };
  std::int64_t rest_mask = dim - 1;
  for (int j = 0; j < k; ++j) {
    rest_mask &= ~target_bit[static_cast<std::size_t>(j)];
  }
  Matrix out = Matrix::Zero(dim, dim);
  // Iterate the non-target bit patterns via the masked-increment trick.
  std::int64_t rest = 0;
  while (true) {
    for (std::int64_t a = 0; a < dk; ++a) {
      const std::int64_t ra = rest | place(a);
      for (std::int64_t b = 0; b < dk; ++b) {
        out(ra, rest | place(b)) = op(a, b);
      }
    }
    if (rest == rest_mask) {
      break;
    }
    rest = (rest - rest_mask) & rest_mask;
  }
  return out;
}

std::vector<double> povm_probabilities(const DensityOperator& state,
                                       const Povm& povm) {
  check_same_dim(state.dim(), povm.dim(), "povm_probabilities");
  std::vector<double> probs;
  probs.reserve(povm.size());
  // Tr(Pi rho) without forming the product matrix.
  const Matrix rho_t = state.matrix().transpose();
  for (const auto& e : povm.elements()) {
    const double p = e.op.cwiseProduct(rho_t).sum().real();
    probs.push_back(std::max(p, 0.0));
  }
  return probs;
}

std::pair<PovmOutcome, DensityOperator> sample_povm(const DensityOperator& state,
                                                    const Povm& povm, Rng& rng) {
  const std::vector<double> probs = povm_probabilities(state, povm);
  const std::size_t idx = rng.sample_discrete(probs);
  const double p = probs[idx];
  if (!(p > 0.0)) {
    throw InternalError("sample_povm: selected outcome has non-positive probability");
  }
  const Matrix root = matrix_sqrt_psd(povm.at(idx).op);
  Matrix post = root * state.matrix() * root / p;
  return {povm.at(idx).outcome, DensityOperator(state.n_qubits(), std::move(post))};
}

PovmOutcome sample_povm_outcome(const DensityOperator& state, const Povm& povm,
                                Rng& rng) {
  const std::vector<double> probs = povm_probabilities(state, povm);
  const std::size_t idx = rng.sample_discrete(probs);
  if (!(probs[idx] > 0.0)) {
    throw InternalError("sample_povm_outcome: selected outcome has non-positive probability");
  }
  return povm.at(idx).outcome;
}

std::pair<BitString, PureState> measure_computational(const PureState& state,
                                                      std::span<const int> qubits,
                                                      Rng& rng) {
  const int n = state.n_qubits();
  const int k = static_cast<int>(qubits.size());
  for (int q : qubits) {
    if (q < 0 || q >= n) {
      throw DimensionError("measure_computational: qubit index out of range");
    }
  }
  const std::int64_t dim = state.dim();
  const std::int64_t dk = std::int64_t{1} << k;
  auto outcome_of = [&](std::int64_t full) {
    std::int64_t o = 0;
    for (int j = 0; j < k; ++j) {
      o |= ((full >> (n - 1 - qubits[static_cast<std::size_t>(j)])) & 1)
           << (k - 1 - j);
    }
    return o;
  };
  std::vector<double> probs(static_cast<std::size_t>(dk), 0.0);
  for (std::int64_t i = 0; i < dim; ++i) {
    probs[static_cast<std::size_t>(outcome_of(i))] +=
        std::norm(state.amplitudes()(i));
  }
  const std::size_t chosen = rng.sample_discrete(probs);
  const double p = probs[chosen];
  Vector post = Vector::Zero(dim);
  const double scale = 1.0 / std::sqrt(p);
  for (std::int64_t i = 0; i < dim; ++i) {
    if (outcome_of(i) == static_cast<std::int64_t>(chosen)) {
      post(i) = state.amplitudes()(i) * scale;
    }
  }
  return {BitString(chosen, k), PureState(n, std::move(post))};
}

PureState random_pure_state(int n_qubits, Rng& rng) {
  const std::int64_t dim = std::int64_t{1} << n_qubits;
  Vector v(dim);
  for (std::int64_t i = 0; i < dim; ++i) {
    v(i) = Complex{rng.next_gaussian(), rng.next_gaussian()};
  }
  v /= v.norm();
  return PureState(n_qubits, std::move(v));
}

DensityOperator random_density_operator(int n_qubits, Rng& rng) {
  const std::int64_t dim = std::int64_t{1} << n_qubits;
  Matrix g(dim, dim);
  for (std::int64_t r = 0; r < dim; ++r) {
    for (std::int64_t c = 0; c < dim; ++c) {
      g(r, c) = Complex{rng.next_gaussian(), rng.next_gaussian()};
    }
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(n_qubits, std::move(rho));
}

Povm random_povm(int n_qubits, Rng& rng, const Limits& limits, int label_bits) {
  if (n_qubits > limits.max_povm_qubits) {
    throw LimitError("random_povm: " + std::to_string(n_qubits) +
                     " qubits exceeds POVM limit " +
                     std::to_string(limits.max_povm_qubits));
  }
  if (label_bits < 0) {
    label_bits = n_qubits;
  }
  if (label_bits > limits.max_povm_qubits) {
    throw LimitError("random_povm: label width exceeds POVM limit");
  }
  const std::int64_t dim = std::int64_t{1} << n_qubits;
  const std::int64_t labels = std::int64_t{1} << label_bits;
  std::vector<Povm::Element> elems;
  Matrix sum = Matrix::Zero(dim, dim);
  for (std::int64_t x = 0; x < labels; ++x) {
    for (std::int64_t z = 0; z < labels; ++z) {
      Matrix g(dim, dim);
      for (std::int64_t r = 0; r < dim; ++r) {
        for (std::int64_t c = 0; c < dim; ++c) {
          g(r, c) = Complex{rng.next_gaussian(), rng.next_gaussian()};
        }
      }
      Matrix a = g * g.adjoint();
      sum += a;
      elems.push_back({{BitString(static_cast<std::uint64_t>(x), label_bits),
                        BitString(static_cast<std::uint64_t>(z), label_bits)},
                       std::move(a)});
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sum);
  Matrix whiten = solver.eigenvectors() *
                  solver.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                  solver.eigenvectors().adjoint();
  for (auto& e : elems) {
    e.op = whiten * e.op * whiten;
  }
  return Povm(n_qubits, std::move(elems));
}

}  // namespace tcsim
