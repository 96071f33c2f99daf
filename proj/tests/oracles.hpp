#pragma once

// Test-only oracles: small, slow, written from the definitions with no code
// shared with the library paths they check (only Eigen and the qubit
// ordering convention).

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat eye(Eigen::Index d) { return Mat::Identity(d, d); }

inline Mat sx() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Mat sz() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline Mat hgate() {
  Mat m(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

inline Vec kron_vec(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index r = 0; r < a.size(); ++r) {
    out.segment(r * b.size(), b.size()) = a(r) * b;
  }
  return out;
}

// Operator acting as `op` on qubit q (qubit 0 most significant) of n qubits.
inline Mat on_qubit(const Mat& op, int q, int n) {
  Mat out = Mat::Identity(1, 1);
  for (int j = 0; j < n; ++j) {
    out = kron(out, j == q ? op : eye(2));
  }
  return out;
}

// sum_{i<j} (p/2)[(I + s X_i X_j)/2 + (I + s Z_i Z_j)/2] from the definition.
struct Term {
  int i, j;
  double p;
  int s;
};

inline Mat hamiltonian(int n, const std::vector<Term>& terms) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Mat out = Mat::Zero(dim, dim);
  for (const Term& t : terms) {
    const Mat xx = on_qubit(sx(), t.i, n) * on_qubit(sx(), t.j, n);
    const Mat zz = on_qubit(sz(), t.i, n) * on_qubit(sz(), t.j, n);
    out += (t.p / 2) * ((eye(dim) + double(t.s) * xx) / 2 +
                        (eye(dim) + double(t.s) * zz) / 2);
  }
  return out;
}

// |phi_ab> = (Z^b (x) X^a)(|00> + |11>)/sqrt(2) from the definition.
inline Vec bell(int a, int b) {
  Vec seed = Vec::Zero(4);
  seed(0) = seed(3) = 1.0 / std::sqrt(2.0);
  Mat zb = b ? sz() : eye(2);
  Mat xa = a ? sx() : eye(2);
  return kron(zb, xa) * seed;
}

// X^x Z^z as an explicit qubit-by-qubit Kronecker product.
inline Mat frame(const std::vector<int>& x, const std::vector<int>& z) {
  Mat out = Mat::Identity(1, 1);
  for (std::size_t j = 0; j < x.size(); ++j) {
    Mat f = eye(2);
    if (z[j]) {
      f = sz() * f;
    }
    if (x[j]) {
      f = sx() * f;
    }
    out = kron(out, f);
  }
  return out;
}

// Teleportation POVM element from the Bell-pair projector definition:
// Pi = (<e0| (x) I) prod_j P_j (|e0> (x) I) with P_j the |phi_{x_j z_j}>
// projector on the pair (e0 qubit j, received qubit j). Registers are laid
// out [e0 0..n-1][received n..2n-1].
inline Mat teleport_povm_element(const Vec& e0, const std::vector<int>& x,
                                 const std::vector<int>& z) {
  const int n = static_cast<int>(x.size());
  const Eigen::Index dn = Eigen::Index{1} << n;
  // Build the 2n-qubit product of Bell projectors on interleaved pairs.
  const int total = 2 * n;
  const Eigen::Index dim = Eigen::Index{1} << total;
  Mat proj = eye(dim);
  for (int j = 0; j < n; ++j) {
    const Vec b = bell(x[static_cast<std::size_t>(j)],
                       z[static_cast<std::size_t>(j)]);
    // Scatter the 2-qubit projector onto qubits (j, n + j).
    Mat lifted = Mat::Zero(dim, dim);
    const Mat p2 = b * b.adjoint();
    for (Eigen::Index r = 0; r < dim; ++r) {
      const int rq = static_cast<int>((r >> (total - 1 - j)) & 1);
      const int rr = static_cast<int>((r >> (total - 1 - (n + j))) & 1);
      for (Eigen::Index c = 0; c < dim; ++c) {
        const int cq = static_cast<int>((c >> (total - 1 - j)) & 1);
        const int cr = static_cast<int>((c >> (total - 1 - (n + j))) & 1);
        const Eigen::Index rrest =
            r & ~((Eigen::Index{1} << (total - 1 - j)) |
                  (Eigen::Index{1} << (total - 1 - (n + j))));
        const Eigen::Index crest =
            c & ~((Eigen::Index{1} << (total - 1 - j)) |
                  (Eigen::Index{1} << (total - 1 - (n + j))));
        if (rrest == crest) {
          lifted(r, c) = p2(2 * rq + rr, 2 * cq + cr);
        }
      }
    }
    proj = lifted * proj;
  }
  // Contract <e0| ... |e0> over the first register.
  Mat out = Mat::Zero(dn, dn);
  for (Eigen::Index r = 0; r < dn; ++r) {
    for (Eigen::Index c = 0; c < dn; ++c) {
      Cx sum = 0.0;
      for (Eigen::Index q = 0; q < dn; ++q) {
        for (Eigen::Index qp = 0; qp < dn; ++qp) {
          sum += std::conj(e0(q)) * proj(q * dn + r, qp * dn + c) * e0(qp);
        }
      }
      out(r, c) = sum;
    }
  }
  return out;
}

}  // namespace oracle
