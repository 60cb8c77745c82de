#include "telechan/linalg.hpp"

#include <cmath>
#include <cstdint>

#include <Eigen/Eigenvalues>

#include "telechan/errors.hpp"

namespace telechan {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index r = 0; r < a.size(); ++r) out.segment(r * b.size(), b.size()) = a(r) * b;
  return out;
}

void validate_density_matrix(const ComplexMatrix& rho, Eigen::Index expected_dim,
                             const std::string& what) {
  if (rho.rows() != rho.cols()) {
    throw ValidationError("square", what + " is " + std::to_string(rho.rows()) + "x" +
                                        std::to_string(rho.cols()));
  }
  if (expected_dim > 0 && rho.rows() != expected_dim) {
    throw ValidationError("dimension", what + " has dimension " + std::to_string(rho.rows()) +
                                           ", expected " + std::to_string(expected_dim));
  }
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kDensityTol) {
    throw ValidationError("hermitian", what + " deviates from Hermitian by " + std::to_string(herm));
  }
  const Complex tr = rho.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kDensityTol) {
    throw ValidationError("unit_trace", what + " has trace " + std::to_string(tr.real()));
  }
  const double min_eig = hermitian_eigenvalues(rho).minCoeff();
  if (min_eig < -kDensityTol) {
    throw ValidationError("positive_semidefinite",
                          what + " has eigenvalue " + std::to_string(min_eig));
  }
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m) {
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
  return solver.eigenvalues();
}

double von_neumann_entropy_bits(const ComplexMatrix& rho) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(rho);
  double s = 0.0;
  for (double l : ev) {
    if (l > kEntropyClamp) s -= l * std::log2(l);
  }
  return s;
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("trace_distance: shape mismatch");
  }
  return 0.5 * hermitian_eigenvalues(a - b).cwiseAbs().sum();
}

ComplexMatrix partial_trace_second(const ComplexMatrix& m, Eigen::Index d1, Eigen::Index d2) {
  if (m.rows() != d1 * d2 || m.cols() != d1 * d2) {
    throw DimensionError("partial_trace_second: dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(d1, d1);
  for (Eigen::Index i = 0; i < d1; ++i) {
    for (Eigen::Index j = 0; j < d1; ++j) {
      Complex acc = 0.0;
      for (Eigen::Index k = 0; k < d2; ++k) acc += m(i * d2 + k, j * d2 + k);
      out(i, j) = acc;
    }
  }
  return out;
}

ComplexMatrix partial_trace_first(const ComplexMatrix& m, Eigen::Index d1, Eigen::Index d2) {
  if (m.rows() != d1 * d2 || m.cols() != d1 * d2) {
    throw DimensionError("partial_trace_first: dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
  for (Eigen::Index k = 0; k < d1; ++k) out += m.block(k * d2, k * d2, d2, d2);
  return out;
}

namespace {

std::vector<Eigen::Index> index_map(std::span<const int> perm) {
  const int q = static_cast<int>(perm.size());
  std::vector<bool> seen(q, false);
  for (int p : perm) {
    if (p < 0 || p >= q || seen[p]) throw DomainError("permute_qubits: not a permutation");
    seen[p] = true;
  }
  const std::size_t dim = std::size_t{1} << q;
  std::vector<Eigen::Index> map(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::uint64_t j = 0;
    for (int src = 0; src < q; ++src) {
      const std::uint64_t bit = (i >> (q - 1 - src)) & 1U;
      j |= bit << (q - 1 - perm[src]);
    }
    map[i] = static_cast<Eigen::Index>(j);
  }
  return map;
}

}  // namespace

ComplexMatrix permute_qubits(const ComplexMatrix& m, std::span<const int> perm) {
  const auto map = index_map(perm);
  const auto dim = static_cast<Eigen::Index>(map.size());
  if (m.rows() != dim || m.cols() != dim) throw DimensionError("permute_qubits: dimension mismatch");
  ComplexMatrix out(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) out(map[r], map[c]) = m(r, c);
  }
  return out;
}

ComplexVector permute_qubits(const ComplexVector& v, std::span<const int> perm) {
  const auto map = index_map(perm);
  const auto dim = static_cast<Eigen::Index>(map.size());
  if (v.size() != dim) throw DimensionError("permute_qubits: dimension mismatch");
  ComplexVector out(dim);
  for (Eigen::Index r = 0; r < dim; ++r) out(map[r]) = v(r);
  return out;
}

std::vector<int> interleaved_to_blocks(int n) {
  std::vector<int> perm(2 * n);
  for (int j = 0; j < n; ++j) {
    perm[2 * j] = j;
    perm[2 * j + 1] = n + j;
  }
  return perm;
}

}  // namespace telechan
