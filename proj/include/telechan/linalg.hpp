#pragma once

#include <span>
#include <string>
#include <vector>

#include "telechan/pauli.hpp"

namespace telechan {

/// Tolerances for density-matrix validation.
inline constexpr double kDensityTol = 1e-10;
/// Eigenvalues below this are treated as zero inside von Neumann entropies.
inline constexpr double kEntropyClamp = 1e-14;

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// Throws ValidationError naming the failed invariant ("square", "dimension",
/// "hermitian", "unit_trace", "positive_semidefinite").
void validate_density_matrix(const ComplexMatrix& rho, Eigen::Index expected_dim,
                             const std::string& what = "density matrix");

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Eigenvalues of the Hermitian part, ascending.
Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m);

double von_neumann_entropy_bits(const ComplexMatrix& rho);

/// 1/2 || a - b ||_1 for Hermitian arguments.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr_2 of an operator on C^{d1} (x) C^{d2}.
ComplexMatrix partial_trace_second(const ComplexMatrix& m, Eigen::Index d1, Eigen::Index d2);
/// Tr_1 of an operator on C^{d1} (x) C^{d2}.
ComplexMatrix partial_trace_first(const ComplexMatrix& m, Eigen::Index d1, Eigen::Index d2);

/// Reorders the qubits of an operator on `perm.size()` qubits: qubit q of the
/// input becomes qubit perm[q] of the output (qubit 0 is the most significant).
ComplexMatrix permute_qubits(const ComplexMatrix& m, std::span<const int> perm);
ComplexVector permute_qubits(const ComplexVector& v, std::span<const int> perm);

/// Permutation taking the interleaved medium layout (A1,B1,...,An,Bn) to the
/// block layout (A1..An,B1..Bn).
std::vector<int> interleaved_to_blocks(int n);

}  // namespace telechan
