#pragma once

#include <string>
#include <variant>

#include "telechan/pauli.hpp"
#include "telechan/prob_dist.hpp"

namespace telechan {

/// Largest n for the structured phase-gate evaluation (2^n Z-sector entries).
inline constexpr int kPhaseGateCutoff = kZSectorCutoff;

struct DenseMedium {
  int n = 0;
  ComplexMatrix rho;  // 4^n x 4^n on the interleaved layout (A1,B1,...,An,Bn)
};

struct BellDiagonalMedium {
  ProbDist probs;
};

/// Bell pairs with a conditional-phase gate diag(1,1,1,e^{i theta}) applied
/// to Alice's neighbouring qubits (1,2), (2,3), ..., (n-1,n). Open chain.
struct PhaseGateChainMedium {
  int n = 0;
  double theta = 0.0;
};

/// Uniform mixture over all n! ways of pairing Alice's qubits with Bob's.
struct PermutationMixtureMedium {
  int n = 0;
};

/// The teleportation medium shared by Alice (A) and Bob (B).
class ResourceState {
 public:
  using Payload =
      std::variant<DenseMedium, BellDiagonalMedium, PhaseGateChainMedium, PermutationMixtureMedium>;

  /// Validates the density matrix (Hermitian, unit trace, PSD, dim 4^n).
  static ResourceState dense(int n, ComplexMatrix rho);
  static ResourceState bell_diagonal(ProbDist probs);
  /// Requires 1 <= n <= kPhaseGateCutoff and theta in [0, 2 pi).
  static ResourceState phase_gate_chain(int n, double theta);
  /// Requires 2 <= n <= 3.
  static ResourceState permutation_mixture(int n);

  int n() const noexcept { return n_; }
  const Payload& payload() const noexcept { return payload_; }

  bool is_dense() const noexcept { return std::holds_alternative<DenseMedium>(payload_); }
  const DenseMedium& as_dense() const;

  std::string kind() const;

 private:
  ResourceState(int n, Payload p) : n_(n), payload_(std::move(p)) {}

  int n_;
  Payload payload_;
};

ResourceState perfect_bells(int n);
ResourceState fully_mixed(int n);

/// Bell-string distribution of the phase-gate chain, evaluated with one
/// Walsh-Hadamard transform of the phase vector e^{i theta c(s)}:
///   a_t = 2^{-n} sum_s (-1)^{t.s} e^{i theta c(s)},   p_t = |a_t|^2,
/// where c(s) counts adjacent (1,1) pairs. Z-sector storage. Any finite theta.
ProbDist phase_gate_chain_probs(int n, double theta);

/// Dense pure state of the phase-gate chain, n <= 3.
ResourceState phase_gate_chain_state(int n, double theta);

/// Dense uniform mixture over the n! pairings, n in {2, 3}.
ResourceState permutation_mixture_state(int n);

/// p_k = Tr[E_k chi] = <Psi_k| chi |Psi_k>.
ProbDist bell_probabilities(int n, const ComplexMatrix& chi);

/// sum_k p_k E_k as a dense 4^n x 4^n matrix, n <= 3.
ComplexMatrix bell_diagonal_matrix(const ProbDist& probs);

/// Bell-diagonal part of a dense medium.
ResourceState bell_twirl(const ResourceState& chi);

/// Dense matrix of any medium representation, n <= 3.
ComplexMatrix to_dense_matrix(const ResourceState& chi);

}  // namespace telechan
