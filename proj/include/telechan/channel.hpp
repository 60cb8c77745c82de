#pragma once

#include <functional>

#include "telechan/pauli.hpp"
#include "telechan/prob_dist.hpp"
#include "telechan/resource.hpp"

namespace telechan {

/// n-qubit correlated Pauli channel rho -> sum_k p_k sigma_k rho sigma_k.
class PauliChannel {
 public:
  explicit PauliChannel(ProbDist probs) : probs_(std::move(probs)) {}

  static PauliChannel identity(int n) { return PauliChannel(ProbDist::delta(PauliString::identity(n))); }

  int n() const noexcept { return probs_.n(); }
  const ProbDist& probs() const noexcept { return probs_; }

 private:
  ProbDist probs_;
};

/// Value Tr[(sigma_a on A) (x) (sigma_b on B) chi] for length-n words a, b.
using CorrelatorOracle = std::function<double(const PauliString& a, const PauliString& b)>;

/// p_k = Tr[E_k chi]. Dense media are twirled; structured media are evaluated
/// directly.
PauliChannel channel_from_resource(const ResourceState& chi);

/// Requires dim(rho) = 2^n, n <= kDenseQubitCutoff.
ComplexMatrix apply_channel(const PauliChannel& channel, const ComplexMatrix& rho);

/// Bell-diagonal CJ state sum_k p_k E_k.
ResourceState cj_state(const PauliChannel& channel);
/// (Lambda (x) I)(E_0^{(x) n}) computed by acting on Alice's qubits, n <= 3.
ComplexMatrix cj_state_dense(const PauliChannel& channel);

double channel_entropy(const PauliChannel& channel);
double entanglement_fidelity(const PauliChannel& channel);

/// Lambda_2 o Lambda_1 (= Lambda_1 o Lambda_2). Computed as a group
/// convolution over the (x, z) masks, via Walsh-Hadamard transforms when the
/// distributions are dense or Z-sector.
PauliChannel compose(const PauliChannel& first, const PauliChannel& second);

/// Word of length 2n that puts `k` on Alice's qubits of the interleaved layout.
PauliString on_alice(const PauliString& k);

/// (Lambda (x) I_B) chi for a dense medium; the channel acts on Alice's half.
ComplexMatrix apply_channel_to_alice(const PauliChannel& channel, const ComplexMatrix& chi);

/// U^{(n)} = prod_j U_j with U_j = sum_k sigma_k (x) E_k on (X_j, A_j, B_j).
/// Qubit order of the result: X1..Xn, then the medium layout A1,B1,...,An,Bn.
ComplexMatrix environment_unitary(int n);

/// Tr_AB[ U (rho (x) chi) U^dag ], n <= 2.
ComplexMatrix unitary_rep_apply(const ComplexMatrix& rho, const ResourceState& chi);

/// Tr_X[ U (rho (x) chi) U^dag ], n <= 2.
ComplexMatrix weak_complementary(const ComplexMatrix& rho, const ResourceState& chi);

/// S(Lambda(rho)) - S((Lambda (x) I)(|Psi_rho><Psi_rho|)) in bits, n <= 3.
double coherent_info(const PauliChannel& channel, const ComplexMatrix& rho);

/// Pauli-basis expansion of the Bell projectors, per pair
///   E_0 = 1/4 (s0 s0 + s1 s1 - s2 s2 + s3 s3),
/// evaluated on the diagonal correlators Tr[sigma_a (x) sigma_a chi].
ProbDist probs_from_correlators(const CorrelatorOracle& oracle, int n);

/// Oracle backed by a dense medium (interleaved layout).
CorrelatorOracle correlator_oracle(const ResourceState& chi);

}  // namespace telechan
