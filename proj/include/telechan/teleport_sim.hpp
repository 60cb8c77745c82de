#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "telechan/pauli.hpp"
#include "telechan/resource.hpp"

namespace telechan {

/// Counter-based generator: every (stream, trial, slot) triple maps to an
/// independent uniform draw, so trials can run in any order.
class CounterRng {
 public:
  static constexpr const char* kName = "splitmix64-counter";

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;
  std::uint64_t bits(std::uint64_t trial, std::uint32_t slot) const noexcept;
  /// Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t trial, std::uint32_t slot) const noexcept;

 private:
  std::uint64_t key_;
};

/// One Bell outcome k of Alice's measurement on (X, A).
struct TeleportBranch {
  PauliString outcome;
  double probability = 0.0;
  /// Normalised post-correction state on (R, B); R is empty for a plain input.
  ComplexMatrix corrected;
};

/// Exact branches for the joint input `psi` on (R, X), given as a
/// dim(R) x 2^n amplitude matrix, teleported through the dense medium.
std::vector<TeleportBranch> teleport_branches(const ResourceState& chi, const ComplexMatrix& psi);

/// Exact distribution of Alice's Bell outcomes for a (possibly mixed) input.
std::vector<double> bell_outcome_distribution(const ResourceState& chi, const ComplexMatrix& rho);

/// Exact distribution of the Pauli error read out by teleporting half of
/// |Psi_0>^n (reference R kept by Alice) and measuring (R_j, B_j) in the Bell
/// basis. Equals Tr[E_k chi].
std::vector<double> pauli_error_distribution(const ResourceState& chi);

struct SimReport {
  int n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::string generator = CounterRng::kName;

  /// Alice's Bell-measurement record, indexed by PauliString::index().
  std::vector<std::uint64_t> outcome_counts;
  std::vector<double> outcome_probabilities;
  double outcome_tv_distance = 0.0;

  /// Pauli-error labels from the reference probe, indexed like outcome_counts.
  std::vector<std::uint64_t> pauli_counts;
  std::vector<double> predicted_probs;
  /// Empirical pauli_counts / trials against predicted p_k.
  double tv_distance = 0.0;

  ComplexMatrix empirical_output;
  ComplexMatrix predicted_output;
  double trace_distance = 0.0;
};

/// Runs the teleportation protocol `trials` times: mixed inputs are drawn from
/// their eigen-ensemble, the Bell outcome is drawn from its exact conditional
/// distribution, Bob applies sigma_k, and the corrected states are averaged.
/// n <= 2. Deterministic in `seed`, independent of the thread count.
SimReport simulate_teleportation(const ResourceState& chi, const ComplexMatrix& rho_in,
                                 std::uint64_t trials, std::uint64_t seed);

struct EquivalenceSummary {
  double max_tv_distance = 0.0;
  double max_outcome_tv_distance = 0.0;
  double max_trace_distance = 0.0;
  /// max |unitary_rep_apply - apply_channel| over samples.
  double max_exact_discrepancy = 0.0;
  std::vector<SimReport> reports;
};

EquivalenceSummary verify_equivalence(const ResourceState& chi, const std::vector<ComplexMatrix>& samples,
                                      std::uint64_t trials, std::uint64_t seed);

double total_variation(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace telechan
