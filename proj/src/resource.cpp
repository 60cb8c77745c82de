#include "telechan/resource.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "telechan/errors.hpp"
#include "telechan/kernels.hpp"
#include "telechan/linalg.hpp"

namespace telechan {

namespace {

Eigen::Index medium_dim(int n) { return Eigen::Index{1} << (2 * n); }

void require_dense_pairs(int n, const char* what) {
  if (n < 1 || n > kDensePairCutoff) {
    throw SizeError(std::string(what) + ": n=" + std::to_string(n) +
                    " outside the dense 2n-qubit range [1, " + std::to_string(kDensePairCutoff) +
                    "]");
  }
}

// |Psi_0>^{(x) n} with Alice's qubit j paired to Bob's qubit pairing[j].
ComplexVector paired_bells(int n, std::span<const int> pairing) {
  const Eigen::Index dim = medium_dim(n);
  ComplexVector v = ComplexVector::Zero(dim);
  const double amp = std::pow(2.0, -0.5 * n);
  for (std::uint64_t s = 0; s < (1ULL << n); ++s) {
    // Alice qubit j holds bit s_j; Bob qubit pairing[j] holds the same bit.
    std::uint64_t idx = 0;
    for (int j = 0; j < n; ++j) {
      const std::uint64_t bit = (s >> (n - 1 - j)) & 1U;
      idx |= bit << (2 * n - 1 - 2 * j);
      idx |= bit << (2 * n - 1 - (2 * pairing[j] + 1));
    }
    v(static_cast<Eigen::Index>(idx)) = amp;
  }
  return v;
}

}  // namespace

ResourceState ResourceState::dense(int n, ComplexMatrix rho) {
  require_dense_pairs(n, "dense medium");
  validate_density_matrix(rho, medium_dim(n), "medium");
  return ResourceState(n, DenseMedium{n, std::move(rho)});
}

ResourceState ResourceState::bell_diagonal(ProbDist probs) {
  const int n = probs.n();
  if (n < 1) throw ValidationError("dimension", "Bell-diagonal medium needs n >= 1");
  return ResourceState(n, BellDiagonalMedium{std::move(probs)});
}

ResourceState ResourceState::phase_gate_chain(int n, double theta) {
  if (n < 1 || n > kPhaseGateCutoff) {
    throw SizeError("phase-gate chain: n=" + std::to_string(n) + " outside [1, " +
                    std::to_string(kPhaseGateCutoff) + "]");
  }
  if (!(theta >= 0.0 && theta < 2.0 * std::numbers::pi)) {
    throw DomainError("phase-gate chain: theta must lie in [0, 2 pi)");
  }
  return ResourceState(n, PhaseGateChainMedium{n, theta});
}

ResourceState ResourceState::permutation_mixture(int n) {
  if (n < 2 || n > kDensePairCutoff) {
    throw SizeError("permutation mixture: n=" + std::to_string(n) + " outside [2, " +
                    std::to_string(kDensePairCutoff) + "]");
  }
  return ResourceState(n, PermutationMixtureMedium{n});
}

const DenseMedium& ResourceState::as_dense() const {
  if (const auto* d = std::get_if<DenseMedium>(&payload_)) return *d;
  throw DomainError("medium is not dense (" + kind() + ")");
}

std::string ResourceState::kind() const {
  return std::visit(
      [](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DenseMedium>) return "dense";
        else if constexpr (std::is_same_v<T, BellDiagonalMedium>) return "bell_diagonal";
        else if constexpr (std::is_same_v<T, PhaseGateChainMedium>) return "phase_gate_chain";
        else return "permutation_mixture";
      },
      payload_);
}

ResourceState perfect_bells(int n) {
  return ResourceState::bell_diagonal(ProbDist::delta(PauliString::identity(n)));
}

ResourceState fully_mixed(int n) { return ResourceState::bell_diagonal(ProbDist::uniform(n)); }

ProbDist phase_gate_chain_probs(int n, double theta) {
  if (n < 1 || n > kPhaseGateCutoff) {
    throw SizeError("phase_gate_chain_probs: n=" + std::to_string(n) + " outside [1, " +
                    std::to_string(kPhaseGateCutoff) + "]");
  }
  if (!std::isfinite(theta)) throw DomainError("phase_gate_chain_probs: theta must be finite");
  std::vector<std::complex<double>> amp = kernels::chain_phase_vector(n, theta);
  kernels::fwht(amp);
  // |2^{-n} W(t)|^2
  const double scale = std::ldexp(1.0, -2 * n);
  return ProbDist::z_sector(n, kernels::squared_magnitudes(amp, scale));
}

ResourceState phase_gate_chain_state(int n, double theta) {
  require_dense_pairs(n, "phase_gate_chain_state");
  std::vector<int> identity_pairing(n);
  std::iota(identity_pairing.begin(), identity_pairing.end(), 0);
  ComplexVector psi = paired_bells(n, identity_pairing);
  const Complex phase = std::polar(1.0, theta);
  for (Eigen::Index idx = 0; idx < psi.size(); ++idx) {
    // Alice's bits sit at even positions of the interleaved layout.
    std::uint64_t alice = 0;
    for (int j = 0; j < n; ++j) {
      alice = (alice << 1) | ((static_cast<std::uint64_t>(idx) >> (2 * n - 1 - 2 * j)) & 1U);
    }
    const int c = kernels::adjacent_ones(alice);
    if (c > 0) psi(idx) *= std::pow(phase, c);
  }
  return ResourceState::dense(n, psi * psi.adjoint());
}

ResourceState permutation_mixture_state(int n) {
  if (n < 2 || n > kDensePairCutoff) {
    throw SizeError("permutation_mixture_state: n=" + std::to_string(n) + " outside [2, " +
                    std::to_string(kDensePairCutoff) + "]");
  }
  std::vector<int> pairing(n);
  std::iota(pairing.begin(), pairing.end(), 0);
  ComplexMatrix rho = ComplexMatrix::Zero(medium_dim(n), medium_dim(n));
  int count = 0;
  do {
    const ComplexVector v = paired_bells(n, pairing);
    rho += v * v.adjoint();
    ++count;
  } while (std::next_permutation(pairing.begin(), pairing.end()));
  rho /= static_cast<double>(count);
  return ResourceState::dense(n, std::move(rho));
}

ProbDist bell_probabilities(int n, const ComplexMatrix& chi) {
  require_dense_pairs(n, "bell_probabilities");
  if (chi.rows() != medium_dim(n) || chi.cols() != medium_dim(n)) {
    throw DimensionError("bell_probabilities: medium must be 4^n x 4^n");
  }
  const ComplexMatrix basis = bell_basis(n);
  std::vector<double> p(static_cast<std::size_t>(medium_dim(n)));
  for (Eigen::Index k = 0; k < medium_dim(n); ++k) {
    p[static_cast<std::size_t>(k)] = (basis.col(k).adjoint() * chi * basis.col(k))(0, 0).real();
  }
  return ProbDist::dense(n, std::move(p));
}

ComplexMatrix bell_diagonal_matrix(const ProbDist& probs) {
  const int n = probs.n();
  require_dense_pairs(n, "bell_diagonal_matrix");
  ComplexMatrix out = ComplexMatrix::Zero(medium_dim(n), medium_dim(n));
  probs.for_each_nonzero([&](const PauliString& k, double p) {
    const ComplexVector v = bell_state_string(k);
    out += p * (v * v.adjoint());
  });
  return out;
}

ResourceState bell_twirl(const ResourceState& chi) {
  const DenseMedium& d = chi.as_dense();
  validate_density_matrix(d.rho, medium_dim(d.n), "medium");
  return ResourceState::bell_diagonal(bell_probabilities(d.n, d.rho));
}

ComplexMatrix to_dense_matrix(const ResourceState& chi) {
  return std::visit(
      [&](const auto& p) -> ComplexMatrix {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DenseMedium>) return p.rho;
        else if constexpr (std::is_same_v<T, BellDiagonalMedium>) return bell_diagonal_matrix(p.probs);
        else if constexpr (std::is_same_v<T, PhaseGateChainMedium>)
          return phase_gate_chain_state(p.n, p.theta).as_dense().rho;
        else return permutation_mixture_state(p.n).as_dense().rho;
      },
      chi.payload());
}

}  // namespace telechan
