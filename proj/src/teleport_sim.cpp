#include "telechan/teleport_sim.hpp"

#include <algorithm>
#include <cmath>

#include "telechan/channel.hpp"
#include "telechan/errors.hpp"
#include "telechan/linalg.hpp"

namespace telechan {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void require_sim_size(int n) {
  if (n < 1 || n > 2) {
    throw SizeError("teleportation simulation: n=" + std::to_string(n) + " outside [1, 2]");
  }
}

Eigen::Index pow2(int k) { return Eigen::Index{1} << k; }

// Bell string |Psi_k> on 2n qubits, reordered from pairs (P1,Q1,...) to
// blocks (P1..Pn,Q1..Qn).
ComplexVector block_bell_state(const PauliString& k) {
  const auto perm = interleaved_to_blocks(k.size());
  return permute_qubits(bell_state_string(k), perm);
}

std::size_t sample_index(const std::vector<double>& cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

std::vector<double> cumulative(const std::vector<double>& p) {
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    cdf[i] = acc;
  }
  for (double& c : cdf) c /= acc;
  return cdf;
}

struct Component {
  double weight;
  std::vector<TeleportBranch> branches;
  std::vector<double> cdf;
};

ComplexMatrix maximally_entangled_input(int n) {
  const Eigen::Index d = pow2(n);
  return ComplexMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d));
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_(splitmix64(splitmix64(seed) ^ (stream * kGolden))) {}

std::uint64_t CounterRng::bits(std::uint64_t trial, std::uint32_t slot) const noexcept {
  return splitmix64(splitmix64(key_ ^ trial) + slot);
}

double CounterRng::uniform(std::uint64_t trial, std::uint32_t slot) const noexcept {
  return static_cast<double>(bits(trial, slot) >> 11) * 0x1.0p-53;
}

std::vector<TeleportBranch> teleport_branches(const ResourceState& chi, const ComplexMatrix& psi) {
  const int n = chi.n();
  require_sim_size(n);
  const Eigen::Index d = pow2(n);
  if (psi.cols() != d || psi.rows() < 1) throw DimensionError("teleport_branches: psi must be dim(R) x 2^n");
  const Eigen::Index dr = psi.rows();
  int r_qubits = 0;
  while (pow2(r_qubits) < dr) ++r_qubits;
  if (pow2(r_qubits) != dr) throw DimensionError("teleport_branches: reference dimension must be 2^k");

  // Medium in block order (A1..An, B1..Bn).
  const auto to_blocks = interleaved_to_blocks(n);
  const ComplexMatrix medium = permute_qubits(to_dense_matrix(chi), to_blocks);

  std::vector<TeleportBranch> out;
  out.reserve(static_cast<std::size_t>(d * d));
  for (Eigen::Index idx = 0; idx < d * d; ++idx) {
    const PauliString k = PauliString::from_index(n, static_cast<std::uint64_t>(idx));
    // Bell bra on (X, A) in block order: entry x * d + a.
    const ComplexVector bell = block_bell_state(k);
    // phi[r, a] = sum_x conj(Psi_k[x, a]) psi[r, x]
    ComplexMatrix phi = ComplexMatrix::Zero(dr, d);
    for (Eigen::Index r = 0; r < dr; ++r) {
      for (Eigen::Index a = 0; a < d; ++a) {
        Complex acc = 0.0;
        for (Eigen::Index x = 0; x < d; ++x) acc += std::conj(bell(x * d + a)) * psi(r, x);
        phi(r, a) = acc;
      }
    }
    // M[(r,b),(r',b')] = sum_{a,a'} phi[r,a] conj(phi[r',a']) chi[(a,b),(a',b')]
    ComplexMatrix m = ComplexMatrix::Zero(dr * d, dr * d);
    for (Eigen::Index a = 0; a < d; ++a) {
      for (Eigen::Index a2 = 0; a2 < d; ++a2) {
        const ComplexMatrix block = medium.block(a * d, a2 * d, d, d);
        if (block.cwiseAbs().maxCoeff() == 0.0) continue;
        for (Eigen::Index r = 0; r < dr; ++r) {
          for (Eigen::Index r2 = 0; r2 < dr; ++r2) {
            const Complex w = phi(r, a) * std::conj(phi(r2, a2));
            if (w != Complex(0.0, 0.0)) m.block(r * d, r2 * d, d, d) += w * block;
          }
        }
      }
    }
    TeleportBranch br;
    br.outcome = k;
    br.probability = std::max(0.0, m.trace().real());
    if (br.probability > 0.0) {
      // Bob's correction sigma_k on the lowest n qubits (B).
      const PauliString correction(r_qubits + n, k.xmask(), k.zmask());
      br.corrected = conjugate_by_pauli(m, correction) / br.probability;
    } else {
      br.corrected = ComplexMatrix::Zero(dr * d, dr * d);
    }
    out.push_back(std::move(br));
  }
  return out;
}

std::vector<double> bell_outcome_distribution(const ResourceState& chi, const ComplexMatrix& rho) {
  const int n = chi.n();
  require_sim_size(n);
  validate_density_matrix(rho, pow2(n), "input state");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (rho + rho.adjoint()));
  std::vector<double> p(static_cast<std::size_t>(pow2(2 * n)), 0.0);
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    const double l = eig.eigenvalues()(i);
    if (l <= kEntropyClamp) continue;
    const auto branches = teleport_branches(chi, eig.eigenvectors().col(i).transpose());
    for (std::size_t k = 0; k < branches.size(); ++k) p[k] += l * branches[k].probability;
  }
  return p;
}

std::vector<double> pauli_error_distribution(const ResourceState& chi) {
  const int n = chi.n();
  require_sim_size(n);
  const auto branches = teleport_branches(chi, maximally_entangled_input(n));
  std::vector<double> p(branches.size(), 0.0);
  for (const auto& br : branches) {
    if (br.probability <= 0.0) continue;
    for (std::size_t m = 0; m < p.size(); ++m) {
      const ComplexVector bell = block_bell_state(PauliString::from_index(n, m));
      p[m] += br.probability * (bell.adjoint() * br.corrected * bell)(0, 0).real();
    }
  }
  return p;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw DimensionError("total_variation: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

SimReport simulate_teleportation(const ResourceState& chi, const ComplexMatrix& rho_in,
                                 std::uint64_t trials, std::uint64_t seed) {
  const int n = chi.n();
  require_sim_size(n);
  if (trials < 1) throw DomainError("simulate_teleportation: trials must be >= 1");
  validate_density_matrix(rho_in, pow2(n), "input state");
  const std::size_t outcomes = static_cast<std::size_t>(pow2(2 * n));

  // Eigen-ensemble of the input.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (rho_in + rho_in.adjoint()));
  if (eig.info() != Eigen::Success) throw NumericalError("simulate_teleportation: eigensolver failed");
  std::vector<Component> comps;
  std::vector<double> weights;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    const double l = eig.eigenvalues()(i);
    if (l <= kEntropyClamp) continue;
    Component c{l, teleport_branches(chi, eig.eigenvectors().col(i).transpose()), {}};
    std::vector<double> p(outcomes);
    for (std::size_t k = 0; k < outcomes; ++k) p[k] = c.branches[k].probability;
    c.cdf = cumulative(p);
    weights.push_back(l);
    comps.push_back(std::move(c));
  }
  const std::vector<double> comp_cdf = cumulative(weights);

  // Reference probe: Alice's outcome, then the Bell label of (R, B).
  const auto probe = teleport_branches(chi, maximally_entangled_input(n));
  std::vector<double> probe_p(outcomes);
  std::vector<std::vector<double>> probe_label_cdf(outcomes);
  for (std::size_t k = 0; k < outcomes; ++k) {
    probe_p[k] = probe[k].probability;
    std::vector<double> labels(outcomes, 0.0);
    if (probe[k].probability > 0.0) {
      for (std::size_t m = 0; m < outcomes; ++m) {
        const ComplexVector bell = block_bell_state(PauliString::from_index(n, m));
        labels[m] = std::max(0.0, (bell.adjoint() * probe[k].corrected * bell)(0, 0).real());
      }
    } else {
      labels[0] = 1.0;
    }
    probe_label_cdf[k] = cumulative(labels);
  }
  const std::vector<double> probe_cdf = cumulative(probe_p);

  const CounterRng rng(seed);
  const std::size_t ncomp = comps.size();
  std::vector<std::uint64_t> branch_counts(ncomp * outcomes, 0);
  std::vector<std::uint64_t> pauli_counts(outcomes, 0);
  const auto total = static_cast<std::int64_t>(trials);

#ifdef TELECHAN_HAVE_OPENMP
#pragma omp parallel
#endif
  {
    std::vector<std::uint64_t> local_branch(ncomp * outcomes, 0);
    std::vector<std::uint64_t> local_pauli(outcomes, 0);
#ifdef TELECHAN_HAVE_OPENMP
#pragma omp for schedule(static)
#endif
    for (std::int64_t t = 0; t < total; ++t) {
      const auto ut = static_cast<std::uint64_t>(t);
      const std::size_t i = sample_index(comp_cdf, rng.uniform(ut, 0));
      const std::size_t k = sample_index(comps[i].cdf, rng.uniform(ut, 1));
      ++local_branch[i * outcomes + k];
      const std::size_t kp = sample_index(probe_cdf, rng.uniform(ut, 2));
      ++local_pauli[sample_index(probe_label_cdf[kp], rng.uniform(ut, 3))];
    }
#ifdef TELECHAN_HAVE_OPENMP
#pragma omp critical
#endif
    {
      for (std::size_t j = 0; j < local_branch.size(); ++j) branch_counts[j] += local_branch[j];
      for (std::size_t j = 0; j < outcomes; ++j) pauli_counts[j] += local_pauli[j];
    }
  }

  SimReport rep;
  rep.n = n;
  rep.trials = trials;
  rep.seed = seed;
  rep.outcome_counts.assign(outcomes, 0);
  rep.outcome_probabilities.assign(outcomes, 0.0);
  const Eigen::Index d = pow2(n);
  rep.empirical_output = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < ncomp; ++i) {
    for (std::size_t k = 0; k < outcomes; ++k) {
      const std::uint64_t c = branch_counts[i * outcomes + k];
      rep.outcome_counts[k] += c;
      rep.outcome_probabilities[k] += comps[i].weight * comps[i].branches[k].probability;
      if (c > 0) rep.empirical_output += static_cast<double>(c) * comps[i].branches[k].corrected;
    }
  }
  rep.empirical_output /= static_cast<double>(trials);

  std::vector<double> freq(outcomes), pauli_freq(outcomes);
  for (std::size_t k = 0; k < outcomes; ++k) {
    freq[k] = static_cast<double>(rep.outcome_counts[k]) / static_cast<double>(trials);
    pauli_freq[k] = static_cast<double>(pauli_counts[k]) / static_cast<double>(trials);
  }
  rep.outcome_tv_distance = total_variation(freq, rep.outcome_probabilities);

  const PauliChannel channel = channel_from_resource(chi);
  rep.pauli_counts = std::move(pauli_counts);
  rep.predicted_probs.resize(outcomes);
  for (std::size_t k = 0; k < outcomes; ++k) {
    rep.predicted_probs[k] = channel.probs().probability(PauliString::from_index(n, k));
  }
  rep.tv_distance = total_variation(pauli_freq, rep.predicted_probs);

  rep.predicted_output = apply_channel(channel, rho_in);
  rep.trace_distance = trace_distance(rep.empirical_output, rep.predicted_output);
  return rep;
}

EquivalenceSummary verify_equivalence(const ResourceState& chi, const std::vector<ComplexMatrix>& samples,
                                      std::uint64_t trials, std::uint64_t seed) {
  require_sim_size(chi.n());
  EquivalenceSummary out;
  const PauliChannel channel = channel_from_resource(chi);
  for (std::size_t s = 0; s < samples.size(); ++s) {
    SimReport rep = simulate_teleportation(chi, samples[s], trials, CounterRng(seed, s + 1).bits(0, 0));
    out.max_tv_distance = std::max(out.max_tv_distance, rep.tv_distance);
    out.max_outcome_tv_distance = std::max(out.max_outcome_tv_distance, rep.outcome_tv_distance);
    out.max_trace_distance = std::max(out.max_trace_distance, rep.trace_distance);
    const double exact = max_abs_diff(unitary_rep_apply(samples[s], chi), apply_channel(channel, samples[s]));
    out.max_exact_discrepancy = std::max(out.max_exact_discrepancy, exact);
    out.reports.push_back(std::move(rep));
  }
  return out;
}

}  // namespace telechan
