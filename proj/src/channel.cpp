#include "telechan/channel.hpp"

#include <cmath>
#include <string>

#include "telechan/errors.hpp"
#include "telechan/kernels.hpp"
#include "telechan/linalg.hpp"

namespace telechan {

namespace {

Eigen::Index qubit_dim(int n) { return Eigen::Index{1} << n; }

void require_env_size(int n, const char* what) {
  if (n < 1 || n > 2) {
    throw SizeError(std::string(what) + ": n=" + std::to_string(n) +
                    " outside [1, 2] (combined space is 8^n)");
  }
}

// Group index of a Pauli string for the Z_2^{2n} convolution.
std::uint64_t group_index(const PauliString& k) { return (k.xmask() << k.size()) | k.zmask(); }

PauliString from_group_index(int n, std::uint64_t g) {
  const std::uint64_t low = (1ULL << n) - 1ULL;
  return PauliString(n, g >> n, g & low);
}

PauliChannel compose_sparse(const ProbDist& a, const ProbDist& b) {
  std::map<std::uint64_t, double> acc;
  a.for_each_nonzero([&](const PauliString& ka, double pa) {
    b.for_each_nonzero([&](const PauliString& kb, double pb) { acc[(ka * kb).index()] += pa * pb; });
  });
  return PauliChannel(ProbDist::sparse(a.n(), std::move(acc)));
}

PauliChannel compose_z_sector(const ProbDist& a, const ProbDist& b) {
  const int n = a.n();
  std::vector<double> fa(std::size_t{1} << n, 0.0);
  std::vector<double> fb(fa.size(), 0.0);
  a.for_each_nonzero([&](const PauliString& k, double p) { fa[k.zmask()] = p; });
  b.for_each_nonzero([&](const PauliString& k, double p) { fb[k.zmask()] = p; });
  kernels::fwht(fa);
  kernels::fwht(fb);
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
  kernels::fwht(fa);
  const double scale = std::ldexp(1.0, -n);
  for (double& v : fa) v = std::max(0.0, v * scale);
  return PauliChannel(ProbDist::z_sector(n, std::move(fa)));
}

PauliChannel compose_dense(const ProbDist& a, const ProbDist& b) {
  const int n = a.n();
  const std::size_t len = std::size_t{1} << (2 * n);
  std::vector<double> fa(len, 0.0);
  std::vector<double> fb(len, 0.0);
  a.for_each_nonzero([&](const PauliString& k, double p) { fa[group_index(k)] = p; });
  b.for_each_nonzero([&](const PauliString& k, double p) { fb[group_index(k)] = p; });
  kernels::fwht(fa);
  kernels::fwht(fb);
  for (std::size_t i = 0; i < len; ++i) fa[i] *= fb[i];
  kernels::fwht(fa);
  const double scale = std::ldexp(1.0, -2 * n);
  std::vector<double> out(len, 0.0);
  for (std::size_t g = 0; g < len; ++g) {
    out[from_group_index(n, g).index()] = std::max(0.0, fa[g] * scale);
  }
  return PauliChannel(ProbDist::dense(n, std::move(out)));
}

// Tr[P chi] for a Pauli string P on the full space of chi.
double pauli_expectation(const ComplexMatrix& chi, const PauliString& p) {
  const std::uint64_t x = p.xmask();
  const std::uint64_t z = p.zmask();
  // sigma = i^{|x&z|} X^x Z^z, and X^x Z^z |c> = (-1)^{c.z} |c ^ x>.
  static const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex global = kIPow[__builtin_popcountll(x & z) & 3];
  Complex acc = 0.0;
  for (Eigen::Index c = 0; c < chi.cols(); ++c) {
    const auto uc = static_cast<std::uint64_t>(c);
    const double sign = (__builtin_popcountll(uc & z) & 1) ? -1.0 : 1.0;
    // <c^x| sigma |c> chi(c, c^x) summed over c gives Tr[sigma chi].
    acc += sign * chi(c, static_cast<Eigen::Index>(uc ^ x));
  }
  return (global * acc).real();
}

// Interleaved 2n-qubit word with `a` on Alice's and `b` on Bob's qubits.
PauliString interleave(const PauliString& a, const PauliString& b) {
  const int n = a.size();
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  for (int j = 0; j < n; ++j) {
    const std::uint64_t src = 1ULL << (n - 1 - j);
    const std::uint64_t bit_a = 1ULL << (2 * n - 1 - 2 * j);
    const std::uint64_t bit_b = bit_a >> 1;
    if (a.xmask() & src) x |= bit_a;
    if (a.zmask() & src) z |= bit_a;
    if (b.xmask() & src) x |= bit_b;
    if (b.zmask() & src) z |= bit_b;
  }
  return PauliString(2 * n, x, z);
}

ComplexMatrix joint_environment_state(const ComplexMatrix& rho, const ResourceState& chi,
                                      const char* what) {
  const int n = chi.n();
  require_env_size(n, what);
  const ComplexMatrix medium = to_dense_matrix(chi);
  validate_density_matrix(rho, qubit_dim(n), "input state");
  const ComplexMatrix u = environment_unitary(n);
  return u * kron(rho, medium) * u.adjoint();
}

}  // namespace

PauliChannel channel_from_resource(const ResourceState& chi) {
  return std::visit(
      [&](const auto& p) -> PauliChannel {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DenseMedium>) return PauliChannel(bell_probabilities(p.n, p.rho));
        else if constexpr (std::is_same_v<T, BellDiagonalMedium>) return PauliChannel(p.probs);
        else if constexpr (std::is_same_v<T, PhaseGateChainMedium>)
          return PauliChannel(phase_gate_chain_probs(p.n, p.theta));
        else return PauliChannel(bell_probabilities(p.n, permutation_mixture_state(p.n).as_dense().rho));
      },
      chi.payload());
}

ComplexMatrix apply_channel(const PauliChannel& channel, const ComplexMatrix& rho) {
  const int n = channel.n();
  if (n > kDenseQubitCutoff) throw SizeError("apply_channel: n exceeds dense cutoff");
  if (rho.rows() != qubit_dim(n) || rho.cols() != qubit_dim(n)) {
    throw DimensionError("apply_channel: state dimension " + std::to_string(rho.rows()) +
                         " does not match 2^" + std::to_string(n));
  }
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  channel.probs().for_each_nonzero(
      [&](const PauliString& k, double p) { out += p * conjugate_by_pauli(rho, k); });
  return out;
}

ResourceState cj_state(const PauliChannel& channel) { return ResourceState::bell_diagonal(channel.probs()); }

PauliString on_alice(const PauliString& k) { return interleave(k, PauliString::identity(k.size())); }

ComplexMatrix apply_channel_to_alice(const PauliChannel& channel, const ComplexMatrix& chi) {
  const int n = channel.n();
  if (n > kDensePairCutoff) throw SizeError("apply_channel_to_alice: n exceeds 2n-qubit cutoff");
  ComplexMatrix out = ComplexMatrix::Zero(chi.rows(), chi.cols());
  channel.probs().for_each_nonzero(
      [&](const PauliString& k, double p) { out += p * conjugate_by_pauli(chi, on_alice(k)); });
  return out;
}

ComplexMatrix cj_state_dense(const PauliChannel& channel) {
  const int n = channel.n();
  if (n < 1 || n > kDensePairCutoff) throw SizeError("cj_state_dense: n exceeds 2n-qubit cutoff");
  const ComplexVector psi0 = bell_state_string(PauliString::identity(n));
  return apply_channel_to_alice(channel, psi0 * psi0.adjoint());
}

double channel_entropy(const PauliChannel& channel) { return channel.probs().entropy_bits(); }

double entanglement_fidelity(const PauliChannel& channel) { return channel.probs().identity_weight(); }

PauliChannel compose(const PauliChannel& first, const PauliChannel& second) {
  if (first.n() != second.n()) {
    throw DimensionError("compose: channels act on " + std::to_string(first.n()) + " and " +
                         std::to_string(second.n()) + " qubits");
  }
  const ProbDist& a = first.probs();
  const ProbDist& b = second.probs();
  const int n = a.n();
  const double pairs = static_cast<double>(a.nonzero_count()) * static_cast<double>(b.nonzero_count());
  const bool both_z = a.storage() == ProbDist::Storage::ZSector && b.storage() == ProbDist::Storage::ZSector;
  if (both_z) return pairs <= std::ldexp(1.0, n) ? compose_sparse(a, b) : compose_z_sector(a, b);
  if (pairs <= std::ldexp(1.0, 2 * n) || n > kDenseProbCutoff) {
    if (pairs > 1e9) throw SizeError("compose: distributions too large for direct convolution");
    return compose_sparse(a, b);
  }
  return compose_dense(a, b);
}

ComplexMatrix environment_unitary(int n) {
  require_env_size(n, "environment_unitary");
  // One factor on (X_j, A_j, B_j).
  ComplexMatrix factor = ComplexMatrix::Zero(8, 8);
  for (int k = 0; k < 4; ++k) {
    const PauliIndex idx(k);
    const Eigen::Vector4cd b = bell_state(idx);
    factor += kron(ComplexMatrix(pauli_matrix(idx)), ComplexMatrix(b * b.adjoint()));
  }
  ComplexMatrix grouped = ComplexMatrix::Identity(1, 1);
  for (int j = 0; j < n; ++j) grouped = kron(grouped, factor);
  // Grouped order (X1,A1,B1,X2,...) -> (X1..Xn, A1,B1,...,An,Bn).
  std::vector<int> perm(3 * n);
  for (int j = 0; j < n; ++j) {
    perm[3 * j] = j;
    perm[3 * j + 1] = n + 2 * j;
    perm[3 * j + 2] = n + 2 * j + 1;
  }
  return permute_qubits(grouped, perm);
}

ComplexMatrix unitary_rep_apply(const ComplexMatrix& rho, const ResourceState& chi) {
  const ComplexMatrix joint = joint_environment_state(rho, chi, "unitary_rep_apply");
  const int n = chi.n();
  return partial_trace_second(joint, qubit_dim(n), qubit_dim(2 * n));
}

ComplexMatrix weak_complementary(const ComplexMatrix& rho, const ResourceState& chi) {
  const ComplexMatrix joint = joint_environment_state(rho, chi, "weak_complementary");
  const int n = chi.n();
  return partial_trace_first(joint, qubit_dim(n), qubit_dim(2 * n));
}

double coherent_info(const PauliChannel& channel, const ComplexMatrix& rho) {
  const int n = channel.n();
  if (n < 1 || n > kDensePairCutoff) throw SizeError("coherent_info: n exceeds 2n-qubit cutoff");
  validate_density_matrix(rho, qubit_dim(n), "input state");

  // |Psi_rho> = sum_i sqrt(l_i) |e_i>_X |i>_R, qubit order (X, R).
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (rho + rho.adjoint()));
  if (eig.info() != Eigen::Success) throw NumericalError("coherent_info: eigensolver failed");
  const Eigen::Index d = qubit_dim(n);
  ComplexVector purification = ComplexVector::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double l = std::max(0.0, eig.eigenvalues()(i));
    if (l <= 0.0) continue;
    for (Eigen::Index x = 0; x < d; ++x) purification(x * d + i) = std::sqrt(l) * eig.eigenvectors()(x, i);
  }
  const ComplexMatrix pure = purification * purification.adjoint();
  ComplexMatrix joint = ComplexMatrix::Zero(d * d, d * d);
  channel.probs().for_each_nonzero([&](const PauliString& k, double p) {
    const PauliString lifted(2 * n, k.xmask() << n, k.zmask() << n);
    joint += p * conjugate_by_pauli(pure, lifted);
  });
  const ComplexMatrix out = apply_channel(channel, rho);
  return von_neumann_entropy_bits(out) - von_neumann_entropy_bits(joint);
}

ProbDist probs_from_correlators(const CorrelatorOracle& oracle, int n) {
  if (n < 1 || n > kDenseProbCutoff) throw SizeError("probs_from_correlators: n out of range");
  constexpr double kRangeTol = 1e-10;
  const std::size_t len = std::size_t{1} << (2 * n);
  std::vector<double> f(len, 0.0);
  for (std::size_t g = 0; g < len; ++g) {
    const PauliString a = from_group_index(n, g);
    const double c = oracle(a, a);
    if (!std::isfinite(c) || std::abs(c) > 1.0 + kRangeTol) {
      throw ValidationError("correlator_range", "correlator for " + a.to_string() + " is " + std::to_string(c));
    }
    if (a.is_identity() && std::abs(c - 1.0) > kRangeTol) {
      throw ValidationError("correlator_identity", "identity correlator is " + std::to_string(c));
    }
    // Product of per-pair coefficients (+1, +1, -1, +1) for (s0, s1, s2, s3).
    const int y_count = __builtin_popcountll(a.xmask() & a.zmask());
    f[g] = (y_count & 1) ? -c : c;
  }
  // sigma_k sigma_a sigma_k = (-1)^{<k, a>} sigma_a with the symplectic form
  // <k, a> = x_k.z_a + z_k.x_a, so p_k is a Walsh transform of f read at the
  // swapped index (z_k, x_k).
  kernels::fwht(f);
  const double scale = std::ldexp(1.0, -2 * n);
  std::vector<double> p(len, 0.0);
  for (std::size_t idx = 0; idx < len; ++idx) {
    const PauliString k = PauliString::from_index(n, idx);
    const std::uint64_t swapped = (k.zmask() << n) | k.xmask();
    p[idx] = f[swapped] * scale;
  }
  return ProbDist::dense(n, std::move(p));
}

CorrelatorOracle correlator_oracle(const ResourceState& chi) {
  const int n = chi.n();
  ComplexMatrix medium = to_dense_matrix(chi);
  return [n, medium = std::move(medium)](const PauliString& a, const PauliString& b) {
    if (a.size() != n || b.size() != n) throw DimensionError("correlator: word length mismatch");
    return pauli_expectation(medium, interleave(a, b));
  };
}

}  // namespace telechan
