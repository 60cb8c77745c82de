#pragma once

// Independent reference implementations used by the tests. Nothing here calls
// the library's structured paths; everything is brute force on small sizes.

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;

inline CMat pauli(int k) {
  CMat m(2, 2);
  const cd i(0.0, 1.0);
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -i, i, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

inline CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

/// sigma_{w0} (x) sigma_{w1} (x) ...
inline CMat pauli_word(const std::vector<int>& w) {
  CMat m = CMat::Identity(1, 1);
  for (int k : w) m = kron(m, pauli(k));
  return m;
}

/// Base-4 digits of idx, most significant first.
inline std::vector<int> digits(int n, std::uint64_t idx) {
  std::vector<int> w(n);
  for (int j = n - 1; j >= 0; --j) {
    w[j] = static_cast<int>(idx % 4);
    idx /= 4;
  }
  return w;
}

/// |Psi_k> = (sigma_k (x) I)(|00> + |11>)/sqrt 2.
inline CVec bell(int k) {
  CVec psi0 = CVec::Zero(4);
  psi0(0) = psi0(3) = 1.0 / std::sqrt(2.0);
  return kron(pauli(k), CMat::Identity(2, 2)) * psi0;
}

/// E_k on the interleaved layout (A1,B1,A2,B2,...), built from explicit projectors.
inline CMat bell_projector(const std::vector<int>& w) {
  CMat m = CMat::Identity(1, 1);
  for (int k : w) {
    const CVec b = bell(k);
    m = kron(m, b * b.adjoint());
  }
  return m;
}

/// p_k = Tr[E_k chi] for every word in base-4 order.
inline std::vector<double> bell_probs(int n, const CMat& chi) {
  const std::size_t count = std::size_t{1} << (2 * n);
  std::vector<double> p(count);
  for (std::size_t k = 0; k < count; ++k) p[k] = (bell_projector(digits(n, k)) * chi).trace().real();
  return p;
}

/// a_t = 2^-n sum_s (-1)^{t.s} e^{i theta c(s)}, c(s) = adjacent 11 pairs of the open chain.
inline std::vector<double> phase_gate_probs(int n, double theta) {
  const std::uint64_t d = std::uint64_t{1} << n;
  std::vector<double> p(d);
  for (std::uint64_t t = 0; t < d; ++t) {
    cd acc = 0.0;
    for (std::uint64_t s = 0; s < d; ++s) {
      int c = 0;
      for (int j = 0; j + 1 < n; ++j) c += ((s >> j) & 1U) && ((s >> (j + 1)) & 1U);
      const double sign = (std::popcount(t & s) % 2) ? -1.0 : 1.0;
      acc += sign * std::polar(1.0, theta * c);
    }
    acc /= static_cast<double>(d);
    p[t] = std::norm(acc);
  }
  return p;
}

/// p3[m] = sum_k p1[k] p2[k XOR m] over base-4 words, with the Pauli labels
/// multiplied digit by digit through the 2x2 matrices (phase dropped).
inline int pauli_product_label(int a, int b) {
  const CMat prod = pauli(a) * pauli(b);
  for (int c = 0; c < 4; ++c) {
    const cd ratio = prod(0, 0) != 0.0 ? prod(0, 0) / pauli(c)(0, 0) : prod(0, 1) / pauli(c)(0, 1);
    if (std::isfinite(ratio.real()) && (prod - ratio * pauli(c)).norm() < 1e-12) return c;
  }
  return -1;
}

inline std::vector<double> naive_compose(int n, const std::vector<double>& p1, const std::vector<double>& p2) {
  const std::size_t count = p1.size();
  std::vector<double> out(count, 0.0);
  for (std::size_t k = 0; k < count; ++k) {
    auto wk = digits(n, k);
    for (std::size_t l = 0; l < count; ++l) {
      auto wl = digits(n, l);
      std::size_t m = 0;
      for (int j = 0; j < n; ++j) m = 4 * m + static_cast<std::size_t>(pauli_product_label(wk[j], wl[j]));
      out[m] += p1[k] * p2[l];
    }
  }
  return out;
}

/// sum_k p_k sigma_k rho sigma_k with explicit matrices.
inline CMat apply_pauli(int n, const std::vector<double>& p, const CMat& rho) {
  CMat out = CMat::Zero(rho.rows(), rho.cols());
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0.0) continue;
    const CMat s = pauli_word(digits(n, k));
    out += p[k] * s * rho * s.adjoint();
  }
  return out;
}

inline double entropy_bits(const std::vector<double>& p) {
  double s = 0.0;
  for (double v : p)
    if (v > 0.0) s -= v * std::log2(v);
  return s;
}

inline CMat random_density(Eigen::Index d, std::mt19937_64& rng, Eigen::Index rank = -1) {
  if (rank < 0) rank = d;
  std::normal_distribution<double> g;
  CMat a(d, rank);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < rank; ++c) a(r, c) = cd(g(rng), g(rng));
  CMat rho = a * a.adjoint();
  return rho / rho.trace().real();
}

inline CMat random_pure(Eigen::Index d, std::mt19937_64& rng) { return random_density(d, rng, 1); }

inline std::vector<double> random_probs(std::size_t count, std::mt19937_64& rng, double sparsity = 0.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(count);
  double s = 0.0;
  for (auto& v : p) {
    v = u(rng) < sparsity ? 0.0 : -std::log(1.0 - u(rng));
    s += v;
  }
  if (s == 0.0) {
    p[0] = 1.0;
    s = 1.0;
  }
  for (auto& v : p) v /= s;
  return p;
}

inline double max_abs(const CMat& a, const CMat& b) { return (a - b).cwiseAbs().maxCoeff(); }

/// Qubit-local reduced state of pair j for the interleaved 2n-qubit layout.
inline CMat reduced_pair(int n, const CMat& chi, int pair) {
  const Eigen::Index d = Eigen::Index{1} << (2 * n);
  CMat out = CMat::Zero(4, 4);
  const int shift = 2 * (n - 1 - pair);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      const Eigen::Index rest_r = r & ~(Eigen::Index{3} << shift);
      const Eigen::Index rest_c = c & ~(Eigen::Index{3} << shift);
      if (rest_r != rest_c) continue;
      out((r >> shift) & 3, (c >> shift) & 3) += chi(r, c);
    }
  }
  return out;
}

// --- continuous variables -------------------------------------------------

/// Two-mode squeezed thermal CM, layout (qA, qB, pA, pB).
inline RMat epr(double r, double nu = 1.0) {
  const double a = nu * std::cosh(2 * r);
  const double b = nu * std::sinh(2 * r);
  RMat g = RMat::Zero(4, 4);
  g << a, -b, 0, 0,
      -b, a, 0, 0,
      0, 0, a, b,
      0, 0, b, a;
  return g;
}

/// Noise of one pair when medium and source are both EPR-type, in closed form:
/// each quadrature block is [[alpha, beta], [beta, alpha]] and the Bob-Bob
/// entry of its inverse is alpha / (alpha^2 - beta^2).
inline double pair_noise(double a_src, double b_src, double a_med, double b_med) {
  const double alpha = a_src + a_med;
  const double beta = b_src + b_med;
  return (alpha * alpha - beta * beta) / alpha;
}

/// Smallest partially transposed symplectic eigenvalue of a two-mode CM in
/// standard form: diagonal a (mode A) and b (mode B), correlations -c on the
/// q pair and +c on the p pair.
inline double two_mode_pt_min(double a, double b, double c) {
  const double delta = a * a + b * b + 2 * c * c;
  const double det = (a * b - c * c) * (a * b - c * c);
  // nu_-^2 nu_+^2 = det; taking nu_+ first avoids the cancellation in nu_-.
  const double plus_sq = (delta + std::sqrt(delta * delta - 4 * det)) / 2;
  return std::sqrt(det / plus_sq);
}

inline RMat omega(int modes) {
  RMat o = RMat::Zero(2 * modes, 2 * modes);
  o.topRightCorner(modes, modes) = RMat::Identity(modes, modes);
  o.bottomLeftCorner(modes, modes) = -RMat::Identity(modes, modes);
  return o;
}

/// S = exp(Omega H) for a random symmetric H: symplectic by construction.
inline RMat random_symplectic(int modes, std::mt19937_64& rng, double scale = 0.3) {
  std::normal_distribution<double> g(0.0, scale);
  RMat h(2 * modes, 2 * modes);
  for (int r = 0; r < 2 * modes; ++r)
    for (int c = 0; c < 2 * modes; ++c) h(r, c) = g(rng);
  h = (0.5 * (h + h.transpose())).eval();
  const RMat x = omega(modes) * h;
  // Taylor series with scaling and squaring.
  int squarings = 0;
  double norm = x.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.5) {
    norm /= 2;
    ++squarings;
  }
  const RMat y = x / std::pow(2.0, squarings);
  RMat term = RMat::Identity(2 * modes, 2 * modes);
  RMat s = term;
  for (int k = 1; k < 30; ++k) {
    term = term * y / k;
    s += term;
  }
  for (int i = 0; i < squarings; ++i) s = s * s;
  return s;
}

/// Williamson spectrum via the eigenvalues of i Omega gamma, sorted ascending.
inline std::vector<double> symplectic_spectrum(const RMat& gamma) {
  const int modes = static_cast<int>(gamma.rows() / 2);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es((cd(0, 1) * omega(modes) * gamma).cast<cd>());
  std::vector<double> all;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) all.push_back(es.eigenvalues()(i).real());
  std::sort(all.begin(), all.end());
  return std::vector<double>(all.begin() + modes, all.end());
}

}  // namespace oracle
