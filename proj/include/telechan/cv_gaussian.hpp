#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace telechan::cv {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kSymmetryTol = 1e-10;
inline constexpr double kPhysicalTol = 1e-8;
inline constexpr double kPairingTol = 1e-8;

enum class Side { A, B };

/// Covariance matrix of m modes, vacuum = identity. Coordinates are ordered
/// (q_1..q_m, p_1..p_m). Media of 2n modes use the mode order
/// (A1, B1, ..., An, Bn); `sides` records the bipartition when present.
class CovMatrix {
 public:
  CovMatrix() = default;
  /// Checks symmetry only.
  CovMatrix(RealMatrix gamma, std::vector<Side> sides = {});

  /// Bipartite labelling for the interleaved (A1,B1,...) medium layout.
  static CovMatrix medium(RealMatrix gamma);
  static CovMatrix vacuum(int modes);

  int modes() const noexcept { return static_cast<int>(gamma_.rows() / 2); }
  const RealMatrix& matrix() const noexcept { return gamma_; }
  const std::vector<Side>& sides() const noexcept { return sides_; }
  bool is_bipartite() const noexcept { return !sides_.empty(); }

  static constexpr const char* kLayout = "qqpp-ABinterleaved";

 private:
  RealMatrix gamma_;
  std::vector<Side> sides_;
};

/// Index of q_mode / p_mode inside a (q..q p..p) layout of `modes` modes.
inline Eigen::Index q_index(int mode) { return mode; }
inline Eigen::Index p_index(int modes, int mode) { return modes + mode; }
/// Position of pair j's Alice / Bob mode in the interleaved medium layout.
inline int alice_mode(int pair) { return 2 * pair; }
inline int bob_mode(int pair) { return 2 * pair + 1; }

/// Omega = [[0, I], [-I, 0]] in the (q..q p..p) layout.
RealMatrix symplectic_form(int modes);

/// gamma + i Omega >= 0 within tol; throws ValidationError("physical") otherwise.
void validate_physical(const CovMatrix& gamma, double tol = kPhysicalTol);

/// Two-mode squeezed thermal state (modes A, B): a = nu cosh 2r on the
/// diagonal, -nu sinh 2r between q_A and q_B and +nu sinh 2r between p_A and p_B.
CovMatrix epr_cm(double r, double nu = 1.0);

/// gamma_E0(r, nu) repeated over n pairs in the interleaved medium layout.
CovMatrix epr_medium(int n, double r, double nu = 1.0);

/// nu * identity over 2n interleaved modes.
CovMatrix thermal_medium(int n, double nu);

/// Additive-noise (classical displacement) channel on n modes. The noise
/// covariance is indexed by z = (x_1..x_n, y_1..y_n).
struct GaussianNoiseChannel {
  int n = 0;
  RealMatrix noise;
};

/// Noise covariance N of the teleportation-induced displacement density: with
/// M = gamma_E0(r_src, nu_src)^{(+) n} + gamma, the exponent of f is
/// -1/2 z^T K z where K is the block of M^{-1} on Bob's quadratures; N = K^{-1}.
GaussianNoiseChannel noise_covariance(const CovMatrix& medium, double r_src, double nu_src = 1.0);

/// Zero-mean Gaussian density with covariance N, normalised to integrate to 1.
double f_density(const RealVector& z, const GaussianNoiseChannel& channel);

/// gamma_in + N.
CovMatrix cv_apply(const GaussianNoiseChannel& channel, const CovMatrix& gamma_in);

/// gamma_E0(r_probe, nu)^{(+) n} + N embedded on Bob's quadratures.
CovMatrix cv_cj_cm(const GaussianNoiseChannel& channel, double r_probe, double nu = 1.0);

/// Momentum sign flip on the modes of `side`.
CovMatrix partial_transpose_cm(const CovMatrix& gamma, Side side);

/// Ascending symplectic eigenvalues, one per mode. Requires a symmetric,
/// positive definite gamma.
RealVector symplectic_eigenvalues(const CovMatrix& gamma);

/// -sum log2(nu~_k) over partially transposed symplectic eigenvalues below 1.
double log_negativity(const CovMatrix& gamma, Side side = Side::B);

struct CvBoundReport {
  GaussianNoiseChannel channel;
  CovMatrix cj;
  RealVector cj_symplectic;
  RealVector pt_symplectic;
  double log_negativity = 0.0;
  double bound_per_mode = 0.0;
  double r_src = 0.0;
  double r_probe = 0.0;
};

/// log_negativity(cv_cj_cm(noise_covariance(medium, r_src), r_probe)) / n.
CvBoundReport cv_capacity_upper(const CovMatrix& medium, int n, double r_src, double r_probe);

}  // namespace telechan::cv
