#include "telechan/cv_gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "telechan/errors.hpp"

namespace telechan::cv {

namespace {

void check_symmetric(const RealMatrix& m, const char* what) {
  if (m.rows() != m.cols()) throw ValidationError("square", std::string(what) + " is not square");
  if (m.size() == 0) return;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol * scale) {
    throw ValidationError("symmetric", std::string(what) + " asymmetry " + std::to_string(asym));
  }
}

std::vector<Side> interleaved_sides(int modes) {
  std::vector<Side> sides(modes);
  for (int m = 0; m < modes; ++m) sides[m] = (m % 2 == 0) ? Side::A : Side::B;
  return sides;
}

// Bob's quadrature indices of a 2n-mode medium, ordered (q_B1..q_Bn, p_B1..p_Bn).
std::vector<Eigen::Index> bob_indices(int n) {
  const int modes = 2 * n;
  std::vector<Eigen::Index> idx;
  idx.reserve(2 * n);
  for (int j = 0; j < n; ++j) idx.push_back(q_index(bob_mode(j)));
  for (int j = 0; j < n; ++j) idx.push_back(p_index(modes, bob_mode(j)));
  return idx;
}

void check_noise(const GaussianNoiseChannel& ch) {
  if (ch.n < 1 || ch.noise.rows() != 2 * ch.n || ch.noise.cols() != 2 * ch.n) {
    throw DimensionError("noise covariance must be 2n x 2n");
  }
}

}  // namespace

CovMatrix::CovMatrix(RealMatrix gamma, std::vector<Side> sides)
    : gamma_(std::move(gamma)), sides_(std::move(sides)) {
  check_symmetric(gamma_, "covariance matrix");
  if (gamma_.rows() % 2 != 0) throw ValidationError("dimension", "covariance matrix must be 2m x 2m");
  if (!sides_.empty() && static_cast<int>(sides_.size()) != modes()) {
    throw ValidationError("dimension", "side labels do not match mode count");
  }
  gamma_ = (0.5 * (gamma_ + gamma_.transpose())).eval();
}

CovMatrix CovMatrix::medium(RealMatrix gamma) {
  const auto modes = static_cast<int>(gamma.rows() / 2);
  if (modes % 2 != 0) throw ValidationError("dimension", "medium needs an even number of modes");
  return CovMatrix(std::move(gamma), interleaved_sides(modes));
}

CovMatrix CovMatrix::vacuum(int modes) {
  return CovMatrix(RealMatrix::Identity(2 * modes, 2 * modes));
}

RealMatrix symplectic_form(int modes) {
  RealMatrix omega = RealMatrix::Zero(2 * modes, 2 * modes);
  omega.topRightCorner(modes, modes) = RealMatrix::Identity(modes, modes);
  omega.bottomLeftCorner(modes, modes) = -RealMatrix::Identity(modes, modes);
  return omega;
}

void validate_physical(const CovMatrix& gamma, double tol) {
  const int m = gamma.modes();
  const Eigen::MatrixXcd h =
      gamma.matrix().cast<std::complex<double>>() +
      std::complex<double>(0.0, 1.0) * symplectic_form(m).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalError("validate_physical: eigensolver failed");
  const double min_eig = eig.eigenvalues().minCoeff();
  if (min_eig < -tol) {
    throw ValidationError("physical", "gamma + i Omega has eigenvalue " + std::to_string(min_eig));
  }
}

CovMatrix epr_cm(double r, double nu) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("epr_cm: squeezing r must be finite and >= 0");
  if (!(nu >= 1.0) || !std::isfinite(nu)) throw DomainError("epr_cm: thermal value nu must be >= 1");
  const double a = nu * std::cosh(2.0 * r);
  const double b = nu * std::sinh(2.0 * r);
  RealMatrix g = RealMatrix::Zero(4, 4);
  // Modes (A, B): rows 0,1 are q_A, q_B; rows 2,3 are p_A, p_B.
  g(0, 0) = g(1, 1) = g(2, 2) = g(3, 3) = a;
  g(0, 1) = g(1, 0) = -b;
  g(2, 3) = g(3, 2) = b;
  return CovMatrix::medium(std::move(g));
}

CovMatrix epr_medium(int n, double r, double nu) {
  if (n < 1) throw DomainError("epr_medium: n must be >= 1");
  const RealMatrix pair = epr_cm(r, nu).matrix();
  const int modes = 2 * n;
  RealMatrix g = RealMatrix::Zero(2 * modes, 2 * modes);
  for (int j = 0; j < n; ++j) {
    const int ma = alice_mode(j);
    const int mb = bob_mode(j);
    const Eigen::Index idx[4] = {q_index(ma), q_index(mb), p_index(modes, ma), p_index(modes, mb)};
    for (int r1 = 0; r1 < 4; ++r1) {
      for (int c1 = 0; c1 < 4; ++c1) g(idx[r1], idx[c1]) = pair(r1, c1);
    }
  }
  return CovMatrix::medium(std::move(g));
}

CovMatrix thermal_medium(int n, double nu) {
  if (n < 1) throw DomainError("thermal_medium: n must be >= 1");
  if (!(nu >= 1.0)) throw DomainError("thermal_medium: nu must be >= 1");
  return CovMatrix::medium(nu * RealMatrix::Identity(4 * n, 4 * n));
}

GaussianNoiseChannel noise_covariance(const CovMatrix& medium, double r_src, double nu_src) {
  const int modes = medium.modes();
  if (modes < 2 || modes % 2 != 0) throw DimensionError("noise_covariance: medium needs 2n modes");
  const int n = modes / 2;
  const RealMatrix m = epr_medium(n, r_src, nu_src).matrix() + medium.matrix();
  Eigen::LDLT<RealMatrix> ldlt(m);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      ldlt.vectorD().cwiseAbs().minCoeff() < 1e-300) {
    throw NumericalError("noise_covariance: gamma_E0 + gamma is singular (degenerate resource)");
  }
  const RealMatrix m_inv = ldlt.solve(RealMatrix::Identity(m.rows(), m.cols()));
  const auto z = bob_indices(n);
  RealMatrix k(2 * n, 2 * n);
  for (int r1 = 0; r1 < 2 * n; ++r1) {
    for (int c1 = 0; c1 < 2 * n; ++c1) k(r1, c1) = m_inv(z[r1], z[c1]);
  }
  k = (0.5 * (k + k.transpose())).eval();
  Eigen::LDLT<RealMatrix> kdec(k);
  if (kdec.info() != Eigen::Success || !kdec.isPositive()) {
    throw NumericalError("noise_covariance: quadratic form is not positive definite");
  }
  RealMatrix noise = kdec.solve(RealMatrix::Identity(2 * n, 2 * n));
  noise = (0.5 * (noise + noise.transpose())).eval();
  return {n, std::move(noise)};
}

double f_density(const RealVector& z, const GaussianNoiseChannel& channel) {
  check_noise(channel);
  if (z.size() != 2 * channel.n) throw DimensionError("f_density: z must have 2n entries");
  Eigen::LLT<RealMatrix> llt(channel.noise);
  if (llt.info() != Eigen::Success) throw NumericalError("f_density: noise covariance is singular");
  const RealMatrix& l = llt.matrixL();
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) log_det += 2.0 * std::log(l(i, i));
  const RealVector w = llt.matrixL().solve(z);
  const double quad = w.squaredNorm();
  return std::exp(-0.5 * quad - 0.5 * log_det - channel.n * std::log(2.0 * std::numbers::pi));
}

CovMatrix cv_apply(const GaussianNoiseChannel& channel, const CovMatrix& gamma_in) {
  check_noise(channel);
  if (gamma_in.modes() != channel.n) throw DimensionError("cv_apply: mode count mismatch");
  return CovMatrix(gamma_in.matrix() + channel.noise, gamma_in.sides());
}

CovMatrix cv_cj_cm(const GaussianNoiseChannel& channel, double r_probe, double nu) {
  check_noise(channel);
  if (!std::isfinite(r_probe)) throw DomainError("cv_cj_cm: probe squeezing must be finite");
  const int n = channel.n;
  RealMatrix g = epr_medium(n, r_probe, nu).matrix();
  const auto z = bob_indices(n);
  for (int r1 = 0; r1 < 2 * n; ++r1) {
    for (int c1 = 0; c1 < 2 * n; ++c1) g(z[r1], z[c1]) += channel.noise(r1, c1);
  }
  return CovMatrix::medium(std::move(g));
}

CovMatrix partial_transpose_cm(const CovMatrix& gamma, Side side) {
  if (!gamma.is_bipartite()) throw DomainError("partial_transpose_cm: modes carry no A/B labels");
  const int m = gamma.modes();
  RealVector p = RealVector::Ones(2 * m);
  for (int mode = 0; mode < m; ++mode) {
    if (gamma.sides()[mode] == side) p(p_index(m, mode)) = -1.0;
  }
  const RealMatrix flipped = p.asDiagonal() * gamma.matrix() * p.asDiagonal();
  return CovMatrix(flipped, gamma.sides());
}

RealVector symplectic_eigenvalues(const CovMatrix& gamma) {
  const int m = gamma.modes();
  // gamma^{1/2} Omega gamma^{1/2} is antisymmetric with eigenvalues +-i nu_k,
  // so each nu_k appears twice among its singular values. Taking singular
  // values directly keeps the small nu_k accurate next to large ones.
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(gamma.matrix());
  if (eig.info() != Eigen::Success) throw NumericalError("symplectic_eigenvalues: eigensolver failed");
  if (eig.eigenvalues().minCoeff() <= 0.0) {
    throw ValidationError("positive_definite", "symplectic spectrum needs a positive definite matrix");
  }
  const RealMatrix root =
      eig.eigenvectors() * eig.eigenvalues().cwiseSqrt().asDiagonal() * eig.eigenvectors().transpose();
  const RealMatrix a = root * symplectic_form(m) * root;
  Eigen::JacobiSVD<RealMatrix> svd(a);
  RealVector ev = svd.singularValues();
  std::sort(ev.data(), ev.data() + ev.size());
  RealVector nu(m);
  for (int k = 0; k < m; ++k) {
    const double lo = ev(2 * k);
    const double hi = ev(2 * k + 1);
    if (std::abs(hi - lo) > kPairingTol * std::max(1.0, std::abs(hi))) {
      throw NumericalError("symplectic_eigenvalues: unpaired spectrum (" + std::to_string(lo) + ", " +
                           std::to_string(hi) + ")");
    }
    nu(k) = 0.5 * (lo + hi);
  }
  return nu;
}

double log_negativity(const CovMatrix& gamma, Side side) {
  const RealVector nu = symplectic_eigenvalues(partial_transpose_cm(gamma, side));
  double total = 0.0;
  for (double v : nu) {
    if (v < 1.0) total -= std::log2(v);
  }
  return total;
}

CvBoundReport cv_capacity_upper(const CovMatrix& medium, int n, double r_src, double r_probe) {
  if (medium.modes() != 2 * n) throw DimensionError("cv_capacity_upper: medium must have 2n modes");
  CvBoundReport rep;
  rep.r_src = r_src;
  rep.r_probe = r_probe;
  rep.channel = noise_covariance(medium, r_src);
  rep.cj = cv_cj_cm(rep.channel, r_probe);
  rep.cj_symplectic = symplectic_eigenvalues(rep.cj);
  rep.pt_symplectic = symplectic_eigenvalues(partial_transpose_cm(rep.cj, Side::B));
  rep.log_negativity = log_negativity(rep.cj, Side::B);
  rep.bound_per_mode = rep.log_negativity / n;
  return rep;
}

}  // namespace telechan::cv
