#pragma once

#include <span>
#include <string>
#include <vector>

#include "telechan/channel.hpp"

namespace telechan {

/// Default |Q(n_max) - Q(n_max - 1)| tolerance for convergence reports.
inline constexpr double kDefaultConvergenceTol = 1e-3;

struct CapacityRow {
  std::string id;  // formatted theta, or a resource name
  double theta;    // radians; NaN for non-parametric resources
  int n;
  double rate;     // raw value; may be negative for hashing rates
};

/// Finite-n estimate for one group of rows (one theta or one resource).
struct CapacityEstimate {
  std::string id;
  double theta;
  int n_max;
  double rate;  // value at n_max
  double gap;   // |rate(n_max) - rate(previous n)|
  bool converged;
};

struct CapacityTable {
  std::string param_name = "theta";
  double tolerance = kDefaultConvergenceTol;
  std::vector<CapacityRow> rows;
  std::vector<CapacityEstimate> estimates;

  bool all_converged() const;
  const CapacityEstimate& estimate_for(const std::string& id) const;
};

/// Rates are reported clamped to [0, 1] in presentation layers.
double clamp_rate(double rate);

/// 1 - S(p)/n in bits per channel use; unclamped.
double hashing_rate(const PauliChannel& channel);

/// Q^(n) = 1 - S/n of the phase-gate chain for each theta and each n in
/// [n_min, n_max]. Cells run sequentially; each uses the parallel kernels.
CapacityTable phase_gate_capacity_curve(std::span<const double> thetas, int n_min, int n_max,
                                        double tolerance = kDefaultConvergenceTol);

/// Closed-form one-way distillable entanglement (e-bits) of the n-pair
/// permutation mixture, n even:
///   D1 = sum_{j=0}^{n/2} (2j+1)^2 / (2^n (n+1)) * C(n+1, n/2-j) * log2(2j+1).
double perm_d1(int n);

/// Rows (n, D1(n)/n). `estimates` holds the last value; `converged` is set
/// when the sequence is strictly decreasing over the requested range.
CapacityTable perm_capacity_bound(std::span<const int> ns);

struct InputFamily {
  enum class Kind { MaximallyMixedOnly, DiagonalProductGrid };
  Kind kind = Kind::MaximallyMixedOnly;
  /// Grid step for the diagonal weights q_j of rho = (x)_j diag(q_j, 1 - q_j).
  double step = 0.0;

  static InputFamily maximally_mixed() { return {}; }
  static InputFamily diagonal_grid(double step) { return {Kind::DiagonalProductGrid, step}; }
};

/// max_{rho in family} J(rho, Lambda)/n. The family is a restriction of the
/// full maximisation, so this is an estimate from below of that maximum.
/// The maximally mixed input is always part of the family.
double coherent_info_bound(const PauliChannel& channel, const InputFamily& family);

/// %.12g in the C locale.
std::string format_number(double v);
std::string format_theta(double theta);

/// CSV `theta,n,rate,converged_gap` (12 significant digits, ',' separated).
std::string to_csv(const CapacityTable& table);
/// Whitespace-separated `theta/pi  rate(n_max)` rows with a '#' header.
std::string to_plotdata(const CapacityTable& table);

}  // namespace telechan
