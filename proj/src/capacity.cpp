#include "telechan/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include <boost/multiprecision/cpp_int.hpp>

#include "telechan/errors.hpp"
#include "telechan/linalg.hpp"

namespace telechan {

namespace {

std::string format_g12(double v) {
  char buf[64];
  if (v == 0.0) v = 0.0;  // no "-0"
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

boost::multiprecision::cpp_int binomial(int m, int k) {
  boost::multiprecision::cpp_int c = 1;
  if (k < 0 || k > m) return 0;
  k = std::min(k, m - k);
  for (int i = 0; i < k; ++i) {
    c *= (m - i);
    c /= (i + 1);
  }
  return c;
}

// Exact big integer -> long double, scaled by 2^-shift without overflow.
long double scaled(const boost::multiprecision::cpp_int& v, int shift) {
  const auto bits = static_cast<int>(boost::multiprecision::msb(v)) + 1;
  const int drop = std::max(0, bits - 64);
  const boost::multiprecision::cpp_int top = v >> drop;
  const auto mantissa = static_cast<long double>(static_cast<unsigned long long>(top));
  return std::ldexp(mantissa, drop - shift);
}

}  // namespace

bool CapacityTable::all_converged() const {
  return std::all_of(estimates.begin(), estimates.end(),
                     [](const CapacityEstimate& e) { return e.converged; });
}

const CapacityEstimate& CapacityTable::estimate_for(const std::string& id) const {
  for (const auto& e : estimates) {
    if (e.id == id) return e;
  }
  throw DomainError("no capacity estimate for '" + id + "'");
}

double clamp_rate(double rate) { return std::clamp(rate, 0.0, 1.0); }

double hashing_rate(const PauliChannel& channel) {
  return 1.0 - channel_entropy(channel) / static_cast<double>(channel.n());
}

std::string format_number(double v) { return format_g12(v); }

std::string format_theta(double theta) { return format_g12(theta); }

CapacityTable phase_gate_capacity_curve(std::span<const double> thetas, int n_min, int n_max,
                                        double tolerance) {
  if (thetas.empty()) throw DomainError("phase_gate_capacity_curve: empty theta list");
  if (n_min < 1 || n_min >= n_max || n_max > kPhaseGateCutoff) {
    throw SizeError("phase_gate_capacity_curve: need 1 <= n_min < n_max <= " +
                    std::to_string(kPhaseGateCutoff));
  }
  if (!(tolerance > 0.0)) throw DomainError("phase_gate_capacity_curve: tolerance must be positive");

  CapacityTable table;
  table.param_name = "theta";
  table.tolerance = tolerance;
  for (double theta : thetas) {
    const std::string id = format_theta(theta);
    double previous = std::numeric_limits<double>::quiet_NaN();
    double last = previous;
    for (int n = n_min; n <= n_max; ++n) {
      const double rate = hashing_rate(PauliChannel(phase_gate_chain_probs(n, theta)));
      table.rows.push_back({id, theta, n, rate});
      previous = last;
      last = rate;
    }
    const double gap = std::abs(last - previous);
    table.estimates.push_back({id, theta, n_max, last, gap, gap < tolerance});
  }
  return table;
}

double perm_d1(int n) {
  if (n < 2 || n % 2 != 0) throw DomainError("perm_d1: n must be even and >= 2, got " + std::to_string(n));
  long double total = 0.0L;
  const int half = n / 2;
  for (int j = 1; j <= half; ++j) {  // j = 0 contributes log2(1) = 0
    const long double weight = scaled(binomial(n + 1, half - j), n) / static_cast<long double>(n + 1);
    const long double odd = 2.0L * j + 1.0L;
    total += odd * odd * weight * std::log2(odd);
  }
  return static_cast<double>(total);
}

CapacityTable perm_capacity_bound(std::span<const int> ns) {
  if (ns.empty()) throw DomainError("perm_capacity_bound: empty n list");
  CapacityTable table;
  table.param_name = "resource";
  bool decreasing = true;
  double previous = std::numeric_limits<double>::infinity();
  int last_n = 0;
  for (int n : ns) {
    if (n <= last_n) throw DomainError("perm_capacity_bound: n values must be strictly increasing");
    const double rate = perm_d1(n) / n;
    table.rows.push_back({"perm", std::numeric_limits<double>::quiet_NaN(), n, rate});
    decreasing = decreasing && rate < previous;
    previous = rate;
    last_n = n;
  }
  const double gap = table.rows.size() > 1
                         ? std::abs(table.rows.back().rate - table.rows[table.rows.size() - 2].rate)
                         : std::numeric_limits<double>::quiet_NaN();
  table.estimates.push_back(
      {"perm", std::numeric_limits<double>::quiet_NaN(), last_n, table.rows.back().rate, gap, decreasing});
  return table;
}

double coherent_info_bound(const PauliChannel& channel, const InputFamily& family) {
  const int n = channel.n();
  if (n < 1 || n > kDensePairCutoff) throw SizeError("coherent_info_bound: n exceeds 2n-qubit cutoff");
  const Eigen::Index dim = Eigen::Index{1} << n;
  const ComplexMatrix mixed = ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
  double best = coherent_info(channel, mixed);

  switch (family.kind) {
    case InputFamily::Kind::MaximallyMixedOnly: break;
    case InputFamily::Kind::DiagonalProductGrid: {
      if (!(family.step > 0.0 && family.step <= 1.0)) {
        throw DomainError("coherent_info_bound: grid step must lie in (0, 1]");
      }
      std::vector<double> grid;
      for (int i = 0; i * family.step < 1.0 - 1e-12; ++i) grid.push_back(i * family.step);
      grid.push_back(1.0);
      const std::size_t g = grid.size();
      std::size_t combos = 1;
      for (int j = 0; j < n; ++j) {
        combos *= g;
        if (combos > (1U << 20)) throw SizeError("coherent_info_bound: grid too fine");
      }
      for (std::size_t c = 0; c < combos; ++c) {
        Eigen::VectorXd diag = Eigen::VectorXd::Ones(1);
        std::size_t rest = c;
        for (int j = 0; j < n; ++j) {
          const double q = grid[rest % g];
          rest /= g;
          Eigen::VectorXd next(diag.size() * 2);
          next << diag * q, diag * (1.0 - q);
          diag = std::move(next);
        }
        const ComplexMatrix rho = diag.cast<Complex>().asDiagonal();
        best = std::max(best, coherent_info(channel, rho));
      }
      break;
    }
    default: throw DomainError("coherent_info_bound: unknown input family");
  }
  return best / static_cast<double>(n);
}

std::string to_csv(const CapacityTable& table) {
  std::string out = table.param_name + ",n,rate,converged_gap\n";
  for (const auto& row : table.rows) {
    double gap = std::numeric_limits<double>::quiet_NaN();
    for (const auto& e : table.estimates) {
      if (e.id == row.id) gap = e.gap;
    }
    out += row.id + "," + std::to_string(row.n) + "," + format_g12(clamp_rate(row.rate)) + "," +
           format_g12(gap) + "\n";
  }
  return out;
}

std::string to_plotdata(const CapacityTable& table) {
  std::string out = "# theta/pi rate_at_n_max\n";
  for (const auto& e : table.estimates) {
    out += format_g12(e.theta / std::numbers::pi) + " " + format_g12(clamp_rate(e.rate)) + "\n";
  }
  return out;
}

}  // namespace telechan
