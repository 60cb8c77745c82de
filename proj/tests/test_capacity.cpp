#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support/oracles.hpp"
#include "telechan/capacity.hpp"
#include "telechan/errors.hpp"
#include "telechan/resource.hpp"

using namespace telechan;

namespace {

constexpr double kPi = std::numbers::pi;

// Closed form evaluated with lgamma-based binomials, independent of the
// exact-integer path.
double d1_reference(int n) {
  double s = 0.0;
  for (int j = 0; j <= n / 2; ++j) {
    const int k = n / 2 - j;
    const double log_binom = std::lgamma(n + 2.0) - std::lgamma(k + 1.0) - std::lgamma(n + 2.0 - k);
    s += (2.0 * j + 1) * (2.0 * j + 1) / (std::pow(2.0, n) * (n + 1)) * std::exp(log_binom) * std::log2(2.0 * j + 1);
  }
  return s;
}

}  // namespace

TEST(HashingRate, Examples) {
  EXPECT_EQ(hashing_rate(PauliChannel::identity(4)), 1.0);
  EXPECT_NEAR(hashing_rate(PauliChannel(ProbDist::uniform(2))), -1.0, 1e-12);
  EXPECT_NEAR(hashing_rate(channel_from_resource(ResourceState::phase_gate_chain(2, kPi))), 0.0, 1e-12);
  std::mt19937_64 rng(1);
  for (int rep = 0; rep < 10; ++rep) {
    const PauliChannel ch(ProbDist::dense(2, oracle::random_probs(16, rng, 0.5)));
    EXPECT_LE(hashing_rate(ch), 1.0);
  }
  EXPECT_EQ(clamp_rate(-0.3), 0.0);
  EXPECT_EQ(clamp_rate(1.2), 1.0);
}

TEST(PhaseGateCurve, EndpointsAndConvergenceMetadata) {
  const std::vector<double> thetas{0.0, 0.1 * kPi, kPi};
  const CapacityTable t = phase_gate_capacity_curve(thetas, 2, 12);
  EXPECT_EQ(t.rows.size(), 3u * 11u);
  for (const auto& row : t.rows) {
    if (row.theta == 0.0) {
      EXPECT_EQ(row.rate, 1.0);
    }
    if (row.theta == kPi && row.n == 2) {
      EXPECT_EQ(clamp_rate(row.rate), 0.0);
      EXPECT_NEAR(row.rate, 0.0, 1e-15);
    }
  }
  const auto& e0 = t.estimate_for(format_theta(0.0));
  EXPECT_TRUE(e0.converged);
  EXPECT_EQ(e0.gap, 0.0);
  // Even/odd n alternate for theta = pi: uniform at even n, rate 1/n at odd n.
  for (const auto& row : t.rows) {
    if (row.theta == kPi) EXPECT_NEAR(row.rate, row.n % 2 == 0 ? 0.0 : 1.0 / row.n, 1e-12) << row.n;
  }
  EXPECT_THROW(phase_gate_capacity_curve(thetas, 5, 5), Error);
  EXPECT_THROW(phase_gate_capacity_curve(thetas, 2, 27), SizeError);
}

TEST(PhaseGateCurve, RatesMatchOracleEntropy) {
  const std::vector<double> thetas{0.37};
  const CapacityTable t = phase_gate_capacity_curve(thetas, 3, 8);
  for (const auto& row : t.rows) {
    const double s = oracle::entropy_bits(oracle::phase_gate_probs(row.n, 0.37));
    EXPECT_NEAR(row.rate, 1.0 - s / row.n, 1e-10);
  }
}

TEST(PermD1, ClosedFormValues) {
  EXPECT_NEAR(perm_d1(2), 0.75 * std::log2(3.0), 1e-12);
  EXPECT_NEAR(perm_d1(2), 1.188722, 1e-6);
  EXPECT_NEAR(perm_d1(4), 1.617137, 1e-5);
  for (int n = 2; n <= 60; n += 2) {
    EXPECT_NEAR(perm_d1(n), d1_reference(n), 1e-9 * std::max(1.0, d1_reference(n))) << n;
    EXPECT_GE(perm_d1(n), 0.0);
  }
  EXPECT_THROW(perm_d1(3), DomainError);
  EXPECT_THROW(perm_d1(0), DomainError);
}

TEST(PermCapacityBound, DecreasingSequence) {
  std::vector<int> ns;
  for (int n = 2; n <= 20; n += 2) ns.push_back(n);
  const CapacityTable t = perm_capacity_bound(ns);
  ASSERT_EQ(t.rows.size(), ns.size());
  EXPECT_NEAR(t.rows[0].rate, 0.594361, 1e-6);
  // perm_d1(4) is pinned to 1e-5, so D1(4)/4 carries 2.5e-6.
  EXPECT_NEAR(t.rows[1].rate, 0.404284, 2.5e-6);
  for (std::size_t i = 1; i < t.rows.size(); ++i) EXPECT_LT(t.rows[i].rate, t.rows[i - 1].rate);
  EXPECT_TRUE(t.all_converged());
  // The closed form grows like log2(n)/2, so D1(n)/n decays as log(n)/n.
  EXPECT_NEAR(t.rows.back().rate, 0.13543475166, 1e-10);
  EXPECT_LT(perm_d1(1000) / 1000, 0.01);
  EXPECT_THROW(perm_capacity_bound(std::vector<int>{}), Error);
  EXPECT_THROW(perm_capacity_bound(std::vector<int>{2, 3}), DomainError);
}

TEST(CoherentInfoBound, Examples) {
  EXPECT_NEAR(coherent_info_bound(PauliChannel::identity(2), InputFamily::maximally_mixed()), 1.0, 1e-9);
  EXPECT_NEAR(coherent_info_bound(PauliChannel::identity(1), InputFamily::diagonal_grid(0.25)), 1.0, 1e-9);
  EXPECT_NEAR(coherent_info_bound(PauliChannel(ProbDist::uniform(1)), InputFamily::maximally_mixed()), -1.0, 1e-9);
  const PauliChannel dephase(ProbDist::dense(1, {0.5, 0, 0, 0.5}));
  EXPECT_NEAR(coherent_info_bound(dephase, InputFamily::maximally_mixed()), 0.0, 1e-9);
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 2; ++n) {
    const PauliChannel ch(ProbDist::dense(n, oracle::random_probs(std::size_t{1} << (2 * n), rng)));
    const double base = coherent_info_bound(ch, InputFamily::maximally_mixed());
    EXPECT_GE(coherent_info_bound(ch, InputFamily::diagonal_grid(0.1)), base - 1e-12);
  }
  EXPECT_THROW(coherent_info_bound(dephase, InputFamily::diagonal_grid(0.0)), Error);
  EXPECT_THROW(coherent_info_bound(dephase, InputFamily::diagonal_grid(1.5)), Error);
}

TEST(CapacityTable, CsvAndPlotdataFormat) {
  const std::vector<double> thetas{0.0, 0.5 * kPi};
  const CapacityTable t = phase_gate_capacity_curve(thetas, 3, 5);
  const std::string csv = to_csv(t);
  EXPECT_EQ(csv.rfind("theta,n,rate,converged_gap\n", 0), 0u);
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  EXPECT_EQ(lines, 1u + t.rows.size());
  EXPECT_NE(csv.find("0,3,1,0\n"), std::string::npos);
  EXPECT_EQ(to_csv(t), csv);
  const std::string plot = to_plotdata(t);
  EXPECT_EQ(plot[0], '#');
  std::size_t data_lines = 0;
  std::size_t pos = plot.find('\n') + 1;
  while (pos < plot.size()) {
    const std::size_t end = plot.find('\n', pos);
    const std::string line = plot.substr(pos, end - pos);
    int cols = 0;
    bool in_tok = false;
    for (char c : line) {
      const bool ws = c == ' ' || c == '\t';
      if (!ws && !in_tok) ++cols;
      in_tok = !ws;
    }
    EXPECT_EQ(cols, 2) << line;
    ++data_lines;
    pos = end + 1;
  }
  EXPECT_EQ(data_lines, thetas.size());
}
