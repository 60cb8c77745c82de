#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"
#include "telechan/channel.hpp"
#include "telechan/errors.hpp"
#include "telechan/linalg.hpp"
#include "telechan/resource.hpp"

using namespace telechan;

namespace {

constexpr double kTol = 1e-10;

PauliChannel random_channel(int n, std::mt19937_64& rng, double sparsity = 0.0) {
  return PauliChannel(ProbDist::dense(n, oracle::random_probs(std::size_t{1} << (2 * n), rng, sparsity)));
}

std::vector<double> values(const PauliChannel& c) { return c.probs().to_dense().values(); }

ComplexMatrix dim_identity(int n) {
  const Eigen::Index d = Eigen::Index{1} << n;
  return ComplexMatrix::Identity(d, d);
}

}  // namespace

TEST(ApplyChannel, Examples) {
  std::mt19937_64 rng(1);
  const ComplexMatrix rho = oracle::random_density(4, rng);
  EXPECT_LT(oracle::max_abs(apply_channel(PauliChannel::identity(2), rho), rho), kTol);
  const ComplexMatrix r1 = oracle::random_density(2, rng);
  EXPECT_LT(oracle::max_abs(apply_channel(PauliChannel(ProbDist::uniform(1)), r1), dim_identity(1) / 2.0), kTol);
  const ComplexMatrix plus = ComplexMatrix::Constant(2, 2, 0.5);
  const PauliChannel dephase(ProbDist::dense(1, {0.5, 0, 0, 0.5}));
  EXPECT_LT(oracle::max_abs(apply_channel(dephase, plus), dim_identity(1) / 2.0), kTol);
  EXPECT_THROW(apply_channel(PauliChannel::identity(2), r1), Error);
}

TEST(ApplyChannel, MatchesOracleAndPreservesProperties) {
  std::mt19937_64 rng(2);
  for (int n = 1; n <= 3; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      const PauliChannel ch = random_channel(n, rng, 0.3);
      const ComplexMatrix rho = oracle::random_density(Eigen::Index{1} << n, rng);
      const ComplexMatrix out = apply_channel(ch, rho);
      EXPECT_LT(oracle::max_abs(out, oracle::apply_pauli(n, values(ch), rho)), kTol);
      EXPECT_LT(std::abs(out.trace().real() - 1.0), 1e-12);
      EXPECT_LT(oracle::max_abs(out, out.adjoint()), 1e-12);
      EXPECT_GE(hermitian_eigenvalues(out).minCoeff(), -1e-10);
      const ComplexMatrix mixed = dim_identity(n) / static_cast<double>(1 << n);
      EXPECT_LT(oracle::max_abs(apply_channel(ch, mixed), mixed), 1e-12);
    }
  }
}

TEST(ApplyChannel, StructuredSectorIteration) {
  const PauliChannel ch = channel_from_resource(ResourceState::phase_gate_chain(3, 1.1));
  std::mt19937_64 rng(4);
  const ComplexMatrix rho = oracle::random_density(8, rng);
  EXPECT_LT(oracle::max_abs(apply_channel(ch, rho), oracle::apply_pauli(3, values(ch), rho)), kTol);
}

TEST(CjState, TwoPathsAgree) {
  std::mt19937_64 rng(6);
  EXPECT_LT(oracle::max_abs(cj_state_dense(PauliChannel::identity(1)), oracle::bell_projector({0})), kTol);
  EXPECT_LT(oracle::max_abs(cj_state_dense(PauliChannel(ProbDist::uniform(1))), ComplexMatrix::Identity(4, 4) / 4.0), kTol);
  for (int n = 1; n <= 2; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      const PauliChannel ch = random_channel(n, rng);
      const ComplexMatrix literal = cj_state_dense(ch);
      const ComplexMatrix weighted = to_dense_matrix(cj_state(ch));
      EXPECT_LT(oracle::max_abs(literal, weighted), kTol);
      const auto p = values(ch);
      ComplexMatrix sum = ComplexMatrix::Zero(literal.rows(), literal.cols());
      for (std::size_t k = 0; k < p.size(); ++k) sum += p[k] * oracle::bell_projector(oracle::digits(n, k));
      EXPECT_LT(oracle::max_abs(literal, sum), kTol);
      const auto diag = oracle::bell_probs(n, literal);
      for (std::size_t k = 0; k < p.size(); ++k) EXPECT_NEAR(diag[k], p[k], kTol);
      EXPECT_NEAR(diag[0], entanglement_fidelity(ch), kTol);
    }
  }
}

TEST(ChannelEntropy, Examples) {
  EXPECT_EQ(channel_entropy(PauliChannel::identity(3)), 0.0);
  EXPECT_NEAR(channel_entropy(PauliChannel(ProbDist::uniform(2))), 4.0, 1e-12);
  EXPECT_EQ(entanglement_fidelity(PauliChannel::identity(2)), 1.0);
  EXPECT_NEAR(entanglement_fidelity(PauliChannel(ProbDist::uniform(2))), 1.0 / 16.0, 1e-15);
  std::mt19937_64 rng(8);
  const PauliChannel ch = random_channel(2, rng);
  EXPECT_NEAR(channel_entropy(ch), von_neumann_entropy_bits(cj_state_dense(ch)), 1e-9);
}

TEST(Compose, Examples) {
  std::mt19937_64 rng(10);
  const PauliChannel ch = random_channel(2, rng);
  const auto a = values(compose(ch, PauliChannel::identity(2)));
  const auto b = values(ch);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], kTol);
  const PauliChannel dephase(ProbDist::dense(1, {0.5, 0, 0, 0.5}));
  const auto dd = values(compose(dephase, dephase));
  EXPECT_NEAR(dd[0], 0.5, kTol);
  EXPECT_NEAR(dd[3], 0.5, kTol);
  EXPECT_THROW(compose(PauliChannel::identity(1), PauliChannel::identity(2)), Error);
}

TEST(Compose, MatchesNaiveConvolutionAllPaths) {
  std::mt19937_64 rng(12);
  for (int n = 1; n <= 3; ++n) {
    for (double sparsity : {0.0, 0.9}) {
      const PauliChannel a = random_channel(n, rng, sparsity);
      const PauliChannel b = random_channel(n, rng, sparsity);
      const auto ref = oracle::naive_compose(n, values(a), values(b));
      const auto ab = values(compose(a, b));
      const auto ba = values(compose(b, a));
      for (std::size_t k = 0; k < ref.size(); ++k) {
        EXPECT_NEAR(ab[k], ref[k], kTol);
        EXPECT_NEAR(ba[k], ab[k], kTol);
      }
    }
  }
  // Z-sector inputs at a size where the sparse path cannot be used.
  const PauliChannel z1 = channel_from_resource(ResourceState::phase_gate_chain(3, 0.4));
  const PauliChannel z2 = channel_from_resource(ResourceState::phase_gate_chain(3, 2.0));
  const auto zref = oracle::naive_compose(3, values(z1), values(z2));
  const PauliChannel zc = compose(z1, z2);
  const auto zv = values(zc);
  for (std::size_t k = 0; k < zref.size(); ++k) EXPECT_NEAR(zv[k], zref[k], kTol);
  const PauliChannel big1 = channel_from_resource(ResourceState::phase_gate_chain(16, 0.4));
  const PauliChannel big2 = channel_from_resource(ResourceState::phase_gate_chain(16, 1.3));
  const PauliChannel big = compose(big1, big2);
  EXPECT_EQ(big.probs().storage(), ProbDist::Storage::ZSector);
  EXPECT_NEAR(big.probs().total(), 1.0, 1e-12);
}

TEST(Compose, OperationalEquivalence) {
  std::mt19937_64 rng(14);
  for (int rep = 0; rep < 5; ++rep) {
    const PauliChannel a = random_channel(2, rng);
    const PauliChannel b = random_channel(2, rng);
    const ComplexMatrix rho = oracle::random_density(4, rng);
    EXPECT_LT(oracle::max_abs(apply_channel(compose(a, b), rho), apply_channel(b, apply_channel(a, rho))), kTol);
  }
}

TEST(Compose, ChannelOnAliceHalfOfMedium) {
  std::mt19937_64 rng(16);
  for (int n = 1; n <= 2; ++n) {
    const PauliChannel l1 = random_channel(n, rng);
    const ComplexMatrix chi2 = oracle::random_density(Eigen::Index{1} << (2 * n), rng);
    const PauliChannel l2 = channel_from_resource(ResourceState::dense(n, chi2));
    const ComplexMatrix chi3 = apply_channel_to_alice(l1, chi2);
    const auto lhs = oracle::bell_probs(n, chi3);
    const auto rhs = values(compose(l1, l2));
    for (std::size_t k = 0; k < lhs.size(); ++k) EXPECT_NEAR(lhs[k], rhs[k], kTol);
  }
}

TEST(UnitaryRep, MatchesChannel) {
  std::mt19937_64 rng(18);
  const ComplexMatrix e0 = oracle::bell_projector({0});
  const ComplexMatrix r1 = oracle::random_density(2, rng);
  EXPECT_LT(oracle::max_abs(unitary_rep_apply(r1, ResourceState::dense(1, e0)), r1), kTol);
  EXPECT_LT(oracle::max_abs(unitary_rep_apply(r1, ResourceState::dense(1, ComplexMatrix::Identity(4, 4) / 4.0)),
                            dim_identity(1) / 2.0),
            kTol);
  for (int n = 1; n <= 2; ++n) {
    for (int rep = 0; rep < 4; ++rep) {
      const ResourceState chi = ResourceState::dense(n, oracle::random_density(Eigen::Index{1} << (2 * n), rng));
      const ComplexMatrix rho = oracle::random_density(Eigen::Index{1} << n, rng);
      EXPECT_LT(oracle::max_abs(unitary_rep_apply(rho, chi), apply_channel(channel_from_resource(chi), rho)), kTol);
    }
  }
  const ComplexMatrix u = environment_unitary(2);
  EXPECT_LT(oracle::max_abs(u * u.adjoint(), ComplexMatrix::Identity(64, 64)), kTol);
  EXPECT_THROW(environment_unitary(3), SizeError);
}

TEST(WeakComplementary, BellDiagonalMediumIsReproduced) {
  std::mt19937_64 rng(20);
  for (int n = 1; n <= 2; ++n) {
    const Eigen::Index d = Eigen::Index{1} << (2 * n);
    const ComplexMatrix bd = to_dense_matrix(bell_twirl(ResourceState::dense(n, oracle::random_density(d, rng))));
    const ResourceState chi = ResourceState::dense(n, bd);
    const ComplexMatrix r1 = oracle::random_density(Eigen::Index{1} << n, rng);
    const ComplexMatrix r2 = oracle::random_density(Eigen::Index{1} << n, rng);
    const ComplexMatrix o1 = weak_complementary(r1, chi);
    EXPECT_LT(oracle::max_abs(o1, bd), kTol);
    EXPECT_LT(oracle::max_abs(o1, weak_complementary(r2, chi)), kTol);
  }
  const ComplexMatrix e0 = oracle::bell_projector({0});
  std::mt19937_64 rng2(21);
  EXPECT_LT(oracle::max_abs(weak_complementary(oracle::random_density(2, rng2), ResourceState::dense(1, e0)), e0), kTol);
}

TEST(WeakComplementary, GeneralMediumKeepsBellWeights) {
  // For a medium with Bell-basis coherences the environment output depends on
  // rho; it equals the twirl at the maximally mixed input, and its Bell
  // weights equal p_k for every input.
  std::mt19937_64 rng(22);
  for (int n = 1; n <= 2; ++n) {
    const Eigen::Index d = Eigen::Index{1} << (2 * n);
    const ResourceState chi = ResourceState::dense(n, oracle::random_density(d, rng));
    const ComplexMatrix twirl = to_dense_matrix(bell_twirl(chi));
    const ComplexMatrix mixed = dim_identity(n) / static_cast<double>(1 << n);
    EXPECT_LT(oracle::max_abs(weak_complementary(mixed, chi), twirl), kTol);
    const ComplexMatrix rho = oracle::random_density(Eigen::Index{1} << n, rng);
    const auto weights = oracle::bell_probs(n, weak_complementary(rho, chi));
    const auto p = oracle::bell_probs(n, chi.as_dense().rho);
    for (std::size_t k = 0; k < p.size(); ++k) EXPECT_NEAR(weights[k], p[k], kTol);
  }
}

TEST(CoherentInfo, Examples) {
  std::mt19937_64 rng(24);
  for (int n = 1; n <= 2; ++n) {
    const ComplexMatrix mixed = dim_identity(n) / static_cast<double>(1 << n);
    EXPECT_NEAR(coherent_info(PauliChannel::identity(n), mixed), n, 1e-9);
    const ComplexMatrix pure = oracle::random_pure(Eigen::Index{1} << n, rng);
    EXPECT_NEAR(coherent_info(random_channel(n, rng), pure), 0.0, 1e-9);
    const PauliChannel ch = random_channel(n, rng);
    EXPECT_NEAR(coherent_info(ch, mixed), n - channel_entropy(ch), 1e-9);
  }
  EXPECT_NEAR(coherent_info(PauliChannel(ProbDist::uniform(1)), dim_identity(1) / 2.0), -1.0, 1e-9);
}

TEST(CoherentInfo, BruteForcePurification) {
  std::mt19937_64 rng(26);
  const int n = 1;
  const PauliChannel ch = random_channel(n, rng);
  const ComplexMatrix rho = oracle::random_density(2, rng);
  // |Psi_rho> = sum_i sqrt(l_i) |e_i>_X |i>_R
  Eigen::SelfAdjointEigenSolver<oracle::CMat> eig(rho);
  oracle::CVec psi = oracle::CVec::Zero(4);
  for (int i = 0; i < 2; ++i) {
    oracle::CVec ri = oracle::CVec::Zero(2);
    ri(i) = 1.0;
    psi += std::sqrt(std::max(0.0, eig.eigenvalues()(i))) * oracle::kron(eig.eigenvectors().col(i), ri);
  }
  const oracle::CMat joint = psi * psi.adjoint();
  const auto p = values(ch);
  oracle::CMat out = oracle::CMat::Zero(4, 4);
  for (int k = 0; k < 4; ++k) {
    const oracle::CMat s = oracle::kron(oracle::pauli(k), oracle::pauli(0));
    out += p[k] * s * joint * s;
  }
  const double expected = von_neumann_entropy_bits(oracle::apply_pauli(1, p, rho)) - von_neumann_entropy_bits(out);
  EXPECT_NEAR(coherent_info(ch, rho), expected, 1e-9);
}

TEST(Correlators, ExpansionMatchesTwirl) {
  std::mt19937_64 rng(28);
  const auto delta = probs_from_correlators(correlator_oracle(ResourceState::dense(1, oracle::bell_projector({0}))), 1);
  EXPECT_NEAR(delta.identity_weight(), 1.0, kTol);
  const auto uni = probs_from_correlators(correlator_oracle(ResourceState::dense(1, ComplexMatrix::Identity(4, 4) / 4.0)), 1);
  for (std::uint64_t k = 0; k < 4; ++k) EXPECT_NEAR(uni.probability(PauliString::from_index(1, k)), 0.25, kTol);
  for (int n = 1; n <= 3; ++n) {
    const ComplexMatrix chi = oracle::random_density(Eigen::Index{1} << (2 * n), rng);
    const auto p = probs_from_correlators(correlator_oracle(ResourceState::dense(n, chi)), n);
    const auto ref = oracle::bell_probs(n, chi);
    for (std::size_t k = 0; k < ref.size(); ++k) EXPECT_NEAR(p.probability(PauliString::from_index(n, k)), ref[k], kTol);
  }
}

TEST(Correlators, OracleContractViolations) {
  const CorrelatorOracle out_of_range = [](const PauliString&, const PauliString&) { return 2.0; };
  try {
    probs_from_correlators(out_of_range, 1);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_TRUE(e.invariant() == "correlator_range" || e.invariant() == "correlator_identity");
  }
  const CorrelatorOracle bad_identity = [](const PauliString& a, const PauliString& b) {
    return (a.is_identity() && b.is_identity()) ? 0.5 : 0.0;
  };
  try {
    probs_from_correlators(bad_identity, 1);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.invariant(), "correlator_identity");
  }
}
