#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "telechan/pauli.hpp"

namespace telechan {

/// Sum-to-one tolerance for probability vectors.
inline constexpr double kProbSumTol = 1e-12;
/// Entries in [-kNegativeClamp, 0) are treated as rounding noise and zeroed.
inline constexpr double kNegativeClamp = 1e-14;
/// Largest n with dense 4^n storage.
inline constexpr int kDenseProbCutoff = 12;
/// Largest n with Z-sector 2^n storage.
inline constexpr int kZSectorCutoff = 26;

/// Probability distribution over length-n Pauli strings.
///
/// Three storages share one interface:
///  - Dense: one entry per string, position = PauliString::index();
///  - Sparse: map from PauliString::index() to probability;
///  - ZSector: 2^n entries for words over {0,3} only. Position t has k_j = 3
///    exactly when bit n-1-j of t is set; all other strings are exactly zero.
class ProbDist {
 public:
  enum class Storage { Dense, Sparse, ZSector };

  ProbDist() = default;

  static ProbDist dense(int n, std::vector<double> p);
  static ProbDist sparse(int n, std::map<std::uint64_t, double> entries);
  static ProbDist z_sector(int n, std::vector<double> p);
  static ProbDist delta(const PauliString& k);
  static ProbDist uniform(int n);

  int n() const noexcept { return n_; }
  Storage storage() const noexcept { return storage_; }

  double probability(const PauliString& k) const;
  double identity_weight() const { return probability(PauliString::identity(n_)); }

  /// Calls f(PauliString, p) for every strictly positive entry, in index order.
  template <typename F>
  void for_each_nonzero(F&& f) const;

  std::vector<std::pair<PauliString, double>> nonzero_entries() const;
  std::size_t nonzero_count() const;

  double total() const;
  double entropy_bits() const;

  /// Dense storage copy; throws SizeError above kDenseProbCutoff.
  ProbDist to_dense() const;

  /// Raw values of Dense/ZSector storage.
  const std::vector<double>& values() const noexcept { return values_; }
  const std::map<std::uint64_t, double>& sparse_entries() const noexcept { return sparse_; }

 private:
  void finalize();

  int n_ = 0;
  Storage storage_ = Storage::Sparse;
  std::vector<double> values_;
  std::map<std::uint64_t, double> sparse_;
};

template <typename F>
void ProbDist::for_each_nonzero(F&& f) const {
  switch (storage_) {
    case Storage::Dense:
      for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] > 0.0) f(PauliString::from_index(n_, i), values_[i]);
      }
      break;
    case Storage::Sparse:
      for (const auto& [idx, p] : sparse_) {
        if (p > 0.0) f(PauliString::from_index(n_, idx), p);
      }
      break;
    case Storage::ZSector:
      for (std::size_t t = 0; t < values_.size(); ++t) {
        if (values_[t] > 0.0) f(PauliString::from_z_sector(n_, t), values_[t]);
      }
      break;
  }
}

}  // namespace telechan
