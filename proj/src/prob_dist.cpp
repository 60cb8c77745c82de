#include "telechan/prob_dist.hpp"

#include <cmath>
#include <string>

#include "telechan/errors.hpp"
#include "telechan/kernels.hpp"

namespace telechan {

namespace {

void clamp_entry(double& p, const std::string& where) {
  if (!std::isfinite(p)) throw ValidationError("finite", "probability at " + where + " is not finite");
  if (p < 0.0) {
    if (p < -kNegativeClamp) {
      throw ValidationError("nonnegative", "probability at " + where + " is " + std::to_string(p));
    }
    p = 0.0;
  }
}

}  // namespace

ProbDist ProbDist::dense(int n, std::vector<double> p) {
  if (n < 1 || n > kDenseProbCutoff) {
    throw SizeError("dense distribution: n=" + std::to_string(n) + " outside [1, " +
                    std::to_string(kDenseProbCutoff) + "]");
  }
  if (p.size() != (std::size_t{1} << (2 * n))) {
    throw ValidationError("dimension", "dense distribution needs 4^n entries");
  }
  ProbDist d;
  d.n_ = n;
  d.storage_ = Storage::Dense;
  d.values_ = std::move(p);
  d.finalize();
  return d;
}

ProbDist ProbDist::sparse(int n, std::map<std::uint64_t, double> entries) {
  if (n < 1 || n > kMaxWordLength) throw SizeError("sparse distribution: n out of range");
  const std::uint64_t limit = 1ULL << (2 * n);
  for (const auto& [idx, p] : entries) {
    if (idx >= limit) throw ValidationError("dimension", "sparse index beyond 4^n");
  }
  ProbDist d;
  d.n_ = n;
  d.storage_ = Storage::Sparse;
  d.sparse_ = std::move(entries);
  d.finalize();
  return d;
}

ProbDist ProbDist::z_sector(int n, std::vector<double> p) {
  if (n < 1 || n > kZSectorCutoff) {
    throw SizeError("Z-sector distribution: n=" + std::to_string(n) + " outside [1, " +
                    std::to_string(kZSectorCutoff) + "]");
  }
  if (p.size() != (std::size_t{1} << n)) {
    throw ValidationError("dimension", "Z-sector distribution needs 2^n entries");
  }
  ProbDist d;
  d.n_ = n;
  d.storage_ = Storage::ZSector;
  d.values_ = std::move(p);
  d.finalize();
  return d;
}

ProbDist ProbDist::delta(const PauliString& k) { return sparse(k.size(), {{k.index(), 1.0}}); }

ProbDist ProbDist::uniform(int n) {
  if (n < 1 || n > kDenseProbCutoff) throw SizeError("uniform distribution: n out of range");
  const std::size_t len = std::size_t{1} << (2 * n);
  return dense(n, std::vector<double>(len, 1.0 / static_cast<double>(len)));
}

void ProbDist::finalize() {
  if (storage_ == Storage::Sparse) {
    for (auto& [idx, p] : sparse_) clamp_entry(p, std::to_string(idx));
  } else {
    for (std::size_t i = 0; i < values_.size(); ++i) clamp_entry(values_[i], std::to_string(i));
  }
  const double s = total();
  if (std::abs(s - 1.0) > kProbSumTol) {
    throw ValidationError("probability_sum", "probabilities sum to " + std::to_string(s));
  }
}

double ProbDist::probability(const PauliString& k) const {
  if (k.size() != n_) throw DimensionError("probability: word length differs from n");
  switch (storage_) {
    case Storage::Dense: return values_[k.index()];
    case Storage::Sparse: {
      const auto it = sparse_.find(k.index());
      return it == sparse_.end() ? 0.0 : it->second;
    }
    case Storage::ZSector: return k.in_z_sector() ? values_[k.zmask()] : 0.0;
  }
  return 0.0;
}

std::vector<std::pair<PauliString, double>> ProbDist::nonzero_entries() const {
  std::vector<std::pair<PauliString, double>> out;
  for_each_nonzero([&](const PauliString& k, double p) { out.emplace_back(k, p); });
  return out;
}

std::size_t ProbDist::nonzero_count() const {
  std::size_t c = 0;
  for_each_nonzero([&](const PauliString&, double) { ++c; });
  return c;
}

double ProbDist::total() const {
  if (storage_ == Storage::Sparse) {
    double s = 0.0;
    for (const auto& [idx, p] : sparse_) s += p;
    return s;
  }
  return kernels::sum(values_);
}

double ProbDist::entropy_bits() const {
  if (storage_ == Storage::Sparse) {
    double s = 0.0;
    for (const auto& [idx, p] : sparse_) {
      if (p > 0.0) s -= p * std::log2(p);
    }
    return s;
  }
  return kernels::shannon_entropy_bits(values_);
}

ProbDist ProbDist::to_dense() const {
  if (storage_ == Storage::Dense) return *this;
  if (n_ > kDenseProbCutoff) throw SizeError("to_dense: n exceeds dense cutoff");
  std::vector<double> p(std::size_t{1} << (2 * n_), 0.0);
  for_each_nonzero([&](const PauliString& k, double v) { p[k.index()] = v; });
  ProbDist d;
  d.n_ = n_;
  d.storage_ = Storage::Dense;
  d.values_ = std::move(p);
  return d;
}

}  // namespace telechan
