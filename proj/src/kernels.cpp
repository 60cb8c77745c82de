#include "telechan/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "telechan/errors.hpp"

#ifdef TELECHAN_HAVE_OPENMP
#include <omp.h>
#endif

namespace telechan::kernels {

namespace {

// Chunk count for reductions. Fixed so the combination order never depends
// on scheduling.
constexpr std::size_t kReductionChunk = 1U << 12;

// Below this length the parallel variants fall through to the serial loop.
constexpr std::size_t kParallelThreshold = 1U << 14;

void require_power_of_two(std::size_t n) {
  if (!is_power_of_two(n)) {
    throw DimensionError("fwht: length " + std::to_string(n) + " is not a power of two");
  }
}

template <typename T>
void fwht_serial_impl(std::span<T> v) {
  require_power_of_two(v.size());
  const std::size_t n = v.size();
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const T a = v[j];
        const T b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

template <typename T>
void fwht_parallel_impl(std::span<T> v) {
  require_power_of_two(v.size());
  const std::size_t n = v.size();
  if (n < kParallelThreshold) {
    fwht_serial_impl(v);
    return;
  }
  T* data = v.data();
  const auto half = static_cast<std::int64_t>(n >> 1);
  // Each stage pairs index p (with bit h clear) with p + h; the n/2 butterflies
  // of a stage are independent.
  for (std::size_t h = 1; h < n; h <<= 1) {
#ifdef TELECHAN_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t m = 0; m < half; ++m) {
      const auto um = static_cast<std::size_t>(m);
      const std::size_t lo = um & (h - 1);
      const std::size_t j = ((um - lo) << 1) | lo;
      const T a = data[j];
      const T b = data[j + h];
      data[j] = a + b;
      data[j + h] = a - b;
    }
  }
}

inline double plogp(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

template <typename F>
double chunked_reduce_serial(std::size_t n, F&& term) {
  const std::size_t chunks = (n + kReductionChunk - 1) / kReductionChunk;
  double total = 0.0;
  for (std::size_t c = 0; c < chunks; ++c) {
    double partial = 0.0;
    const std::size_t end = std::min(n, (c + 1) * kReductionChunk);
    for (std::size_t i = c * kReductionChunk; i < end; ++i) partial += term(i);
    total += partial;
  }
  return total;
}

template <typename F>
double chunked_reduce_parallel(std::size_t n, F&& term) {
  const std::size_t chunks = (n + kReductionChunk - 1) / kReductionChunk;
  std::vector<double> partials(chunks, 0.0);
#ifdef TELECHAN_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    double partial = 0.0;
    const auto uc = static_cast<std::size_t>(c);
    const std::size_t end = std::min(n, (uc + 1) * kReductionChunk);
    for (std::size_t i = uc * kReductionChunk; i < end; ++i) partial += term(i);
    partials[uc] = partial;
  }
  double total = 0.0;
  for (double p : partials) total += p;
  return total;
}

void check_chain_length(int n) {
  if (n < 0 || n > 30) throw SizeError("chain_phase_vector: n=" + std::to_string(n) + " too large");
}

}  // namespace

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

void fwht_serial(std::span<double> v) { fwht_serial_impl(v); }
void fwht_serial(std::span<std::complex<double>> v) { fwht_serial_impl(v); }
void fwht_parallel(std::span<double> v) { fwht_parallel_impl(v); }
void fwht_parallel(std::span<std::complex<double>> v) { fwht_parallel_impl(v); }

void fwht(std::span<double> v) {
#ifdef TELECHAN_HAVE_OPENMP
  fwht_parallel_impl(v);
#else
  fwht_serial_impl(v);
#endif
}

void fwht(std::span<std::complex<double>> v) {
#ifdef TELECHAN_HAVE_OPENMP
  fwht_parallel_impl(v);
#else
  fwht_serial_impl(v);
#endif
}

std::vector<std::complex<double>> chain_phase_vector_serial(int n, double theta) {
  check_chain_length(n);
  // The phase only takes n distinct values; tabulate them once.
  std::vector<std::complex<double>> table(static_cast<std::size_t>(n) + 1);
  for (int c = 0; c <= n; ++c) table[c] = std::polar(1.0, theta * c);
  std::vector<std::complex<double>> out(std::size_t{1} << n);
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = table[adjacent_ones(s)];
  return out;
}

std::vector<std::complex<double>> chain_phase_vector_parallel(int n, double theta) {
  check_chain_length(n);
  std::vector<std::complex<double>> table(static_cast<std::size_t>(n) + 1);
  for (int c = 0; c <= n; ++c) table[c] = std::polar(1.0, theta * c);
  std::vector<std::complex<double>> out(std::size_t{1} << n);
  const auto len = static_cast<std::int64_t>(out.size());
#ifdef TELECHAN_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (len >= static_cast<std::int64_t>(kParallelThreshold))
#endif
  for (std::int64_t s = 0; s < len; ++s) {
    out[static_cast<std::size_t>(s)] = table[adjacent_ones(static_cast<std::uint64_t>(s))];
  }
  return out;
}

std::vector<std::complex<double>> chain_phase_vector(int n, double theta) {
#ifdef TELECHAN_HAVE_OPENMP
  return chain_phase_vector_parallel(n, theta);
#else
  return chain_phase_vector_serial(n, theta);
#endif
}

std::vector<double> squared_magnitudes_serial(std::span<const std::complex<double>> v,
                                              double scale) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::norm(v[i]) * scale;
  return out;
}

std::vector<double> squared_magnitudes_parallel(std::span<const std::complex<double>> v,
                                                double scale) {
  std::vector<double> out(v.size());
  const auto len = static_cast<std::int64_t>(v.size());
#ifdef TELECHAN_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (len >= static_cast<std::int64_t>(kParallelThreshold))
#endif
  for (std::int64_t i = 0; i < len; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    out[ui] = std::norm(v[ui]) * scale;
  }
  return out;
}

std::vector<double> squared_magnitudes(std::span<const std::complex<double>> v, double scale) {
#ifdef TELECHAN_HAVE_OPENMP
  return squared_magnitudes_parallel(v, scale);
#else
  return squared_magnitudes_serial(v, scale);
#endif
}

double shannon_entropy_bits_serial(std::span<const double> p) {
  return chunked_reduce_serial(p.size(), [&](std::size_t i) { return plogp(p[i]); });
}

double shannon_entropy_bits_parallel(std::span<const double> p) {
  return chunked_reduce_parallel(p.size(), [&](std::size_t i) { return plogp(p[i]); });
}

double shannon_entropy_bits(std::span<const double> p) {
#ifdef TELECHAN_HAVE_OPENMP
  return shannon_entropy_bits_parallel(p);
#else
  return shannon_entropy_bits_serial(p);
#endif
}

double sum_serial(std::span<const double> p) {
  return chunked_reduce_serial(p.size(), [&](std::size_t i) { return p[i]; });
}

double sum_parallel(std::span<const double> p) {
  return chunked_reduce_parallel(p.size(), [&](std::size_t i) { return p[i]; });
}

double sum(std::span<const double> p) {
#ifdef TELECHAN_HAVE_OPENMP
  return sum_parallel(p);
#else
  return sum_serial(p);
#endif
}

int max_threads() noexcept {
#ifdef TELECHAN_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace telechan::kernels
