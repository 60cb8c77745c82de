#pragma once

// Data-parallel inner loops. Every kernel has a `serial` reference and a
// `parallel` (OpenMP) variant with identical results; the unsuffixed entry
// point dispatches to the parallel variant when OpenMP is available.
//
// Reductions are computed over a fixed set of chunks and combined in chunk
// order, so results do not depend on the thread count.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace telechan::kernels {

bool is_power_of_two(std::size_t n) noexcept;

/// Unnormalised Walsh-Hadamard transform, in place:
/// out[t] = sum_s (-1)^{popcount(t & s)} v[s]. Throws DimensionError when the
/// length is not a power of two.
void fwht_serial(std::span<double> v);
void fwht_serial(std::span<std::complex<double>> v);
void fwht_parallel(std::span<double> v);
void fwht_parallel(std::span<std::complex<double>> v);
void fwht(std::span<double> v);
void fwht(std::span<std::complex<double>> v);

/// Number of adjacent (1,1) pairs in an n-bit word.
constexpr int adjacent_ones(std::uint64_t s) noexcept {
  return __builtin_popcountll(s & (s >> 1));
}

/// e^{i theta c(s)} for s in [0, 2^n), c = adjacent_ones.
std::vector<std::complex<double>> chain_phase_vector_serial(int n, double theta);
std::vector<std::complex<double>> chain_phase_vector_parallel(int n, double theta);
std::vector<std::complex<double>> chain_phase_vector(int n, double theta);

/// |v_i|^2 * scale, written into a new real vector.
std::vector<double> squared_magnitudes_serial(std::span<const std::complex<double>> v,
                                              double scale);
std::vector<double> squared_magnitudes_parallel(std::span<const std::complex<double>> v,
                                                double scale);
std::vector<double> squared_magnitudes(std::span<const std::complex<double>> v, double scale);

/// -sum p log2 p with 0 log 0 = 0.
double shannon_entropy_bits_serial(std::span<const double> p);
double shannon_entropy_bits_parallel(std::span<const double> p);
double shannon_entropy_bits(std::span<const double> p);

double sum_serial(std::span<const double> p);
double sum_parallel(std::span<const double> p);
double sum(std::span<const double> p);

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int max_threads() noexcept;

}  // namespace telechan::kernels
