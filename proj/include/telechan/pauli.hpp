#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace telechan {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Largest n for which 2^n x 2^n operators are materialised.
inline constexpr int kDenseQubitCutoff = 12;
/// Largest n for which 4^n x 4^n (2n-qubit medium) operators are materialised.
inline constexpr int kDensePairCutoff = 3;
/// Largest word length the 64-bit masks can carry.
inline constexpr int kMaxWordLength = 31;

/// Entrywise tolerance used for projector/unitarity checks.
inline constexpr double kAlgebraTol = 1e-10;

/// Single-qubit Pauli label: 0 = identity, 1 = sigma_x, 2 = sigma_y, 3 = sigma_z.
class PauliIndex {
 public:
  constexpr PauliIndex() = default;
  explicit PauliIndex(int value);

  constexpr int value() const noexcept { return value_; }
  constexpr bool x_bit() const noexcept { return value_ == 1 || value_ == 2; }
  constexpr bool z_bit() const noexcept { return value_ == 2 || value_ == 3; }

  static PauliIndex from_bits(bool x, bool z) noexcept;

  friend constexpr bool operator==(PauliIndex, PauliIndex) = default;

 private:
  int value_ = 0;
};

/// Length-n tensor product of Pauli labels, stored as an (x-mask, z-mask)
/// pair. Qubit j (0-based, leftmost factor) lives in bit n-1-j so that the
/// masks line up with the computational-basis index of the Kronecker product.
///
/// A Bell-basis label is the same object: |Psi_k> = (sigma_k (x) 1)|Psi_0>^n.
class PauliString {
 public:
  PauliString() = default;
  PauliString(int n, std::uint64_t xmask, std::uint64_t zmask);

  static PauliString identity(int n);
  static PauliString from_word(std::span<const int> word);
  /// Inverse of `index()`: base-4 digits, qubit 0 most significant.
  static PauliString from_index(int n, std::uint64_t index);
  /// Parses a base-4 digit string such as "0310".
  static PauliString parse(const std::string& word);
  /// Z-sector label: bit n-1-j of `t` set means k_j = 3.
  static PauliString from_z_sector(int n, std::uint64_t t) {
    return PauliString(n, 0, t);
  }

  int size() const noexcept { return n_; }
  std::uint64_t xmask() const noexcept { return x_; }
  std::uint64_t zmask() const noexcept { return z_; }

  PauliIndex at(int j) const;
  std::vector<int> word() const;
  std::uint64_t index() const;
  std::string to_string() const;

  bool is_identity() const noexcept { return (x_ | z_) == 0; }
  bool in_z_sector() const noexcept { return x_ == 0; }

  /// Label of sigma_a sigma_b with the scalar phase dropped.
  PauliString operator*(const PauliString& other) const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

Eigen::Matrix2cd pauli_matrix(PauliIndex k);
ComplexMatrix pauli_string_matrix(const PauliString& s);

/// |Psi_k> = (sigma_k (x) 1)(|00> + |11>)/sqrt2, basis order |a b>.
Eigen::Vector4cd bell_state(PauliIndex k);

/// |Psi_k1> (x) ... (x) |Psi_kn> on the interleaved layout (A1,B1,A2,B2,...).
ComplexVector bell_state_string(const PauliString& k);

/// E_k = E_k1 (x) ... (x) E_kn on the interleaved layout.
ComplexMatrix bell_projector_string(const PauliString& k);

/// Unitary whose column `k.index()` is |Psi_k>, for n pairs.
ComplexMatrix bell_basis(int n);

/// sigma_s rho sigma_s, computed by permutation and sign flips in O(4^n).
ComplexMatrix conjugate_by_pauli(const ComplexMatrix& rho, const PauliString& s);

}  // namespace telechan
