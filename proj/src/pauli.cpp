#include "telechan/pauli.hpp"

#include <cmath>

#include "telechan/errors.hpp"
#include "telechan/linalg.hpp"

namespace telechan {

namespace {

void check_length(int n) {
  if (n < 0 || n > kMaxWordLength) {
    throw SizeError("Pauli word length " + std::to_string(n) + " outside [0, " +
                    std::to_string(kMaxWordLength) + "]");
  }
}

std::uint64_t low_bits(int n) { return n >= 64 ? ~0ULL : ((1ULL << n) - 1ULL); }

}  // namespace

PauliIndex::PauliIndex(int value) : value_(value) {
  if (value < 0 || value > 3) {
    throw DomainError("Pauli index must be in {0,1,2,3}, got " + std::to_string(value));
  }
}

PauliIndex PauliIndex::from_bits(bool x, bool z) noexcept {
  PauliIndex k;
  k.value_ = x ? (z ? 2 : 1) : (z ? 3 : 0);
  return k;
}

PauliString::PauliString(int n, std::uint64_t xmask, std::uint64_t zmask)
    : n_(n), x_(xmask), z_(zmask) {
  check_length(n);
  if ((x_ | z_) & ~low_bits(n)) {
    throw DomainError("Pauli masks have bits beyond word length " + std::to_string(n));
  }
}

PauliString PauliString::identity(int n) { return PauliString(n, 0, 0); }

PauliString PauliString::from_word(std::span<const int> word) {
  const int n = static_cast<int>(word.size());
  check_length(n);
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  for (int j = 0; j < n; ++j) {
    const PauliIndex k(word[j]);
    const std::uint64_t bit = 1ULL << (n - 1 - j);
    if (k.x_bit()) x |= bit;
    if (k.z_bit()) z |= bit;
  }
  return PauliString(n, x, z);
}

PauliString PauliString::from_index(int n, std::uint64_t index) {
  check_length(n);
  std::vector<int> word(n);
  for (int j = n - 1; j >= 0; --j) {
    word[j] = static_cast<int>(index & 3U);
    index >>= 2;
  }
  if (index != 0) throw DomainError("base-4 index out of range for n=" + std::to_string(n));
  return from_word(word);
}

PauliString PauliString::parse(const std::string& word) {
  if (word.empty()) throw DomainError("empty Pauli word");
  std::vector<int> digits;
  digits.reserve(word.size());
  for (char c : word) {
    if (c < '0' || c > '3') {
      throw DomainError("Pauli word '" + word + "' has non base-4 digit '" + c + "'");
    }
    digits.push_back(c - '0');
  }
  return from_word(digits);
}

PauliIndex PauliString::at(int j) const {
  if (j < 0 || j >= n_) throw DomainError("qubit index out of range");
  const std::uint64_t bit = 1ULL << (n_ - 1 - j);
  return PauliIndex::from_bits((x_ & bit) != 0, (z_ & bit) != 0);
}

std::vector<int> PauliString::word() const {
  std::vector<int> w(n_);
  for (int j = 0; j < n_; ++j) w[j] = at(j).value();
  return w;
}

std::uint64_t PauliString::index() const {
  std::uint64_t idx = 0;
  for (int j = 0; j < n_; ++j) idx = (idx << 2) | static_cast<std::uint64_t>(at(j).value());
  return idx;
}

std::string PauliString::to_string() const {
  std::string s(n_, '0');
  for (int j = 0; j < n_; ++j) s[j] = static_cast<char>('0' + at(j).value());
  return s;
}

PauliString PauliString::operator*(const PauliString& other) const {
  if (n_ != other.n_) throw DimensionError("Pauli word lengths differ");
  return PauliString(n_, x_ ^ other.x_, z_ ^ other.z_);
}

Eigen::Matrix2cd pauli_matrix(PauliIndex k) {
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd m;
  switch (k.value()) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -i, i, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

ComplexMatrix pauli_string_matrix(const PauliString& s) {
  if (s.size() > kDenseQubitCutoff) {
    throw SizeError("pauli_string_matrix: n=" + std::to_string(s.size()) +
                    " exceeds dense cutoff " + std::to_string(kDenseQubitCutoff));
  }
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int j = 0; j < s.size(); ++j) out = kron(out, ComplexMatrix(pauli_matrix(s.at(j))));
  return out;
}

Eigen::Vector4cd bell_state(PauliIndex k) {
  const double h = 1.0 / std::sqrt(2.0);
  Eigen::Vector4cd psi0(h, 0, 0, h);
  const ComplexMatrix lift = kron(ComplexMatrix(pauli_matrix(k)), ComplexMatrix::Identity(2, 2));
  return lift * psi0;
}

ComplexVector bell_state_string(const PauliString& k) {
  if (k.size() > kDensePairCutoff) {
    throw SizeError("bell_state_string: n=" + std::to_string(k.size()) +
                    " exceeds 2n-qubit dense cutoff " + std::to_string(kDensePairCutoff));
  }
  ComplexVector out = ComplexVector::Ones(1);
  for (int j = 0; j < k.size(); ++j) {
    const Eigen::Vector4cd f = bell_state(k.at(j));
    ComplexVector next(out.size() * 4);
    for (Eigen::Index r = 0; r < out.size(); ++r) next.segment(r * 4, 4) = out(r) * f;
    out = std::move(next);
  }
  return out;
}

ComplexMatrix bell_projector_string(const PauliString& k) {
  const ComplexVector v = bell_state_string(k);
  return v * v.adjoint();
}

ComplexMatrix bell_basis(int n) {
  if (n < 1 || n > kDensePairCutoff) {
    throw SizeError("bell_basis: n=" + std::to_string(n) + " outside [1, " +
                    std::to_string(kDensePairCutoff) + "]");
  }
  const Eigen::Index dim = Eigen::Index{1} << (2 * n);
  ComplexMatrix basis(dim, dim);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    basis.col(idx) = bell_state_string(PauliString::from_index(n, static_cast<std::uint64_t>(idx)));
  }
  return basis;
}

ComplexMatrix conjugate_by_pauli(const ComplexMatrix& rho, const PauliString& s) {
  const Eigen::Index dim = Eigen::Index{1} << s.size();
  if (rho.rows() != dim || rho.cols() != dim) {
    throw DimensionError("conjugate_by_pauli: matrix is " + std::to_string(rho.rows()) + "x" +
                         std::to_string(rho.cols()) + ", expected " + std::to_string(dim));
  }
  // sigma_s = phase * X^x Z^z; the phase cancels between the two sides.
  const std::uint64_t x = s.xmask();
  const std::uint64_t z = s.zmask();
  ComplexMatrix out(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    const auto uc = static_cast<std::uint64_t>(c);
    const int sc = __builtin_popcountll(uc & z) & 1;
    for (Eigen::Index r = 0; r < dim; ++r) {
      const auto ur = static_cast<std::uint64_t>(r);
      const int sr = __builtin_popcountll(ur & z) & 1;
      const Complex v = rho(r, c);
      out(static_cast<Eigen::Index>(ur ^ x), static_cast<Eigen::Index>(uc ^ x)) =
          (sr ^ sc) ? -v : v;
    }
  }
  return out;
}

}  // namespace telechan
