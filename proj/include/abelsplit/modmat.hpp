#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace abelsplit {

using Int = std::int64_t;

/// Canonical residue of v in [0, m).
constexpr Int canonical(Int v, Int m) {
  Int r = v % m;
  return r < 0 ? r + m : r;
}

Int mul_mod(Int a, Int b, Int m);
Int pow_mod(Int base, std::uint64_t exp, Int m);

/// Inverse of a modulo m; throws NotAUnit when gcd(a, m) != 1.
Int inverse_mod(Int a, Int m);

/// Largest k with p^k | v (v != 0); returns `cap` for v == 0.
int p_valuation(Int v, Int p, int cap);

/// Checked p^k.
Int ipow(Int p, int k);

/// Dense matrix over Z/mZ with entries kept canonical.
class ModMatrix {
 public:
  ModMatrix() = default;
  ModMatrix(std::size_t rows, std::size_t cols, Int modulus);
  ModMatrix(std::size_t rows, std::size_t cols, Int modulus,
            std::vector<Int> entries);

  static ModMatrix identity(std::size_t n, Int modulus);
  static ModMatrix elementary(std::size_t n, std::size_t row, std::size_t col,
                              Int modulus);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int modulus() const { return modulus_; }

  Int operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  void set(std::size_t r, std::size_t c, Int v) {
    entries_[r * cols_ + c] = canonical(v, modulus_);
  }

  std::span<const Int> entries() const { return entries_; }

  /// Entrywise reduction to a modulus dividing the current one.
  ModMatrix reduced(Int modulus) const;

  bool is_identity() const;
  bool is_zero() const;

  friend ModMatrix operator*(const ModMatrix& a, const ModMatrix& b);
  friend ModMatrix operator+(const ModMatrix& a, const ModMatrix& b);
  friend bool operator==(const ModMatrix& a, const ModMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Int modulus_ = 1;
  std::vector<Int> entries_;
};

ModMatrix matrix_pow(const ModMatrix& m, std::uint64_t exp);

/// Rank over F_p of the reduction of m mod p.
std::size_t rank_mod_p(const ModMatrix& m, Int p);

bool invertible_mod_p(const ModMatrix& m, Int p);

/// Inverse of a square matrix over Z/p^k by Gauss-Jordan elimination with unit
/// pivots. The modulus must be a power of p. Empty when m is singular mod p.
std::optional<ModMatrix> inverse_prime_power(const ModMatrix& m, Int p);

std::size_t hash_entries(std::span<const Int> entries, std::size_t seed = 0);

struct ModMatrixHash {
  std::size_t operator()(const ModMatrix& m) const {
    return hash_entries(m.entries(), m.rows());
  }
};

}  // namespace abelsplit
