#include "abelsplit/modmat.hpp"

#include <limits>
#include <utility>

#include "abelsplit/error.hpp"

namespace abelsplit {

Int mul_mod(Int a, Int b, Int m) {
  return static_cast<Int>(static_cast<__int128>(a) * b % m);
}

Int pow_mod(Int base, std::uint64_t exp, Int m) {
  Int result = 1 % m;
  base = canonical(base, m);
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

Int inverse_mod(Int a, Int m) {
  Int old_r = canonical(a, m), r = m;
  Int old_s = 1, s = 0;
  while (r != 0) {
    Int q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
  }
  if (old_r != 1) {
    throw Error(ErrorCode::NotAUnit, std::to_string(a) + " is not invertible mod " +
                                         std::to_string(m));
  }
  return canonical(old_s, m);
}

int p_valuation(Int v, Int p, int cap) {
  if (v == 0) return cap;
  int k = 0;
  while (v % p == 0 && k < cap) {
    v /= p;
    ++k;
  }
  return k;
}

Int ipow(Int p, int k) {
  Int r = 1;
  for (int i = 0; i < k; ++i) {
    if (r > std::numeric_limits<Int>::max() / p) {
      throw Error(ErrorCode::Overflow, "power overflows 64 bits");
    }
    r *= p;
  }
  return r;
}

ModMatrix::ModMatrix(std::size_t rows, std::size_t cols, Int modulus)
    : rows_(rows), cols_(cols), modulus_(modulus), entries_(rows * cols, 0) {}

ModMatrix::ModMatrix(std::size_t rows, std::size_t cols, Int modulus,
                     std::vector<Int> entries)
    : rows_(rows), cols_(cols), modulus_(modulus), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw Error(ErrorCode::ShapeMismatch, "matrix entry count does not match shape");
  }
  for (Int& e : entries_) e = canonical(e, modulus_);
}

ModMatrix ModMatrix::identity(std::size_t n, Int modulus) {
  ModMatrix m(n, n, modulus);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

ModMatrix ModMatrix::elementary(std::size_t n, std::size_t row, std::size_t col,
                                Int modulus) {
  ModMatrix m(n, n, modulus);
  m.set(row, col, 1);
  return m;
}

ModMatrix ModMatrix::reduced(Int modulus) const {
  ModMatrix out(rows_, cols_, modulus);
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    out.entries_[i] = entries_[i] % modulus;
  }
  return out;
}

bool ModMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if ((*this)(r, c) != (r == c ? 1 % modulus_ : 0)) return false;
    }
  }
  return true;
}

bool ModMatrix::is_zero() const {
  for (Int e : entries_) {
    if (e != 0) return false;
  }
  return true;
}

ModMatrix operator*(const ModMatrix& a, const ModMatrix& b) {
  if (a.cols_ != b.rows_ || a.modulus_ != b.modulus_) {
    throw Error(ErrorCode::ShapeMismatch, "matrix product shape or modulus mismatch");
  }
  ModMatrix out(a.rows_, b.cols_, a.modulus_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t c = 0; c < b.cols_; ++c) {
      __int128 acc = 0;
      for (std::size_t k = 0; k < a.cols_; ++k) {
        acc += static_cast<__int128>(a(r, k)) * b(k, c);
      }
      out.entries_[r * out.cols_ + c] = static_cast<Int>(acc % a.modulus_);
    }
  }
  return out;
}

ModMatrix operator+(const ModMatrix& a, const ModMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.modulus_ != b.modulus_) {
    throw Error(ErrorCode::ShapeMismatch, "matrix sum shape or modulus mismatch");
  }
  ModMatrix out(a.rows_, a.cols_, a.modulus_);
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    out.entries_[i] = (a.entries_[i] + b.entries_[i]) % a.modulus_;
  }
  return out;
}

ModMatrix matrix_pow(const ModMatrix& m, std::uint64_t exp) {
  ModMatrix result = ModMatrix::identity(m.rows(), m.modulus());
  ModMatrix base = m;
  while (exp > 0) {
    if (exp & 1U) result = result * base;
    exp >>= 1U;
    if (exp > 0) base = base * base;
  }
  return result;
}

std::size_t rank_mod_p(const ModMatrix& m, Int p) {
  ModMatrix a = m.reduced(p);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    for (std::size_t c = 0; c < a.cols(); ++c) {
      Int t = a(rank, c);
      a.set(rank, c, a(pivot, c));
      a.set(pivot, c, t);
    }
    Int inv = inverse_mod(a(rank, col), p);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == rank || a(r, col) == 0) continue;
      Int f = mul_mod(a(r, col), inv, p);
      for (std::size_t c = 0; c < a.cols(); ++c) {
        a.set(r, c, a(r, c) - mul_mod(f, a(rank, c), p));
      }
    }
    ++rank;
  }
  return rank;
}

bool invertible_mod_p(const ModMatrix& m, Int p) {
  return m.rows() == m.cols() && rank_mod_p(m, p) == m.rows();
}

std::optional<ModMatrix> inverse_prime_power(const ModMatrix& m, Int p) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "inverse of a non-square matrix");
  }
  const std::size_t n = m.rows();
  const Int q = m.modulus();
  ModMatrix a = m;
  ModMatrix inv = ModMatrix::identity(n, q);
  auto swap_rows = [n](ModMatrix& x, std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < n; ++c) {
      Int t = x(i, c);
      x.set(i, c, x(j, c));
      x.set(j, c, t);
    }
  };
  for (std::size_t col = 0; col < n; ++col) {
    // A unit pivot exists in every column iff the matrix is invertible mod p.
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) % p == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      swap_rows(a, pivot, col);
      swap_rows(inv, pivot, col);
    }
    Int s = inverse_mod(a(col, col), q);
    for (std::size_t c = 0; c < n; ++c) {
      a.set(col, c, mul_mod(a(col, c), s, q));
      inv.set(col, c, mul_mod(inv(col, c), s, q));
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      Int f = a(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        a.set(r, c, a(r, c) - mul_mod(f, a(col, c), q));
        inv.set(r, c, inv(r, c) - mul_mod(f, inv(col, c), q));
      }
    }
  }
  return inv;
}

std::size_t hash_entries(std::span<const Int> entries, std::size_t seed) {
  std::size_t h = seed ^ 0x9e3779b97f4a7c15ULL;
  for (Int e : entries) {
    h ^= static_cast<std::size_t>(e) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace abelsplit
