#pragma once

// Dense matrices over a prime field GF(q): rank, products and solving
// A·X = B by row reduction.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gnc/error.hpp"

namespace gnc {

inline bool is_prime(std::uint32_t q) {
  if (q < 2) return false;
  for (std::uint32_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

inline void require_prime(std::uint32_t q) {
  if (!is_prime(q)) throw Error(ErrorKind::NonPrimeModulus, "GF(" + std::to_string(q) + ") needs a prime modulus");
}

/// a^{-1} mod q for prime q and a != 0.
inline std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t q) {
  std::uint64_t r = 1, b = a % q, e = q - 2;
  while (e) {
    if (e & 1) r = r * b % q;
    b = b * b % q;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint32_t> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  static Matrix from_rows(const std::vector<std::vector<std::uint32_t>>& rs) {
    Matrix m(rs.size(), rs.empty() ? 0 : rs.front().size());
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (rs[i].size() != m.cols) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
      for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = rs[i][j];
    }
    return m;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::uint32_t& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  std::uint32_t operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  bool is_zero() const {
    return std::all_of(data.begin(), data.end(), [](std::uint32_t v) { return v == 0; });
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

inline Matrix multiply(const Matrix& a, const Matrix& b, std::uint32_t q) {
  if (a.cols != b.rows) throw Error(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
  Matrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t k = 0; k < a.cols; ++k) {
      const std::uint64_t aik = a(i, k);
      if (!aik) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) = static_cast<std::uint32_t>((c(i, j) + aik * b(k, j)) % q);
    }
  }
  return c;
}

inline Matrix add(const Matrix& a, const Matrix& b, std::uint32_t q) {
  if (a.rows != b.rows || a.cols != b.cols) throw Error(ErrorKind::DimensionMismatch, "matrix sum shape mismatch");
  Matrix c(a.rows, a.cols);
  for (std::size_t i = 0; i < a.data.size(); ++i) c.data[i] = (a.data[i] + b.data[i]) % q;
  return c;
}

/// [A | B], side by side.
inline Matrix hconcat(std::span<const Matrix> blocks, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows != rows) throw Error(ErrorKind::DimensionMismatch, "hconcat row mismatch");
    cols += b.cols;
  }
  Matrix m(rows, cols);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < b.cols; ++j) m(i, off + j) = b(i, j);
    }
    off += b.cols;
  }
  return m;
}

/// Rows [begin, begin+count) of m.
inline Matrix row_block(const Matrix& m, std::size_t begin, std::size_t count) {
  Matrix out(count, m.cols);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) out(i, j) = m(begin + i, j);
  }
  return out;
}

/// Reduced row echelon form in place; returns pivot columns among the first
/// `pivot_cols` columns (later columns are carried along but never pivoted).
inline std::vector<std::size_t> row_reduce(Matrix& m, std::uint32_t q, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < m.rows; ++c) {
    std::size_t p = r;
    while (p < m.rows && m(p, c) == 0) ++p;
    if (p == m.rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
    }
    const std::uint64_t inv = inverse_mod(m(r, c), q);
    for (std::size_t j = 0; j < m.cols; ++j) m(r, j) = static_cast<std::uint32_t>(m(r, j) * inv % q);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const std::uint64_t f = m(i, c);
      for (std::size_t j = 0; j < m.cols; ++j) {
        m(i, j) = static_cast<std::uint32_t>((m(i, j) + (q - f) * m(r, j)) % q);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t matrix_rank(const Matrix& m, std::uint32_t q) {
  require_prime(q);
  Matrix w = m;
  for (auto& v : w.data) v %= q;
  return row_reduce(w, q, w.cols).size();
}

/// Some X with A·X = B, or nothing when B's columns leave A's column space.
inline std::optional<Matrix> solve(const Matrix& a, const Matrix& b, std::uint32_t q) {
  require_prime(q);
  if (a.rows != b.rows) throw Error(ErrorKind::DimensionMismatch, "solve: row mismatch");
  const Matrix blocks[] = {a, b};
  Matrix aug = hconcat(blocks, a.rows);
  for (auto& v : aug.data) v %= q;
  const auto pivots = row_reduce(aug, q, a.cols);
  for (std::size_t i = pivots.size(); i < aug.rows; ++i) {
    for (std::size_t j = a.cols; j < aug.cols; ++j) {
      if (aug(i, j) != 0) return std::nullopt;
    }
  }
  Matrix x(a.cols, b.cols);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    for (std::size_t j = 0; j < b.cols; ++j) x(pivots[i], j) = aug(i, a.cols + j);
  }
  return x;
}

}  // namespace gnc
