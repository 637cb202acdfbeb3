#pragma once

#include "gkz/arith.hpp"

#include <cassert>
#include <optional>
#include <utility>

namespace gkz {

// Dense integer matrix, row-major.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Int{0}) {}

  static auto identity(std::size_t n) -> IntMatrix {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  // `cols` gives the column count when `rows` is empty.
  static auto from_rows(const std::vector<IntVec> &rows, std::size_t cols = 0)
      -> IntMatrix {
    if (!rows.empty()) cols = rows.front().size();
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols)
        throw error(errc::dimension_mismatch, "ragged rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static auto from_columns(const std::vector<IntVec> &cols, std::size_t rows = 0)
      -> IntMatrix {
    return from_rows(cols, rows).transpose();
  }

  [[nodiscard]] auto rows() const noexcept -> std::size_t { return rows_; }
  [[nodiscard]] auto cols() const noexcept -> std::size_t { return cols_; }

  auto operator()(std::size_t i, std::size_t j) -> Int & {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  auto operator()(std::size_t i, std::size_t j) const -> const Int & {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  [[nodiscard]] auto row(std::size_t i) const -> IntVec {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }
  [[nodiscard]] auto col(std::size_t j) const -> IntVec {
    IntVec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  [[nodiscard]] auto row_list() const -> std::vector<IntVec> {
    std::vector<IntVec> r;
    r.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) r.push_back(row(i));
    return r;
  }

  [[nodiscard]] auto transpose() const -> IntMatrix {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row a += c * row b
  void add_row(std::size_t a, std::size_t b, const Int &c) {
    if (c == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) += c * (*this)(b, j);
  }
  void add_col(std::size_t a, std::size_t b, const Int &c) {
    if (c == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, a) += c * (*this)(i, b);
  }
  void negate_row(std::size_t a) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) = -(*this)(a, j);
  }
  void negate_col(std::size_t a) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, a) = -(*this)(i, a);
  }
  // (row a, row b) <- (p a + q b, r a + s b)
  void combine_rows(std::size_t a, std::size_t b, const Int &p, const Int &q,
                    const Int &r, const Int &s) {
    for (std::size_t j = 0; j < cols_; ++j) {
      Int x = (*this)(a, j), y = (*this)(b, j);
      (*this)(a, j) = p * x + q * y;
      (*this)(b, j) = r * x + s * y;
    }
  }
  void combine_cols(std::size_t a, std::size_t b, const Int &p, const Int &q,
                    const Int &r, const Int &s) {
    for (std::size_t i = 0; i < rows_; ++i) {
      Int x = (*this)(i, a), y = (*this)(i, b);
      (*this)(i, a) = p * x + q * y;
      (*this)(i, b) = r * x + s * y;
    }
  }

  friend auto operator*(const IntMatrix &a, const IntMatrix &b) -> IntMatrix {
    if (a.cols_ != b.rows_) throw error(errc::dimension_mismatch, "matrix product");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Int &aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend auto operator==(const IntMatrix &, const IntMatrix &) -> bool = default;

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> data_;
};

// row vector times matrix
inline auto mul(const IntVec &v, const IntMatrix &m) -> IntVec {
  if (v.size() != m.rows()) throw error(errc::dimension_mismatch, "vector-matrix product");
  IntVec r = zero_vec(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] += v[i] * m(i, j);
  }
  return r;
}

using RatMatrix = std::vector<RatVec>;

inline auto to_rat(const std::vector<IntVec> &rows) -> RatMatrix {
  RatMatrix m;
  m.reserve(rows.size());
  for (const auto &r : rows) m.push_back(to_rat(r));
  return m;
}

// Reduced row echelon form in place; returns pivot columns.
inline auto rref(RatMatrix &m) -> std::vector<std::size_t> {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Rat inv = 1 / m[r][c];
    for (auto &x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rat f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline auto rank(RatMatrix m) -> std::size_t { return rref(m).size(); }

inline auto rank(const std::vector<IntVec> &rows) -> std::size_t {
  return rank(to_rat(rows));
}

// Basis of {x : m x = 0} for an r x c matrix; `cols` is needed when m is empty.
inline auto nullspace(RatMatrix m, std::size_t cols) -> std::vector<RatVec> {
  auto pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVec v(cols, Rat{0});
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline auto determinant(RatMatrix m) -> Rat {
  const std::size_t n = m.size();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      const Rat f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

inline auto determinant(const IntMatrix &m) -> Int {
  return numerator(determinant(to_rat(m.row_list())));
}

// Solves x * m = v for a row vector x when m (r x c) has full row rank and v
// lies in its row space; nullopt otherwise.
inline auto solve_left(const RatMatrix &m, const RatVec &v) -> std::optional<RatVec> {
  const std::size_t r = m.size();
  const std::size_t c = v.size();
  // Transpose to m^T x^T = v^T and eliminate the augmented system.
  RatMatrix aug(c, RatVec(r + 1));
  for (std::size_t i = 0; i < c; ++i) {
    for (std::size_t j = 0; j < r; ++j) aug[i][j] = m[j][i];
    aug[i][r] = v[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == r) return std::nullopt;
  if (pivots.size() != r) return std::nullopt;
  RatVec x(r);
  for (std::size_t i = 0; i < r; ++i) x[i] = aug[i][r];
  return x;
}

inline auto inverse(const RatMatrix &m) -> RatMatrix {
  const std::size_t n = m.size();
  RatMatrix aug(n, RatVec(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1)
    throw error(errc::precondition_violated, "singular matrix");
  RatMatrix inv(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

// Inverse of a unimodular integer matrix.
inline auto unimodular_inverse(const IntMatrix &m) -> IntMatrix {
  auto inv = inverse(to_rat(m.row_list()));
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_integral(inv[i][j]))
        throw error(errc::precondition_violated, "matrix is not unimodular");
      r(i, j) = numerator(inv[i][j]);
    }
  return r;
}

} // namespace gkz
