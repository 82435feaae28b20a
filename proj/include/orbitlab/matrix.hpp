#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "orbitlab/arith.hpp"

namespace orbitlab {

/// Dense row-major matrix over an exact scalar type.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shape");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw Error(ErrorKind::DimensionMismatch, "matrix sum shape");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw Error(ErrorKind::DimensionMismatch, "matrix difference shape");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend Matrix operator*(const T& s, Matrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "matrix-vector shape");
    std::vector<T> out(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != 0) out[i] += (*this)(i, j) * v[j];
    return out;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

/// Result of fraction-free row reduction: the echelon form, its pivot
/// columns and the sign of the row permutation applied.
struct Echelon {
  Matrix<BigInt> form;
  std::vector<std::size_t> pivots;
  int permutation_sign = 1;

  std::size_t rank() const { return pivots.size(); }
};

/// Bareiss elimination. Every division is exact: after step k each entry
/// of the active block is a (k+1)-minor of the input.
inline Echelon bareiss_echelon(Matrix<BigInt> m) {
  Echelon e;
  const std::size_t rows = m.rows(), cols = m.cols();
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      m.swap_rows(piv, r);
      e.permutation_sign = -e.permutation_sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        BigInt v = m(r, c) * m(i, j) - m(i, c) * m(r, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = std::move(v);
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    e.pivots.push_back(c);
    ++r;
  }
  e.form = std::move(m);
  return e;
}

inline std::size_t rank(const Matrix<BigInt>& m) { return bareiss_echelon(m).rank(); }

/// Determinant of a square integer matrix (the last Bareiss pivot).
inline BigInt determinant(const Matrix<BigInt>& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
  if (m.rows() == 0) return 1;
  const Echelon e = bareiss_echelon(m);
  if (e.rank() < m.rows()) return 0;
  const std::size_t n = m.rows() - 1;
  return e.permutation_sign * e.form(n, n);
}

/// Scales a rational vector to the primitive integer vector on the same
/// ray (positive multiple). Zero vectors map to zero vectors.
inline std::vector<BigInt> primitive_integer_vector(const std::vector<Rat>& v) {
  BigInt den = 1;
  for (const auto& x : v) den = lcm(den, x.get_den());
  std::vector<BigInt> out;
  out.reserve(v.size());
  BigInt g = 0;
  for (const auto& x : v) {
    BigInt z = x.get_num() * (den / x.get_den());
    g = gcd(g, z);
    out.push_back(std::move(z));
  }
  if (g > 1)
    for (auto& z : out) mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
  return out;
}

/// Basis of {x : m x = 0}, one primitive integer vector per free column,
/// with that free coordinate positive.
inline std::vector<std::vector<BigInt>> kernel_basis(const Matrix<BigInt>& m) {
  const Echelon e = bareiss_echelon(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::vector<BigInt>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rat> x(cols, Rat(0));
    x[f] = 1;
    for (std::size_t k = e.rank(); k-- > 0;) {
      const std::size_t p = e.pivots[k];
      Rat s = 0;
      for (std::size_t j = p + 1; j < cols; ++j)
        if (e.form(k, j) != 0 && x[j] != 0) s += Rat(e.form(k, j)) * x[j];
      x[p] = -s / Rat(e.form(k, p));
    }
    basis.push_back(primitive_integer_vector(x));
  }
  return basis;
}

inline Matrix<BigInt> to_integer_matrix(const std::vector<std::vector<BigInt>>& rows, std::size_t cols) {
  Matrix<BigInt> m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

}  // namespace orbitlab
