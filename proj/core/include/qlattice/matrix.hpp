#pragma once

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <vector>

#include "qlattice/scalars.hpp"

namespace qlattice {

template <FieldScalar K>
using Vec = std::vector<K>;

template <FieldScalar K>
bool vec_is_zero(const Vec<K>& v) {
  for (const K& x : v)
    if (!is_zero(x)) return false;
  return true;
}

template <FieldScalar K>
Vec<K> vec_scaled(const Vec<K>& v, const K& c) {
  Vec<K> r(v.size(), K(0));
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) r[i] = v[i] * c;
  return r;
}

template <FieldScalar K>
void vec_add_scaled(Vec<K>& acc, const K& c, const Vec<K>& v) {
  if (is_zero(c)) return;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (is_zero(v[i])) continue;
    K t = c * v[i];
    acc[i] += t;
  }
}

template <FieldScalar K>
Vec<K> unit_vector(int dim, int index) {
  Vec<K> v(static_cast<std::size_t>(dim), K(0));
  v[static_cast<std::size_t>(index)] = K(1);
  return v;
}

/// Kronecker product, row-major flattening: (u ⊗ v)[i*|v|+j] = u[i]*v[j].
template <FieldScalar K>
Vec<K> vec_kron(const Vec<K>& u, const Vec<K>& v) {
  Vec<K> r(u.size() * v.size(), K(0));
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (is_zero(u[i])) continue;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (is_zero(v[j])) continue;
      r[i * v.size() + j] = u[i] * v[j];
    }
  }
  return r;
}

/// Dense row-major matrix over an exact field.
template <FieldScalar K>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, K(0)) {}
  Matrix(std::initializer_list<std::initializer_list<K>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
    data_.reserve(static_cast<std::size_t>(rows_) * cols_);
    for (const auto& r : rows) {
      ensure(static_cast<int>(r.size()) == cols_, "ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = K(1);
    return m;
  }

  static Matrix from_rows(const std::vector<Vec<K>>& rows) {
    Matrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      ensure(rows[i].size() == rows[0].size(), "ragged row list");
      for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  K& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const K& at(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  Vec<K> row(int i) const {
    return Vec<K>(data_.begin() + static_cast<std::size_t>(i) * cols_,
                  data_.begin() + static_cast<std::size_t>(i + 1) * cols_);
  }
  Vec<K> col(int j) const {
    Vec<K> c(static_cast<std::size_t>(rows_), K(0));
    for (int i = 0; i < rows_; ++i) c[static_cast<std::size_t>(i)] = at(i, j);
    return c;
  }
  void set_row(int i, const Vec<K>& v) {
    ensure(static_cast<int>(v.size()) == cols_, "row size mismatch");
    std::copy(v.begin(), v.end(), data_.begin() + static_cast<std::size_t>(i) * cols_);
  }

  void append_row(const Vec<K>& v) {
    if (rows_ == 0 && cols_ == 0) cols_ = static_cast<int>(v.size());
    ensure(static_cast<int>(v.size()) == cols_, "row size mismatch");
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Vec<K> apply(const Vec<K>& v) const {
    ensure(static_cast<int>(v.size()) == cols_, "apply: size mismatch");
    Vec<K> r(static_cast<std::size_t>(rows_), K(0));
    for (int i = 0; i < rows_; ++i) {
      K acc(0);
      for (int j = 0; j < cols_; ++j) {
        if (is_zero(at(i, j)) || is_zero(v[static_cast<std::size_t>(j)])) continue;
        K t = at(i, j) * v[static_cast<std::size_t>(j)];
        acc += t;
      }
      r[static_cast<std::size_t>(i)] = acc;
    }
    return r;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    ensure(a.cols_ == b.rows_, "matmul: size mismatch");
    Matrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const K& f = a.at(i, k);
        if (is_zero(f)) continue;
        for (int j = 0; j < b.cols_; ++j) {
          if (is_zero(b.at(k, j))) continue;
          K t = f * b.at(k, j);
          c.at(i, j) += t;
        }
      }
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    ensure(a.rows_ == b.rows_ && a.cols_ == b.cols_, "add: size mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    ensure(a.rows_ == b.rows_ && a.cols_ == b.cols_, "sub: size mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_zero_matrix() const {
    for (const K& x : data_)
      if (!is_zero(x)) return false;
    return true;
  }

  /// Kronecker product with row-major index flattening on both sides.
  friend Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < a.cols_; ++j) {
        if (is_zero(a.at(i, j))) continue;
        for (int p = 0; p < b.rows_; ++p)
          for (int q = 0; q < b.cols_; ++q) {
            if (is_zero(b.at(p, q))) continue;
            c.at(i * b.rows_ + p, j * b.cols_ + q) = a.at(i, j) * b.at(p, q);
          }
      }
    return c;
  }

 private:
  int rows_, cols_;
  std::vector<K> data_;
};

/// In-place reduction to canonical reduced row echelon form.
/// Returns the pivot column indices; zero rows are removed.
template <FieldScalar K>
std::vector<int> rref_in_place(Matrix<K>& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int pivot = -1;
    for (int i = row; i < m.rows(); ++i)
      if (!is_zero(m.at(i, col))) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(row, j));
    K inv = K(1) / m.at(row, col);
    for (int j = col; j < m.cols(); ++j) {
      if (is_zero(m.at(row, j))) continue;
      m.at(row, j) = m.at(row, j) * inv;
    }
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m.at(i, col))) continue;
      K f = m.at(i, col);
      for (int j = col; j < m.cols(); ++j) {
        if (is_zero(m.at(row, j))) continue;
        K t = f * m.at(row, j);
        m.at(i, j) -= t;
      }
    }
    pivots.push_back(col);
    ++row;
  }
  // Drop zero rows (everything below `row` is zero by construction).
  Matrix<K> reduced(row, m.cols());
  for (int i = 0; i < row; ++i)
    for (int j = 0; j < m.cols(); ++j) reduced.at(i, j) = m.at(i, j);
  m = std::move(reduced);
  return pivots;
}

template <FieldScalar K>
std::pair<Matrix<K>, std::vector<int>> rref(Matrix<K> m) {
  std::vector<int> pivots = rref_in_place(m);
  return {std::move(m), std::move(pivots)};
}

template <FieldScalar K>
int rank(Matrix<K> m) {
  return static_cast<int>(rref_in_place(m).size());
}

/// Null space of m, returned as RREF-canonical basis rows.
template <FieldScalar K>
Matrix<K> kernel(const Matrix<K>& m) {
  auto [r, pivots] = rref(m);
  int n = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  Matrix<K> ker(0, n);
  for (int free = 0; free < n; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    Vec<K> v(static_cast<std::size_t>(n), K(0));
    v[static_cast<std::size_t>(free)] = K(1);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[static_cast<std::size_t>(pivots[i])] = -r.at(static_cast<int>(i), free);
    ker.append_row(v);
  }
  rref_in_place(ker);  // canonical form for equality tests
  return ker;
}

/// Inverse of a square matrix, or nullopt if singular.
template <FieldScalar K>
std::optional<Matrix<K>> inverse(const Matrix<K>& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  int n = m.rows();
  Matrix<K> aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = K(1);
  }
  std::vector<int> pivots = rref_in_place(aug);
  if (static_cast<int>(pivots.size()) != n || pivots[static_cast<std::size_t>(n) - 1] != n - 1)
    return std::nullopt;
  Matrix<K> inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

/// One solution x of M x = b, or nullopt if inconsistent.
template <FieldScalar K>
std::optional<Vec<K>> solve(const Matrix<K>& m, const Vec<K>& b) {
  ensure(static_cast<int>(b.size()) == m.rows(), "solve: size mismatch");
  Matrix<K> aug(m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[static_cast<std::size_t>(i)];
  }
  std::vector<int> pivots = rref_in_place(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  Vec<K> x(static_cast<std::size_t>(m.cols()), K(0));
  for (std::size_t i = 0; i < pivots.size(); ++i)
    x[static_cast<std::size_t>(pivots[i])] = aug.at(static_cast<int>(i), m.cols());
  return x;
}

}  // namespace qlattice
