#pragma once

#include <cassert>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cayley/scalar.hpp"

namespace cayley {

// Small dense row-major matrix over either scalar backend.
template <class T>
class Matrix {
public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols, Num<T>::zero()) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = static_cast<int>(init.size());
    cols_ = rows_ ? static_cast<int>(init.begin()->size()) : 0;
    for (const auto& row : init) {
      if (static_cast<int>(row.size()) != cols_) throw std::invalid_argument("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Num<T>::one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(int r, int c) { return data_[r * cols_ + c]; }
  const T& operator()(int r, int c) const { return data_[r * cols_ + c]; }

  std::vector<T> column(int c) const {
    std::vector<T> out(rows_);
    for (int r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }
  void set_column(int c, const std::vector<T>& v) {
    for (int r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  Matrix operator-() const {
    Matrix m = *this;
    for (auto& x : m.data_) x = -x;
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix m(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (Num<T>::is_zero(aik) && Num<T>::backend == Backend::Exact) continue;
        for (int j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    std::vector<T> out(rows_, Num<T>::zero());
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  // Exact equality for Rational, tolerance equality for double.
  bool approx_equal(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (!Num<T>::equal(data_[i], o.data_[i])) return false;
    return true;
  }
  bool is_zero() const {
    for (const auto& x : data_)
      if (!Num<T>::is_zero(x)) return false;
    return true;
  }
  bool is_symmetric() const {
    if (!square()) return false;
    for (int r = 0; r < rows_; ++r)
      for (int c = r + 1; c < cols_; ++c)
        if (!Num<T>::equal((*this)(r, c), (*this)(c, r))) return false;
    return true;
  }
  double max_abs() const {
    double m = 0;
    for (const auto& x : data_) m = std::max(m, Num<T>::magnitude(x));
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  const std::vector<T>& data() const { return data_; }

  template <class U>
  Matrix<U> cast() const {
    Matrix<U> m(rows_, cols_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) {
        if constexpr (std::is_same_v<T, U>) {
          m(r, c) = (*this)(r, c);
        } else {
          m(r, c) = static_cast<U>(Num<T>::to_double((*this)(r, c)));
        }
      }
    return m;
  }

private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

// Gauss-Jordan inverse; std::nullopt when singular (exactly, or within tolerance).
template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
  if (!a.square()) throw std::invalid_argument("inverse of non-square matrix");
  const int n = a.rows();
  Matrix<T> m = a;
  Matrix<T> inv = Matrix<T>::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    double best = 0;
    for (int r = col; r < n; ++r) {
      double mag = Num<T>::magnitude(m(r, col));
      if (!Num<T>::is_zero(m(r, col)) && mag > best) {
        best = mag;
        piv = r;
      }
    }
    if (piv < 0) return std::nullopt;
    if (piv != col)
      for (int c = 0; c < n; ++c) {
        std::swap(m(piv, c), m(col, c));
        std::swap(inv(piv, c), inv(col, c));
      }
    T p = m(col, col);
    for (int c = 0; c < n; ++c) {
      m(col, c) /= p;
      inv(col, c) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || Num<T>::is_zero(m(r, col))) continue;
      T f = m(r, col);
      for (int c = 0; c < n; ++c) {
        m(r, c) -= f * m(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

template <class T>
T determinant(const Matrix<T>& a) {
  if (!a.square()) throw std::invalid_argument("determinant of non-square matrix");
  const int n = a.rows();
  Matrix<T> m = a;
  T det = Num<T>::one();
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    double best = -1;
    for (int r = col; r < n; ++r) {
      bool nz = Num<T>::backend == Backend::Exact ? !Num<T>::is_zero(m(r, col)) : true;
      double mag = Num<T>::magnitude(m(r, col));
      if (nz && mag > best) {
        best = mag;
        piv = r;
      }
    }
    if (piv < 0 || (Num<T>::backend == Backend::Exact && Num<T>::is_zero(m(piv, col))))
      return Num<T>::zero();
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(m(piv, c), m(col, c));
      det = -det;
    }
    det *= m(col, col);
    if (m(col, col) == Num<T>::zero()) return Num<T>::zero();
    for (int r = col + 1; r < n; ++r) {
      T f = m(r, col) / m(col, col);
      for (int c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

template <class T>
std::vector<T> unit_vector(int n, int i) {
  std::vector<T> v(n, Num<T>::zero());
  v[i] = Num<T>::one();
  return v;
}

template <class T>
std::vector<T> operator+(std::vector<T> a, const std::vector<T>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
template <class T>
std::vector<T> operator-(std::vector<T> a, const std::vector<T>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
template <class T>
std::vector<T> scaled(std::vector<T> a, const T& s) {
  for (auto& x : a) x *= s;
  return a;
}
template <class T>
bool is_zero_vector(const std::vector<T>& v) {
  for (const auto& x : v)
    if (!Num<T>::is_zero(x)) return false;
  return true;
}

// Matrix with integer / rational literal entries, convenient for tests and fixtures.
template <class T>
Matrix<T> from_rationals(const Matrix<Rational>& m) {
  Matrix<T> out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out(r, c) = Num<T>::from(m(r, c));
  return out;
}

}  // namespace cayley
