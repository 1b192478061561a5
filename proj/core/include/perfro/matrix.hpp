#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "perfro/errors.hpp"
#include "perfro/tolerance.hpp"

namespace perfro {

using Complex = std::complex<double>;

/// Dense row-major matrix with value semantics.
template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T{}) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
      throw DimensionError("entry count does not match " + std::to_string(rows) +
                           "x" + std::to_string(cols));
    }
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw DimensionError("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const T> entries() const noexcept { return data_; }
  std::span<T> entries() noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using MatR = Matrix<double>;
using MatC = Matrix<Complex>;
using VecR = std::vector<double>;
using VecC = std::vector<Complex>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("mat_mul: " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " times " +
                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      if (aik == T{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

template <class T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
  return a * b;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, std::span<const T> x) {
  if (a.cols() != x.size()) throw DimensionError("matrix-vector size mismatch");
  std::vector<T> y(a.rows(), T{});
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  }
  return y;
}

template <class T>
Matrix<T> operator+(Matrix<T> a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("matrix sum of different shapes");
  }
  auto out = a.entries();
  auto in = b.entries();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += in[k];
  return a;
}

template <class T>
Matrix<T> operator-(Matrix<T> a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("matrix difference of different shapes");
  }
  auto out = a.entries();
  auto in = b.entries();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] -= in[k];
  return a;
}

template <class T, class S>
Matrix<T> operator*(S scalar, Matrix<T> a) {
  for (auto& v : a.entries()) v *= scalar;
  return a;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

/// Maximum absolute row sum.
template <class T>
double norm_inf(const Matrix<T>& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double sum = 0.0;
    for (const auto& v : a.row(i)) sum += std::abs(v);
    best = std::max(best, sum);
  }
  return best;
}

template <class T>
double max_abs_entry(const Matrix<T>& a) {
  double best = 0.0;
  for (const auto& v : a.entries()) best = std::max(best, static_cast<double>(std::abs(v)));
  return best;
}

template <class T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("max_abs_diff of different shapes");
  }
  double best = 0.0;
  auto x = a.entries();
  auto y = b.entries();
  for (std::size_t k = 0; k < x.size(); ++k) {
    best = std::max(best, static_cast<double>(std::abs(x[k] - y[k])));
  }
  return best;
}

/// Block-diagonal direct sum of square or rectangular blocks.
template <class T>
Matrix<T> direct_sum(std::span<const Matrix<T>> blocks) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix<T> out(rows, cols);
  std::size_t r0 = 0;
  std::size_t c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i) {
      for (std::size_t j = 0; j < b.cols(); ++j) out(r0 + i, c0 + j) = b(i, j);
    }
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

template <class T>
Matrix<T> direct_sum(const std::vector<Matrix<T>>& blocks) {
  return direct_sum(std::span<const Matrix<T>>(blocks));
}

MatC to_complex(const MatR& a);

/// Real part of `a`. Throws NonRealResultError when any imaginary part
/// exceeds `max_imag`.
MatR real_part(const MatC& a, double max_imag);

/// Largest imaginary part magnitude over all entries.
double max_imag(const MatC& a);

/// Gauss-Jordan inverse with partial pivoting. Throws SingularMatrixError
/// when a pivot falls below tol.abs_eps() (scaled by the matrix norm).
MatC mat_inverse(const MatC& a, const Tolerance& tol = {});
MatR mat_inverse(const MatR& a, const Tolerance& tol = {});

/// ||A||_inf * ||A^-1||_inf; +inf when A is singular to tolerance.
double condition_estimate(const MatR& a, const Tolerance& tol = {});

/// True when every entry is strictly greater than `floor`.
bool entrywise_positive(const MatR& a, double floor = 0.0);

}  // namespace perfro
