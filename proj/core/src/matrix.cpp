#include "perfro/matrix.hpp"

#include <limits>
#include <numeric>
#include <utility>

namespace perfro {

MatC to_complex(const MatR& a) {
  MatC c(a.rows(), a.cols());
  auto src = a.entries();
  auto dst = c.entries();
  for (std::size_t k = 0; k < src.size(); ++k) dst[k] = src[k];
  return c;
}

double max_imag(const MatC& a) {
  double best = 0.0;
  for (const auto& v : a.entries()) best = std::max(best, std::abs(v.imag()));
  return best;
}

MatR real_part(const MatC& a, double max_imag_allowed) {
  const double worst = max_imag(a);
  if (worst > max_imag_allowed) {
    throw NonRealResultError("result has imaginary part " + std::to_string(worst) +
                             " above threshold " + std::to_string(max_imag_allowed));
  }
  MatR r(a.rows(), a.cols());
  auto src = a.entries();
  auto dst = r.entries();
  for (std::size_t k = 0; k < src.size(); ++k) dst[k] = src[k].real();
  return r;
}

namespace {

template <class T>
Matrix<T> gauss_jordan_inverse(const Matrix<T>& a, const Tolerance& tol) {
  if (!a.square()) throw DimensionError("mat_inverse: matrix is not square");
  const std::size_t n = a.rows();
  const double pivot_floor = tol.abs_eps() * std::max(1.0, max_abs_entry(a));
  Matrix<T> work = a;
  Matrix<T> inv = Matrix<T>::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(work(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(work(r, col)) > best) {
        best = std::abs(work(r, col));
        pivot = r;
      }
    }
    if (best <= pivot_floor) {
      throw SingularMatrixError("matrix is singular to tolerance (pivot " +
                                std::to_string(best) + " in column " +
                                std::to_string(col) + ")");
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(work(pivot, j), work(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const T scale = T{1} / work(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      work(col, j) *= scale;
      inv(col, j) *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const T factor = work(r, col);
      if (factor == T{}) continue;
      for (std::size_t j = 0; j < n; ++j) {
        work(r, j) -= factor * work(col, j);
        inv(r, j) -= factor * inv(col, j);
      }
    }
  }
  return inv;
}

}  // namespace

MatC mat_inverse(const MatC& a, const Tolerance& tol) {
  return gauss_jordan_inverse(a, tol);
}

MatR mat_inverse(const MatR& a, const Tolerance& tol) {
  return gauss_jordan_inverse(a, tol);
}

double condition_estimate(const MatR& a, const Tolerance& tol) {
  try {
    return norm_inf(a) * norm_inf(mat_inverse(a, tol));
  } catch (const SingularMatrixError&) {
    return std::numeric_limits<double>::infinity();
  }
}

bool entrywise_positive(const MatR& a, double floor) {
  for (double v : a.entries()) {
    if (!(v > floor)) return false;
  }
  return !a.empty();
}

}  // namespace perfro
