#include "perfro/eigen.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <optional>

namespace perfro {

namespace {

constexpr int kSweepsPerRow = 100;

// Parlett-Reinsch balancing with powers of two: returns the diagonal d such
// that diag(d)^-1 * A * diag(d) has comparable row and column norms. The
// scaling is exact in floating point.
template <class M>
Eigen::VectorXd balance(M& a) {
  const Eigen::Index n = a.rows();
  Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
  constexpr double radix = 2.0;
  bool converged = false;
  for (int pass = 0; pass < 64 && !converged; ++pass) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        d(i) *= f;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
  return d;
}

// Rescales each eigenvector column to unit 2-norm with its largest entry
// rotated onto the positive real axis, which makes the output deterministic.
void normalize_columns(MatC& v) {
  for (std::size_t j = 0; j < v.cols(); ++j) {
    double norm = 0.0;
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < v.rows(); ++i) {
      const double m = std::abs(v(i, j));
      norm += m * m;
      if (m > best * (1.0 + 1e-12)) {
        best = m;
        arg = i;
      }
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    const Complex phase = std::conj(v(arg, j)) / std::abs(v(arg, j));
    for (std::size_t i = 0; i < v.rows(); ++i) v(i, j) *= phase / norm;
  }
}

// Pairs conjugates; returns partner[i] (or nullopt when value i is real).
std::vector<std::optional<std::size_t>> pair_conjugates(VecC& values,
                                                        double real_snap) {
  const std::size_t n = values.size();
  std::vector<std::optional<std::size_t>> partner(n);
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (used[i]) continue;
    if (std::abs(values[i].imag()) <= real_snap) {
      values[i].imag(0.0);
      used[i] = true;
      continue;
    }
    std::optional<std::size_t> best;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || used[j]) continue;
      if (values[j].imag() * values[i].imag() >= 0.0) continue;
      const double dist = std::abs(values[j] - std::conj(values[i]));
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    used[i] = true;
    if (!best) {
      values[i].imag(0.0);
      continue;
    }
    used[*best] = true;
    const Complex mean = 0.5 * (values[i] + std::conj(values[*best]));
    values[i] = mean;
    values[*best] = std::conj(mean);
    partner[i] = *best;
    partner[*best] = i;
  }
  return partner;
}

}  // namespace

void enforce_conjugate_pairs(VecC& values, double real_snap) {
  pair_conjugates(values, real_snap);
}

EigenDecomposition eigen_decompose(const MatC& a, const Tolerance&) {
  if (!a.square()) throw DimensionError("eigen_decompose: matrix is not square");
  const auto n = static_cast<Eigen::Index>(a.rows());
  EigenDecomposition out;
  if (n == 0) return out;

  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(i, j);
  }
  const Eigen::VectorXd d = balance(m);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver;
  solver.setMaxIterations(kSweepsPerRow * static_cast<int>(n));
  solver.compute(m, true);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("complex QR iteration did not converge within " +
                               std::to_string(kSweepsPerRow * n) + " sweeps",
                           kSweepsPerRow * static_cast<int>(n));
  }
  out.values.assign(solver.eigenvalues().begin(), solver.eigenvalues().end());
  out.vectors = MatC(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out.vectors(i, j) = d(i) * solver.eigenvectors()(i, j);
    }
  }
  normalize_columns(out.vectors);
  return out;
}

EigenDecomposition eigen_decompose(const MatR& a, const Tolerance&) {
  if (!a.square()) throw DimensionError("eigen_decompose: matrix is not square");
  const auto n = static_cast<Eigen::Index>(a.rows());
  EigenDecomposition out;
  if (n == 0) return out;

  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(i, j);
  }
  const Eigen::VectorXd d = balance(m);

  Eigen::EigenSolver<Eigen::MatrixXd> solver;
  solver.setMaxIterations(kSweepsPerRow * static_cast<int>(n));
  solver.compute(m, true);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("real QR iteration did not converge within " +
                               std::to_string(kSweepsPerRow * n) + " sweeps",
                           kSweepsPerRow * static_cast<int>(n));
  }
  out.values.assign(solver.eigenvalues().begin(), solver.eigenvalues().end());
  const Eigen::MatrixXcd vecs = solver.eigenvectors();
  out.vectors = MatC(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out.vectors(i, j) = d(i) * vecs(i, j);
  }

  // Real Schur 1x1 blocks already give exactly real eigenvalues.
  const auto partner = pair_conjugates(out.values, 0.0);
  for (std::size_t j = 0; j < out.values.size(); ++j) {
    if (out.values[j].imag() == 0.0) {
      for (std::size_t i = 0; i < a.rows(); ++i) out.vectors(i, j).imag(0.0);
    }
  }
  normalize_columns(out.vectors);
  // Partners get exactly conjugated eigenvectors.
  for (std::size_t j = 0; j < out.values.size(); ++j) {
    if (partner[j] && out.values[j].imag() > 0.0) {
      for (std::size_t i = 0; i < a.rows(); ++i) {
        out.vectors(i, *partner[j]) = std::conj(out.vectors(i, j));
      }
    }
  }
  return out;
}

VecC eigenvalues(const MatR& a, const Tolerance& tol) {
  return eigen_decompose(a, tol).values;
}

}  // namespace perfro
