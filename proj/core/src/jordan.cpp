#include "perfro/jordan.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "perfro/eigen.hpp"

namespace perfro {

JordanSpec::JordanSpec(std::vector<RealBlock> real_blocks,
                       std::vector<ComplexBlock> complex_blocks)
    : real_(std::move(real_blocks)), complex_(std::move(complex_blocks)) {
  for (const auto& b : real_) {
    if (b.size < 1) throw InvalidSpecError("real block size must be positive");
    if (!std::isfinite(b.lambda)) throw InvalidSpecError("real eigenvalue is not finite");
  }
  for (const auto& b : complex_) {
    if (b.size < 1) throw InvalidSpecError("complex block size must be positive");
    if (!std::isfinite(b.lambda.real()) || !std::isfinite(b.lambda.imag())) {
      throw InvalidSpecError("complex eigenvalue is not finite");
    }
    if (!(b.lambda.imag() > 0.0)) {
      throw InvalidSpecError(
          "complex block eigenvalue must have strictly positive imaginary part");
    }
  }
}

std::size_t JordanSpec::real_count() const noexcept {
  std::size_t n = 0;
  for (const auto& b : real_) n += static_cast<std::size_t>(b.size);
  return n;
}

std::size_t JordanSpec::pair_count() const noexcept {
  std::size_t n = 0;
  for (const auto& b : complex_) n += static_cast<std::size_t>(b.size);
  return n;
}

std::size_t JordanSpec::total_dimension() const noexcept {
  return real_count() + 2 * pair_count();
}

bool JordanSpec::diagonalizable() const noexcept {
  return std::all_of(real_.begin(), real_.end(), [](const auto& b) { return b.size == 1; }) &&
         std::all_of(complex_.begin(), complex_.end(),
                     [](const auto& b) { return b.size == 1; });
}

VecC JordanSpec::eigenvalues() const {
  VecC out;
  out.reserve(total_dimension());
  for (const auto& b : real_) out.insert(out.end(), b.size, Complex(b.lambda, 0.0));
  for (const auto& b : complex_) {
    for (int k = 0; k < b.size; ++k) {
      out.push_back(b.lambda);
      out.push_back(std::conj(b.lambda));
    }
  }
  return out;
}

std::vector<DistinctEigenvalue> JordanSpec::distinct_eigenvalues(const Tolerance& tol) const {
  std::vector<DistinctEigenvalue> out;
  auto add = [&](Complex lambda, int size) {
    for (auto& d : out) {
      if (tol.equal(d.value, lambda)) {
        d.index = std::max(d.index, size);
        d.multiplicity += size;
        return;
      }
    }
    out.push_back({lambda, size, size});
  };
  for (const auto& b : real_) add(Complex(b.lambda, 0.0), b.size);
  for (const auto& b : complex_) {
    add(b.lambda, b.size);
    add(std::conj(b.lambda), b.size);
  }
  return out;
}

int JordanSpec::index(Complex lambda, const Tolerance& tol) const {
  for (const auto& d : distinct_eigenvalues(tol)) {
    if (tol.equal(d.value, lambda)) return d.index;
  }
  return 0;
}

double JordanSpec::spectral_radius() const noexcept {
  double rho = 0.0;
  for (const auto& b : real_) rho = std::max(rho, std::abs(b.lambda));
  for (const auto& b : complex_) rho = std::max(rho, std::abs(b.lambda));
  return rho;
}

RealJordanFactors::RealJordanFactors(JordanSpec spec, MatR transform, const Tolerance& tol)
    : spec_(std::move(spec)), transform_(std::move(transform)) {
  if (!transform_.square() || transform_.rows() != spec_.total_dimension()) {
    throw DimensionError("transform must be square of dimension " +
                         std::to_string(spec_.total_dimension()));
  }
  transform_inverse_ = mat_inverse(transform_, tol);
}

MatR RealJordanFactors::reconstruct() const {
  return transform_ * assemble_real_jordan(spec_) * transform_inverse_;
}

MatC jordan_block(Complex lambda, std::size_t n) {
  MatC j(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, i) = lambda;
    if (i + 1 < n) j(i, i + 1) = 1.0;
  }
  return j;
}

MatR rotation_block(Complex lambda) {
  return MatR{{lambda.real(), lambda.imag()}, {-lambda.imag(), lambda.real()}};
}

MatR real_jordan_block(Complex lambda, std::size_t j) {
  MatR out(2 * j, 2 * j);
  const MatR c = rotation_block(lambda);
  for (std::size_t k = 0; k < j; ++k) {
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t s = 0; s < 2; ++s) out(2 * k + r, 2 * k + s) = c(r, s);
    }
    if (k + 1 < j) {
      out(2 * k, 2 * k + 2) = 1.0;
      out(2 * k + 1, 2 * k + 3) = 1.0;
    }
  }
  return out;
}

MatR assemble_real_jordan(const JordanSpec& spec) {
  std::vector<MatR> blocks;
  blocks.reserve(spec.real_blocks().size() + spec.complex_blocks().size());
  for (const auto& b : spec.real_blocks()) {
    MatR j(b.size, b.size);
    for (int i = 0; i < b.size; ++i) {
      j(i, i) = b.lambda;
      if (i + 1 < b.size) j(i, i + 1) = 1.0;
    }
    blocks.push_back(std::move(j));
  }
  for (const auto& b : spec.complex_blocks()) {
    blocks.push_back(real_jordan_block(b.lambda, static_cast<std::size_t>(b.size)));
  }
  return direct_sum(blocks);
}

double cluster_radius(double matrix_norm) noexcept {
  return kClusterRadius * matrix_norm;
}

Synthesis synthesize_matrix(const JordanSpec& spec, const MatR& transform,
                            const Tolerance& tol) {
  if (!transform.square() || transform.rows() != spec.total_dimension()) {
    throw DimensionError("transform must be square of dimension " +
                         std::to_string(spec.total_dimension()));
  }
  const double cond = condition_estimate(transform, tol);
  if (!std::isfinite(cond)) {
    throw SingularMatrixError("transform is singular to tolerance");
  }
  if (cond > kConditionLimit) {
    throw IllConditionedError(
        "transform condition estimate " + std::to_string(cond) + " exceeds 1e8", cond);
  }
  RealJordanFactors factors(spec, transform, tol);
  MatR a = factors.reconstruct();
  return Synthesis{std::move(a), std::move(factors), cond, cond > kConditionWarn};
}

namespace {

// Single-linkage clusters of indices whose values lie within `radius`.
std::vector<std::vector<std::size_t>> cluster(const VecC& values,
                                              const std::vector<std::size_t>& members,
                                              double radius) {
  std::vector<std::vector<std::size_t>> groups;
  std::vector<bool> seen(values.size(), false);
  for (std::size_t start : members) {
    if (seen[start]) continue;
    std::vector<std::size_t> group{start};
    seen[start] = true;
    for (std::size_t g = 0; g < group.size(); ++g) {
      for (std::size_t other : members) {
        if (!seen[other] && std::abs(values[other] - values[group[g]]) <= radius) {
          seen[other] = true;
          group.push_back(other);
        }
      }
    }
    groups.push_back(std::move(group));
  }
  return groups;
}

constexpr double kRankThreshold = 1e-6;

void require_full_rank(const MatC& vectors, const std::vector<std::size_t>& group,
                       const VecC& values) {
  if (group.size() < 2) return;
  Eigen::MatrixXcd block(vectors.rows(), group.size());
  for (std::size_t k = 0; k < group.size(); ++k) {
    for (std::size_t i = 0; i < vectors.rows(); ++i) block(i, k) = vectors(i, group[k]);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(block);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (!(smin > kRankThreshold * smax)) {
    const Complex lambda = values[group.front()];
    throw DefectiveMatrixError(
        "matrix appears defective: eigenvalue cluster near (" +
        std::to_string(lambda.real()) + ", " + std::to_string(lambda.imag()) +
        ") of size " + std::to_string(group.size()) +
        " has a rank-deficient eigenvector block; supply the Jordan structure "
        "explicitly (JordanSpec plus transform) through synthesize_matrix");
  }
}

}  // namespace

RealJordanFactors extract_diagonalizable_structure(const MatR& a, const Tolerance& tol) {
  if (!a.square()) throw DimensionError("extract_diagonalizable_structure: not square");
  const auto eig = eigen_decompose(a, tol);
  const double norm = norm_inf(a);
  const double radius = cluster_radius(norm);

  std::vector<std::size_t> real_idx;
  std::vector<std::size_t> upper_idx;
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    if (eig.values[k].imag() == 0.0) {
      real_idx.push_back(k);
    } else if (eig.values[k].imag() > 0.0) {
      upper_idx.push_back(k);
    }
  }
  // Clusters may straddle the real axis (a nearly real conjugate pair next
  // to a real eigenvalue), so rank is checked over every index.
  std::vector<std::size_t> all(eig.values.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  for (const auto& group : cluster(eig.values, all, radius)) {
    require_full_rank(eig.vectors, group, eig.values);
  }

  const std::size_t n = a.rows();
  MatR r(n, n);
  std::vector<RealBlock> real_blocks;
  std::vector<ComplexBlock> complex_blocks;
  std::size_t col = 0;
  for (std::size_t k : real_idx) {
    for (std::size_t i = 0; i < n; ++i) r(i, col) = eig.vectors(i, k).real();
    real_blocks.push_back({eig.values[k].real(), 1});
    ++col;
  }
  for (std::size_t k : upper_idx) {
    for (std::size_t i = 0; i < n; ++i) {
      r(i, col) = eig.vectors(i, k).real();
      r(i, col + 1) = eig.vectors(i, k).imag();
    }
    complex_blocks.push_back({eig.values[k], 1});
    col += 2;
  }

  JordanSpec spec(std::move(real_blocks), std::move(complex_blocks));
  try {
    RealJordanFactors factors(std::move(spec), std::move(r), tol);
    const double residual = norm_inf(factors.reconstruct() - a);
    if (residual > 1e-6 * std::max(1.0, norm)) {
      throw DefectiveMatrixError(
          "diagonalizing reconstruction residual " + std::to_string(residual) +
          " is too large; the matrix is numerically defective. Supply the Jordan "
          "structure explicitly through synthesize_matrix");
    }
    return factors;
  } catch (const SingularMatrixError&) {
    throw DefectiveMatrixError(
        "eigenvector matrix is singular; the matrix is defective. Supply the "
        "Jordan structure explicitly through synthesize_matrix");
  }
}

std::size_t leading_real_column(const JordanSpec& spec) noexcept {
  std::size_t col = 0;
  std::size_t best_col = spec.total_dimension();
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& b : spec.real_blocks()) {
    if (b.lambda > best) {
      best = b.lambda;
      best_col = col;
    }
    col += static_cast<std::size_t>(b.size);
  }
  return best_col;
}

MatR random_orthogonal_transform(const JordanSpec& spec, std::uint64_t seed) {
  const std::size_t n = spec.total_dimension();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> positive(0.5, 1.5);

  // Columns are orthonormalized in order; column 0 starts positive.
  std::vector<VecR> cols(n, VecR(n));
  for (std::size_t i = 0; i < n; ++i) cols[0][i] = positive(rng);
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) cols[j][i] = gauss(rng);
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += cols[k][i] * cols[j][i];
        for (std::size_t i = 0; i < n; ++i) cols[j][i] -= dot * cols[k][i];
      }
    }
    double norm = 0.0;
    for (double v : cols[j]) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : cols[j]) v /= norm;
  }

  const std::size_t lead = leading_real_column(spec);
  if (lead < n && lead != 0) std::swap(cols[0], cols[lead]);

  MatR q(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) q(i, j) = cols[j][i];
  }
  return q;
}

}  // namespace perfro
