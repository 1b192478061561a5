#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "perfro/matrix.hpp"

namespace perfro {

struct RealBlock {
  double lambda = 0.0;
  int size = 1;
};

/// One entry per conjugate pair; `lambda` is the representative with
/// positive imaginary part, its conjugate is implied.
struct ComplexBlock {
  Complex lambda;
  int size = 1;
};

/// A distinct eigenvalue together with its index (largest block size).
struct DistinctEigenvalue {
  Complex value;
  int index = 1;
  int multiplicity = 0;
};

/// Jordan structure of a real matrix, split the way the real Jordan form
/// splits it: real eigenvalues first, then conjugate pairs.
class JordanSpec {
 public:
  JordanSpec() = default;
  /// Throws InvalidSpecError on nonpositive sizes or Im(lambda) <= 0.
  JordanSpec(std::vector<RealBlock> real_blocks,
             std::vector<ComplexBlock> complex_blocks);

  const std::vector<RealBlock>& real_blocks() const noexcept { return real_; }
  const std::vector<ComplexBlock>& complex_blocks() const noexcept {
    return complex_;
  }

  std::size_t total_dimension() const noexcept;
  /// r: real eigenvalues counted with multiplicity.
  std::size_t real_count() const noexcept;
  /// c: conjugate pairs counted with multiplicity.
  std::size_t pair_count() const noexcept;
  bool diagonalizable() const noexcept;

  /// Full eigenvalue multiset, conjugates included.
  VecC eigenvalues() const;

  /// Distinct eigenvalues (tolerance-equal grouping, conjugates listed
  /// explicitly) with their indices m_i.
  std::vector<DistinctEigenvalue> distinct_eigenvalues(const Tolerance& tol = {}) const;

  /// Index of `lambda`: 0 when lambda is not an eigenvalue.
  int index(Complex lambda, const Tolerance& tol = {}) const;

  /// max |lambda| over the spectrum.
  double spectral_radius() const noexcept;

  friend bool operator==(const JordanSpec& a, const JordanSpec& b) {
    auto same_real = [](const RealBlock& x, const RealBlock& y) {
      return x.lambda == y.lambda && x.size == y.size;
    };
    auto same_complex = [](const ComplexBlock& x, const ComplexBlock& y) {
      return x.lambda == y.lambda && x.size == y.size;
    };
    return std::equal(a.real_.begin(), a.real_.end(), b.real_.begin(), b.real_.end(),
                      same_real) &&
           std::equal(a.complex_.begin(), a.complex_.end(), b.complex_.begin(),
                      b.complex_.end(), same_complex);
  }

 private:
  std::vector<RealBlock> real_;
  std::vector<ComplexBlock> complex_;
};

/// A real Jordan form together with its real similarity R, so that
/// A = R * assemble_real_jordan(spec) * R^-1.
class RealJordanFactors {
 public:
  /// Validates that `transform` is square of the spec's dimension and
  /// invertible to tolerance.
  RealJordanFactors(JordanSpec spec, MatR transform, const Tolerance& tol = {});

  const JordanSpec& spec() const noexcept { return spec_; }
  const MatR& transform() const noexcept { return transform_; }
  const MatR& transform_inverse() const noexcept { return transform_inverse_; }
  std::size_t dimension() const noexcept { return transform_.rows(); }

  /// R J R^-1.
  MatR reconstruct() const;

 private:
  JordanSpec spec_;
  MatR transform_;
  MatR transform_inverse_;
};

/// J_n(lambda): lambda on the diagonal, ones on the superdiagonal.
MatC jordan_block(Complex lambda, std::size_t n);

/// C(lambda) = [[Re, Im], [-Im, Re]].
MatR rotation_block(Complex lambda);

/// C_j(lambda): C(lambda) on the 2x2 block diagonal, I_2 on the block
/// superdiagonal.
MatR real_jordan_block(Complex lambda, std::size_t j);

/// Direct sum of J_{n_k}(lambda_k) over real blocks followed by
/// C_{n_k}(lambda_k) over complex blocks, in spec order.
MatR assemble_real_jordan(const JordanSpec& spec);

/// Condition numbers above this produce a warning, above the hard limit an
/// IllConditionedError.
inline constexpr double kConditionWarn = 1e6;
inline constexpr double kConditionLimit = 1e8;

struct Synthesis {
  MatR matrix;
  RealJordanFactors factors;
  double condition = 1.0;
  bool condition_warning = false;
};

/// Builds A = R J R^-1 for the given spec and transform.
Synthesis synthesize_matrix(const JordanSpec& spec, const MatR& transform,
                            const Tolerance& tol = {});

/// Real Jordan factors of a diagonalizable real matrix: real eigenvector
/// columns for real eigenvalues, (Re v, Im v) column pairs for each
/// eigenvalue with positive imaginary part.
///
/// Throws DefectiveMatrixError when a cluster of eigenvalues (pairwise
/// distance below 1e-6 * ||A||_inf) has a rank-deficient eigenvector block.
RealJordanFactors extract_diagonalizable_structure(const MatR& a,
                                                   const Tolerance& tol = {});

/// Relative eigenvalue clustering radius used for defectiveness and
/// simplicity decisions.
inline constexpr double kClusterRadius = 1e-6;

double cluster_radius(double matrix_norm) noexcept;

/// Seeded random orthogonal matrix of the spec's dimension whose column at
/// the leading real eigenvalue's eigenvector position is entrywise positive,
/// so that a synthesized matrix with a dominant positive real root has a
/// positive Perron vector. Without real blocks the result is a plain random
/// orthogonal matrix.
MatR random_orthogonal_transform(const JordanSpec& spec, std::uint64_t seed);

/// Column index of the eigenvector belonging to the largest real eigenvalue
/// in the spec's block layout, or the dimension when there are no real blocks.
std::size_t leading_real_column(const JordanSpec& spec) noexcept;

}  // namespace perfro
