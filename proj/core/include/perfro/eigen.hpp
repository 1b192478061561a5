#pragma once

#include <vector>

#include "perfro/matrix.hpp"

namespace perfro {

struct EigenDecomposition {
  VecC values;
  /// Column k is the (unit 2-norm) eigenvector of values[k].
  MatC vectors;
};

/// Eigenvalues and eigenvectors of a general complex matrix.
///
/// Shifted QR on the Hessenberg form with a cap of 100*n sweeps; throws
/// ConvergenceError when the cap is hit. The order of the returned
/// eigenvalues is deterministic for a given input.
EigenDecomposition eigen_decompose(const MatC& a, const Tolerance& tol = {});

/// Real-input variant. The returned spectrum is exactly closed under
/// conjugation: every non-real eigenvalue is paired with its nearest
/// conjugate and both are replaced by the averaged pair.
EigenDecomposition eigen_decompose(const MatR& a, const Tolerance& tol = {});

VecC eigenvalues(const MatR& a, const Tolerance& tol = {});

/// Pairs every non-real value with its nearest conjugate partner and
/// symmetrizes the pair in place. Values whose imaginary part is below
/// `real_snap` are made exactly real.
void enforce_conjugate_pairs(VecC& values, double real_snap);

}  // namespace perfro
