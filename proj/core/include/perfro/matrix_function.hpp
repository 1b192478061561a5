#pragma once

#include "perfro/function.hpp"
#include "perfro/jordan.hpp"

namespace perfro {

/// f(J_n(lambda)): upper-triangular Toeplitz with f^(k)(lambda)/k! on the
/// k-th superdiagonal.
MatC func_jordan_block(const SpectralFunction& f, Complex lambda, std::size_t n);

/// f(C_k(lambda)) in real form: block upper-triangular Toeplitz whose k-th
/// block superdiagonal is C(f^(k)(lambda)/k!).
///
/// The real form exists only when conj(f^(j)(lambda)) == f^(j)(conj lambda)
/// for j < k; otherwise throws ConjugateSymmetryError naming the first
/// offending order.
MatR func_real_jordan_block(const SpectralFunction& f, Complex lambda, std::size_t k,
                            const Tolerance& tol = {});

/// f(A) = R (sum of f(J) over real blocks, f(C) over complex blocks) R^-1.
///
/// Throws DomainError / NonDifferentiableError when f is not defined on the
/// spectrum, ConjugateSymmetryError when some block has no real image, and
/// NonRealResultError when the assembled result carries imaginary parts
/// above abs_eps * max(1, ||f(A)||_inf).
MatR matrix_function(const RealJordanFactors& factors, const SpectralFunction& f,
                     const Tolerance& tol = {});

/// Truncated Maclaurin series sum_{k<terms} c_k A^k by Horner's rule.
/// Throws std::invalid_argument when f is not entire.
MatR taylor_oracle(const MatR& a, const SpectralFunction& f, std::size_t terms);

/// Crude bound on the discarded series tail: sum_{k>=terms} |c_k| ||A||^k,
/// evaluated from the coefficients up to 2*terms.
double taylor_tail_bound(const MatR& a, const SpectralFunction& f, std::size_t terms);

}  // namespace perfro
