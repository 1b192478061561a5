#include "perfro/matrix_function.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace perfro {

namespace {

std::string show(Complex z) {
  return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

// Taylor coefficients f^(k)(lambda)/k! for k < n.
VecC scaled_derivatives(const SpectralFunction& f, Complex lambda, std::size_t n) {
  VecC d(n);
  double factorial = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) factorial *= static_cast<double>(k);
    d[k] = f.deriv(lambda, static_cast<int>(k)) / factorial;
  }
  return d;
}

[[noreturn]] void raise_unsupported(const SpectrumSupport& s) {
  if (s.order == 0) throw DomainError(s.reason, s.lambda);
  throw NonDifferentiableError(s.reason, s.order);
}

}  // namespace

MatC func_jordan_block(const SpectralFunction& f, Complex lambda, std::size_t n) {
  const VecC d = scaled_derivatives(f, lambda, n);
  MatC out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; i + k < n; ++k) out(i, i + k) = d[k];
  }
  return out;
}

MatR func_real_jordan_block(const SpectralFunction& f, Complex lambda, std::size_t k,
                            const Tolerance& tol) {
  const VecC upper = scaled_derivatives(f, lambda, k);
  const VecC lower = scaled_derivatives(f, std::conj(lambda), k);
  for (std::size_t j = 0; j < k; ++j) {
    if (!tol.equal(std::conj(upper[j]), lower[j])) {
      throw ConjugateSymmetryError(
          f.to_string() + ": conj(f^(" + std::to_string(j) + ")(lambda)) = " +
              show(std::conj(upper[j])) + " differs from f^(" + std::to_string(j) +
              ")(conj lambda) = " + show(lower[j]) + " at lambda = " + show(lambda),
          lambda, static_cast<int>(j), upper[j], lower[j]);
    }
  }
  MatR out(2 * k, 2 * k);
  for (std::size_t j = 0; j < k; ++j) {
    const MatR c = rotation_block(upper[j]);
    for (std::size_t b = 0; b + j < k; ++b) {
      for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t s = 0; s < 2; ++s) out(2 * b + r, 2 * (b + j) + s) = c(r, s);
      }
    }
  }
  return out;
}

MatR matrix_function(const RealJordanFactors& factors, const SpectralFunction& f,
                     const Tolerance& tol) {
  const JordanSpec& spec = factors.spec();
  if (auto support = defined_on_spectrum(f, spec, tol); !support) {
    raise_unsupported(support);
  }

  std::vector<MatR> blocks;
  blocks.reserve(spec.real_blocks().size() + spec.complex_blocks().size());
  for (const auto& b : spec.real_blocks()) {
    const Complex lambda(b.lambda, 0.0);
    const auto n = static_cast<std::size_t>(b.size);
    MatC fj = func_jordan_block(f, lambda, n);
    // A real eigenvalue is its own conjugate, so symmetry means realness.
    for (std::size_t j = 0; j < n; ++j) {
      const Complex v = fj(0, j);
      if (!tol.equal(std::conj(v), v)) {
        throw ConjugateSymmetryError(
            f.to_string() + ": derivative of order " + std::to_string(j) +
                " at real eigenvalue " + std::to_string(b.lambda) + " is not real " +
                show(v) + "; f(A) is not real",
            lambda, static_cast<int>(j), v, v);
      }
    }
    blocks.push_back(real_part(fj, tol.abs_eps() * std::max(1.0, norm_inf(fj))));
  }
  for (const auto& b : spec.complex_blocks()) {
    blocks.push_back(
        func_real_jordan_block(f, b.lambda, static_cast<std::size_t>(b.size), tol));
  }
  const MatR fj = direct_sum(blocks);
  return factors.transform() * fj * factors.transform_inverse();
}

MatR taylor_oracle(const MatR& a, const SpectralFunction& f, std::size_t terms) {
  if (!a.square()) throw DimensionError("taylor_oracle: matrix is not square");
  if (terms == 0) throw std::invalid_argument("taylor_oracle needs at least one term");
  const auto coeffs = f.taylor_coefficients(terms);
  if (!coeffs) {
    throw std::invalid_argument("taylor_oracle: " + f.to_string() + " is not entire");
  }
  const std::size_t n = a.rows();
  MatR acc = (*coeffs)[terms - 1] * MatR::identity(n);
  for (std::size_t k = terms - 1; k-- > 0;) {
    acc = a * acc;
    for (std::size_t i = 0; i < n; ++i) acc(i, i) += (*coeffs)[k];
  }
  return acc;
}

double taylor_tail_bound(const MatR& a, const SpectralFunction& f, std::size_t terms) {
  const auto coeffs = f.taylor_coefficients(2 * terms + 1);
  if (!coeffs) {
    throw std::invalid_argument("taylor_tail_bound: " + f.to_string() + " is not entire");
  }
  const double norm = norm_inf(a);
  double power = std::pow(norm, static_cast<double>(terms));
  double tail = 0.0;
  for (std::size_t k = terms; k <= 2 * terms; ++k) {
    tail += std::abs((*coeffs)[k]) * power;
    power *= norm;
  }
  return tail;
}

}  // namespace perfro
