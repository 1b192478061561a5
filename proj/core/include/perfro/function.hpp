#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "perfro/jordan.hpp"
#include "perfro/matrix.hpp"

namespace perfro {

/// Where a function may be evaluated. Both exclusion shapes are symmetric
/// under conjugation, so every descriptor describes a self-conjugate set.
struct DomainDescriptor {
  /// Removes the closed ray (-inf, 0].
  bool excludes_nonpositive_reals = false;
  /// Removes the point 0.
  bool excludes_origin = false;

  bool contains(Complex z) const noexcept;
  DomainDescriptor intersect(const DomainDescriptor& other) const noexcept {
    return {excludes_nonpositive_reals || other.excludes_nonpositive_reals,
            excludes_origin || other.excludes_origin};
  }
  friend bool operator==(const DomainDescriptor&, const DomainDescriptor&) = default;
};

/// Scalar function used to build f(A): an immutable expression tree over
///   z^p, z^(1/p), |z|, exp(z), sum a_k z^k and weighted sums of these,
/// plus caller-supplied nodes for tests and extensions.
///
/// Derivatives are exact closed forms. Roots use the principal branch off
/// the negative real axis; odd roots take the real root on it so they stay
/// real on the real line.
class SpectralFunction {
 public:
  /// j-th derivative at z of a caller-supplied function.
  using DerivativeFn = std::function<Complex(Complex z, int order)>;

  static SpectralFunction monomial(int p);
  static SpectralFunction root(int p);
  static SpectralFunction abs();
  static SpectralFunction exp();
  static SpectralFunction polynomial(std::vector<double> coeffs);
  static SpectralFunction scaled_sum(std::vector<std::pair<double, SpectralFunction>> terms);
  static SpectralFunction identity() { return monomial(1); }

  /// A node defined entirely by `derivative`. `max_order` bounds the
  /// derivative orders it supports; `taylor` (optional) marks it entire.
  static SpectralFunction custom(std::string name, DerivativeFn derivative,
                                 DomainDescriptor domain, int max_order,
                                 std::optional<std::vector<double>> taylor = std::nullopt);

  /// f(z). Throws DomainError outside domain().
  Complex eval(Complex z) const { return deriv(z, 0); }

  /// f^(order)(z). Throws DomainError outside domain() and
  /// NonDifferentiableError when the order exceeds max_order().
  Complex deriv(Complex z, int order) const;

  DomainDescriptor domain() const;

  /// Highest derivative order that exists (everywhere on the domain);
  /// kUnbounded for analytic nodes.
  int max_order() const;
  static constexpr int kUnbounded = 1 << 30;

  /// Entire functions (exp, monomials, polynomials, sums thereof).
  bool entire() const;

  /// First `terms` Maclaurin coefficients; nullopt when not entire.
  std::optional<std::vector<double>> taylor_coefficients(std::size_t terms) const;

  /// Expression in the command-line grammar (custom nodes print their name).
  std::string to_string() const;

  struct Node;

 private:
  explicit SpectralFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  // Weighted leaves of nested sums, for printing without parentheses.
  void collect_terms(double weight, std::vector<std::pair<double, SpectralFunction>>& out) const;
  std::shared_ptr<const Node> node_;
};

inline Complex eval(const SpectralFunction& f, Complex z) { return f.eval(z); }
inline Complex deriv(const SpectralFunction& f, Complex z, int order) {
  return f.deriv(z, order);
}

/// Outcome of the "defined on the spectrum" test; on failure, `lambda` and
/// `order` name the first missing value f^(order)(lambda).
struct SpectrumSupport {
  bool defined = true;
  Complex lambda;
  int order = 0;
  std::string reason;

  explicit operator bool() const noexcept { return defined; }
};

/// Checks that f^(j)(lambda_i) exists for j < m_i at every distinct
/// eigenvalue, conjugates included.
SpectrumSupport defined_on_spectrum(const SpectralFunction& f, const JordanSpec& spec,
                                    const Tolerance& tol = {});

}  // namespace perfro
