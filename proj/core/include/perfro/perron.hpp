#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "perfro/function.hpp"
#include "perfro/jordan.hpp"
#include "perfro/matrix.hpp"

namespace perfro {

/// Outcome of a single condition. `marginal` means the quantity tested sits
/// within tolerance of the strict-inequality boundary; it counts as failure.
enum class Verdict { pass, fail, marginal };

constexpr bool holds(Verdict v) noexcept { return v == Verdict::pass; }
std::string_view to_string(Verdict v) noexcept;
/// fail > marginal > pass.
Verdict worst(Verdict a, Verdict b) noexcept;

/// The five conditions of the strong Perron-Frobenius property:
///  rho(A) > 0, rho(A) is an eigenvalue, it has a positive eigenvector, it is
///  simple, and every other eigenvalue is strictly smaller in modulus.
struct PerronReport {
  double rho = 0.0;
  Verdict rho_positive = Verdict::fail;
  Verdict rho_in_spectrum = Verdict::fail;
  /// Eigenvector of the Perron root scaled so its largest-magnitude entry is +1.
  std::optional<VecR> eigvec;
  Verdict eigvec_positive = Verdict::fail;
  Verdict simple = Verdict::fail;
  /// Eigenvalues found in the clustering disc around rho.
  std::size_t root_cluster_size = 0;
  Verdict strictly_dominant = Verdict::fail;
  /// rho minus the largest modulus among the other eigenvalues.
  double dominance_margin = 0.0;
  /// ||A x - rho x||_inf for the reported eigenvector.
  double eigvec_residual = 0.0;
  VecC spectrum;
  Verdict overall = Verdict::fail;

  bool passed() const noexcept { return holds(overall); }
  /// Names of the conditions that did not pass.
  std::vector<std::string> failed_conditions() const;
};

double spectral_radius(const MatR& a, const Tolerance& tol = {});

PerronReport strong_pf_check(const MatR& a, const Tolerance& tol = {});

struct EventualPositivityReport {
  bool eventually_positive = false;
  PerronReport matrix;
  PerronReport transpose;
};

/// A is eventually positive iff A and A^T both have the strong
/// Perron-Frobenius property.
EventualPositivityReport eventually_positive_check(const MatR& a, const Tolerance& tol = {});

/// Smallest p >= 1 with A^k > 0 entrywise for every p <= k <= k_max, or
/// nullopt when no such p exists. For k_max > 1 the positive run must hold
/// at least two powers (p < k_max). Powers are rescaled by rho(A) at each
/// step so magnitudes stay bounded.
std::optional<int> power_threshold(const MatR& a, int k_max);

/// Evidence for the two Frobenius-function conditions at a set of points:
///  (i)  conj f(lambda) == f(conj lambda)
///  (ii) |f(lambda)| < f(rho) whenever |lambda| < rho
/// together with f(rho) being a positive real.
struct FrobeniusVerdict {
  Verdict conjugate_symmetry = Verdict::pass;
  Complex symmetry_witness;
  /// |conj f(lambda) - f(conj lambda)| at the witness.
  double symmetry_defect = 0.0;

  Verdict modulus_domination = Verdict::pass;
  Complex modulus_witness;
  /// |f(lambda)| at the witness.
  double modulus_value = 0.0;

  Verdict positivity_at_rho = Verdict::fail;
  Complex f_rho;

  Verdict overall = Verdict::fail;
  std::size_t points_checked = 0;
  /// Domain violations and similar diagnostics.
  std::string detail;

  bool passed() const noexcept { return holds(overall); }
};

/// Tests the Frobenius conditions on `spectrum` and, when `grid` is given,
/// on a polar grid of that density over the disc |z| <= rho intersected with
/// f's domain. Domain violations are reported as failures, never thrown.
FrobeniusVerdict frobenius_check(const SpectralFunction& f, std::span<const Complex> spectrum,
                                 double rho, const Tolerance& tol = {},
                                 std::optional<int> grid = std::nullopt);

/// Both sides of "f(A) has the strong Perron-Frobenius property iff f is
/// Frobenius" for a matrix with that property.
struct PreservationResult {
  FrobeniusVerdict frobenius;
  bool f_is_frobenius = false;
  std::optional<MatR> f_a;
  std::optional<PerronReport> f_a_report;
  bool f_a_strong_pf = false;
  /// Why f(A) could not be formed (non-real image), empty otherwise.
  std::string f_a_failure;
  bool theorem_consistent = false;
};

/// Throws PreconditionError when R J R^-1 lacks the strong Perron-Frobenius
/// property, DomainError / NonDifferentiableError when f is not defined on
/// the spectrum. A non-real f(A) counts as "f(A) fails the property".
PreservationResult verify_preservation_theorem(const RealJordanFactors& factors,
                                               const SpectralFunction& f,
                                               const Tolerance& tol = {});

struct PreservationCase {
  const RealJordanFactors* factors;
  SpectralFunction function;
};

/// Runs independent cases on up to `workers` threads. Errors are captured
/// per case in `error`.
struct PreservationOutcome {
  std::optional<PreservationResult> result;
  std::string error;
};
std::vector<PreservationOutcome> verify_preservation_batch(std::span<const PreservationCase> cases,
                                                           const Tolerance& tol = {},
                                                           unsigned workers = 0);

struct RealityVerdict {
  bool holds = true;
  double worst_imag = 0.0;
  double at = 0.0;
  int order = 0;
};

/// |Im f^(j)(r)| <= abs_eps for every sample r and j <= max_order.
/// Throws NonDifferentiableError when f lacks the requested orders.
RealityVerdict derivative_reality_check(const SpectralFunction& f,
                                        std::span<const double> real_samples, int max_order,
                                        const Tolerance& tol = {});

struct ReflectionVerdict {
  bool holds = true;
  double worst_defect = 0.0;
  Complex at;
  int order = 0;
};

/// conj(f^(j)(z)) == f^(j)(conj z) within tolerance for all points and
/// j <= max_order.
ReflectionVerdict reflection_check(const SpectralFunction& f, std::span<const Complex> points,
                                   int max_order, const Tolerance& tol = {});

}  // namespace perfro
