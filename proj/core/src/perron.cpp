#include "perfro/perron.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "perfro/eigen.hpp"
#include "perfro/matrix_function.hpp"

namespace perfro {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::marginal:
      return "marginal";
  }
  return "fail";
}

Verdict worst(Verdict a, Verdict b) noexcept {
  if (a == Verdict::fail || b == Verdict::fail) return Verdict::fail;
  if (a == Verdict::marginal || b == Verdict::marginal) return Verdict::marginal;
  return Verdict::pass;
}

namespace {

Verdict verdict_of(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

}  // namespace

std::vector<std::string> PerronReport::failed_conditions() const {
  std::vector<std::string> out;
  if (!holds(rho_positive)) out.emplace_back("rho_positive");
  if (!holds(rho_in_spectrum)) out.emplace_back("rho_in_spectrum");
  if (!holds(eigvec_positive)) out.emplace_back("eigvec_positive");
  if (!holds(simple)) out.emplace_back("simple");
  if (!holds(strictly_dominant)) out.emplace_back("strictly_dominant");
  return out;
}

double spectral_radius(const MatR& a, const Tolerance& tol) {
  double rho = 0.0;
  for (const auto& v : eigenvalues(a, tol)) rho = std::max(rho, std::abs(v));
  return rho;
}

PerronReport strong_pf_check(const MatR& a, const Tolerance& tol) {
  PerronReport report;
  if (!a.square() || a.empty()) return report;

  const auto eig = eigen_decompose(a, tol);
  report.spectrum = eig.values;
  const double norm = norm_inf(a);
  for (const auto& v : eig.values) report.rho = std::max(report.rho, std::abs(v));
  const double rho = report.rho;

  report.rho_positive = verdict_of(rho > tol.abs_eps());

  // Candidate Perron root: the eigenvalue closest to +rho.
  std::size_t root = 0;
  for (std::size_t k = 1; k < eig.values.size(); ++k) {
    if (std::abs(eig.values[k] - rho) < std::abs(eig.values[root] - rho)) root = k;
  }
  const Complex candidate = eig.values[root];
  const bool real_root = candidate.imag() == 0.0 ||
                         std::abs(candidate.imag()) <= tol.threshold(rho);
  report.rho_in_spectrum = verdict_of(real_root && tol.equal(candidate, rho));

  const double radius = std::max(cluster_radius(norm), tol.threshold(rho));
  for (const auto& v : eig.values) {
    if (std::abs(v - candidate) <= radius) ++report.root_cluster_size;
  }
  report.simple = verdict_of(report.root_cluster_size == 1);

  double other = 0.0;
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    if (k != root) other = std::max(other, std::abs(eig.values[k]));
  }
  report.dominance_margin = rho - other;
  report.strictly_dominant = verdict_of(report.dominance_margin > tol.threshold(rho));

  if (holds(report.rho_in_spectrum)) {
    const std::size_t n = a.rows();
    VecR x(n);
    std::size_t arg = 0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = eig.vectors(i, root).real();
      if (std::abs(x[i]) > std::abs(x[arg])) arg = i;
    }
    const double scale = x[arg];
    if (scale != 0.0) {
      for (double& v : x) v /= scale;
    }
    const VecR ax = a * std::span<const double>(x);
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      residual = std::max(residual, std::abs(ax[i] - rho * x[i]));
    }
    report.eigvec_residual = residual;
    report.eigvec_positive = verdict_of(
        scale != 0.0 &&
        std::all_of(x.begin(), x.end(), [&](double v) { return v > tol.abs_eps(); }));
    report.eigvec = std::move(x);
  }

  report.overall = verdict_of(holds(report.rho_positive) && holds(report.rho_in_spectrum) &&
                              holds(report.eigvec_positive) && holds(report.simple) &&
                              holds(report.strictly_dominant));
  return report;
}

EventualPositivityReport eventually_positive_check(const MatR& a, const Tolerance& tol) {
  EventualPositivityReport out;
  out.matrix = strong_pf_check(a, tol);
  out.transpose = strong_pf_check(transpose(a), tol);
  out.eventually_positive = out.matrix.passed() && out.transpose.passed();
  return out;
}

std::optional<int> power_threshold(const MatR& a, int k_max) {
  if (k_max < 1) throw std::invalid_argument("power_threshold: k_max must be positive");
  if (!a.square() || a.empty()) throw DimensionError("power_threshold: matrix is not square");

  const double rho = spectral_radius(a);
  const MatR step = rho > 0.0 ? (1.0 / rho) * a : a;
  std::vector<bool> positive(static_cast<std::size_t>(k_max) + 1, false);
  MatR power = step;
  for (int k = 1; k <= k_max; ++k) {
    positive[k] = entrywise_positive(power);
    if (k == k_max) break;
    power = power * step;
    // Positivity is scale invariant, so renormalize if the scaled powers
    // still drift (non-dominant or nilpotent parts).
    const double m = max_abs_entry(power);
    if (m == 0.0) {
      for (int j = k + 1; j <= k_max; ++j) positive[j] = false;
      break;
    }
    if (m > 1e100 || m < 1e-100) power = (1.0 / m) * power;
  }
  if (!positive[k_max]) return std::nullopt;
  int p = k_max;
  while (p > 1 && positive[p - 1]) --p;
  // A lone positive power at the horizon is what a period-two competitor
  // (eigenvalue -rho) produces at even k; demand a second confirming power.
  if (k_max > 1 && p == k_max) return std::nullopt;
  return p;
}

namespace {

struct GridPoint {
  Complex z;
  bool from_spectrum;
};

std::vector<GridPoint> sample_points(std::span<const Complex> spectrum, double rho,
                                     std::optional<int> grid) {
  std::vector<GridPoint> points;
  points.reserve(spectrum.size());
  for (const auto& z : spectrum) points.push_back({z, true});
  if (grid && *grid > 0) {
    const int radial = *grid;
    const int angular = 4 * *grid;
    points.push_back({Complex(0.0, 0.0), false});
    for (int i = 1; i < radial; ++i) {
      const double r = rho * static_cast<double>(i) / radial;
      for (int j = 0; j < angular; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / angular;
        points.push_back({std::polar(r, theta), false});
      }
    }
  }
  return points;
}

}  // namespace

FrobeniusVerdict frobenius_check(const SpectralFunction& f, std::span<const Complex> spectrum,
                                 double rho, const Tolerance& tol, std::optional<int> grid) {
  FrobeniusVerdict v;
  const DomainDescriptor domain = f.domain();

  if (!domain.contains(Complex(rho, 0.0))) {
    v.positivity_at_rho = Verdict::fail;
    v.modulus_domination = Verdict::fail;
    v.detail = f.to_string() + " is not defined at rho = " + std::to_string(rho);
    v.overall = Verdict::fail;
    return v;
  }
  v.f_rho = f.eval(rho);
  const double f_rho_real = v.f_rho.real();
  const bool rho_real = std::abs(v.f_rho.imag()) <= tol.threshold(std::abs(v.f_rho));
  if (!rho_real || f_rho_real < -tol.abs_eps()) {
    v.positivity_at_rho = Verdict::fail;
  } else if (f_rho_real <= tol.abs_eps()) {
    v.positivity_at_rho = Verdict::marginal;
  } else {
    v.positivity_at_rho = Verdict::pass;
  }

  const double inner = rho - tol.threshold(rho);
  double worst_gap = std::numeric_limits<double>::infinity();
  for (const auto& point : sample_points(spectrum, rho, grid)) {
    const Complex z = point.z;
    if (!domain.contains(z) || !domain.contains(std::conj(z))) {
      if (point.from_spectrum) {
        v.conjugate_symmetry = Verdict::fail;
        v.symmetry_witness = z;
        v.symmetry_defect = std::numeric_limits<double>::infinity();
        if (!v.detail.empty()) v.detail += "; ";
        v.detail += f.to_string() + " is not defined at spectrum point (" +
                    std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
      }
      continue;
    }
    ++v.points_checked;
    const Complex fz = f.eval(z);
    const Complex fconj = f.eval(std::conj(z));
    const double defect = std::abs(std::conj(fz) - fconj);
    if (!tol.equal(std::conj(fz), fconj)) {
      v.conjugate_symmetry = Verdict::fail;
    }
    if (defect > v.symmetry_defect) {
      v.symmetry_defect = defect;
      v.symmetry_witness = z;
    }

    if (std::abs(z) < inner) {
      const double modulus = std::abs(fz);
      const double gap = f_rho_real - modulus;
      Verdict local = Verdict::pass;
      if (!rho_real) {
        local = Verdict::fail;
      } else if (gap > tol.abs_eps()) {
        local = Verdict::pass;
      } else if (gap >= -tol.abs_eps()) {
        local = Verdict::marginal;
      } else {
        local = Verdict::fail;
      }
      v.modulus_domination = worst(v.modulus_domination, local);
      if (gap < worst_gap) {
        worst_gap = gap;
        v.modulus_witness = z;
        v.modulus_value = modulus;
      }
    }
  }

  v.overall = worst(worst(v.conjugate_symmetry, v.modulus_domination), v.positivity_at_rho);
  if (v.overall == Verdict::marginal) v.overall = Verdict::fail;
  return v;
}

PreservationResult verify_preservation_theorem(const RealJordanFactors& factors,
                                               const SpectralFunction& f,
                                               const Tolerance& tol) {
  const MatR a = factors.reconstruct();
  if (!strong_pf_check(a, tol).passed()) {
    throw PreconditionError(
        "the synthesized matrix does not have the strong Perron-Frobenius property");
  }
  if (auto support = defined_on_spectrum(f, factors.spec(), tol); !support) {
    if (support.order == 0) throw DomainError(support.reason, support.lambda);
    throw NonDifferentiableError(support.reason, support.order);
  }

  PreservationResult out;
  const VecC spectrum = factors.spec().eigenvalues();
  out.frobenius = frobenius_check(f, spectrum, factors.spec().spectral_radius(), tol);
  out.f_is_frobenius = out.frobenius.passed();

  try {
    MatR fa = matrix_function(factors, f, tol);
    out.f_a_report = strong_pf_check(fa, tol);
    out.f_a_strong_pf = out.f_a_report->passed();
    out.f_a = std::move(fa);
  } catch (const NonRealResultError& e) {
    out.f_a_strong_pf = false;
    out.f_a_failure = e.what();
  }
  out.theorem_consistent = out.f_is_frobenius == out.f_a_strong_pf;
  return out;
}

std::vector<PreservationOutcome> verify_preservation_batch(std::span<const PreservationCase> cases,
                                                           const Tolerance& tol,
                                                           unsigned workers) {
  std::vector<PreservationOutcome> out(cases.size());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, cases.size())));

  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      try {
        out[i].result = verify_preservation_theorem(*cases[i].factors, cases[i].function, tol);
      } catch (const std::exception& e) {
        out[i].error = e.what();
      }
    }
  };
  if (workers == 1) {
    run();
    return out;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  return out;
}

RealityVerdict derivative_reality_check(const SpectralFunction& f,
                                        std::span<const double> real_samples, int max_order,
                                        const Tolerance& tol) {
  if (max_order > f.max_order()) {
    throw NonDifferentiableError(
        f.to_string() + " has no derivative of order " + std::to_string(max_order), max_order);
  }
  RealityVerdict v;
  for (double r : real_samples) {
    for (int j = 0; j <= max_order; ++j) {
      const double im = std::abs(f.deriv(Complex(r, 0.0), j).imag());
      if (im > v.worst_imag) {
        v.worst_imag = im;
        v.at = r;
        v.order = j;
      }
      if (im > tol.abs_eps()) v.holds = false;
    }
  }
  return v;
}

ReflectionVerdict reflection_check(const SpectralFunction& f, std::span<const Complex> points,
                                   int max_order, const Tolerance& tol) {
  ReflectionVerdict v;
  for (const auto& z : points) {
    for (int j = 0; j <= max_order; ++j) {
      const Complex a = std::conj(f.deriv(z, j));
      const Complex b = f.deriv(std::conj(z), j);
      const double defect = std::abs(a - b);
      if (defect > v.worst_defect) {
        v.worst_defect = defect;
        v.at = z;
        v.order = j;
      }
      if (!tol.equal(a, b)) v.holds = false;
    }
  }
  return v;
}

}  // namespace perfro
