#include "perfro/function.hpp"

#include <charconv>
#include <cmath>
#include <variant>

namespace perfro {

namespace detail {

struct MonomialNode {
  int p;
};
struct RootNode {
  int p;
};
struct AbsNode {};
struct ExpNode {};
struct PolynomialNode {
  std::vector<double> coeffs;
};
struct SumNode {
  std::vector<std::pair<double, SpectralFunction>> terms;
};
struct CustomNode {
  std::string name;
  SpectralFunction::DerivativeFn derivative;
  DomainDescriptor domain;
  int max_order;
  std::optional<std::vector<double>> taylor;
};

}  // namespace detail

using namespace detail;

namespace {

Complex int_power(Complex z, int n) {
  Complex result = 1.0;
  Complex base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

// Root branch: principal off the negative real axis, real root on it for
// odd p. Positive reals use the real pow for exact realness.
Complex branch_root(Complex z, int p) {
  if (z.imag() == 0.0) {
    const double x = z.real();
    if (x >= 0.0) return std::pow(x, 1.0 / p);
    return -std::pow(-x, 1.0 / p);  // only reached for odd p
  }
  return std::exp(std::log(z) / static_cast<double>(p));
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

struct SpectralFunction::Node {
  std::variant<MonomialNode, RootNode, AbsNode, ExpNode, PolynomialNode, SumNode, CustomNode>
      kind;
};

bool DomainDescriptor::contains(Complex z) const noexcept {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  if (excludes_nonpositive_reals && z.imag() == 0.0 && z.real() <= 0.0) return false;
  if (excludes_origin && z == Complex(0.0, 0.0)) return false;
  return true;
}

SpectralFunction SpectralFunction::monomial(int p) {
  if (p < 1) throw std::invalid_argument("monomial exponent must be positive");
  return SpectralFunction(std::make_shared<const Node>(Node{MonomialNode{p}}));
}

SpectralFunction SpectralFunction::root(int p) {
  if (p < 2) throw std::invalid_argument("root order must be at least 2");
  return SpectralFunction(std::make_shared<const Node>(Node{RootNode{p}}));
}

SpectralFunction SpectralFunction::abs() {
  return SpectralFunction(std::make_shared<const Node>(Node{AbsNode{}}));
}

SpectralFunction SpectralFunction::exp() {
  return SpectralFunction(std::make_shared<const Node>(Node{ExpNode{}}));
}

SpectralFunction SpectralFunction::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("polynomial needs at least one coefficient");
  return SpectralFunction(std::make_shared<const Node>(Node{PolynomialNode{std::move(coeffs)}}));
}

SpectralFunction SpectralFunction::scaled_sum(
    std::vector<std::pair<double, SpectralFunction>> terms) {
  if (terms.empty()) throw std::invalid_argument("scaled sum needs at least one term");
  return SpectralFunction(std::make_shared<const Node>(Node{SumNode{std::move(terms)}}));
}

SpectralFunction SpectralFunction::custom(std::string name, DerivativeFn derivative,
                                          DomainDescriptor domain, int max_order,
                                          std::optional<std::vector<double>> taylor) {
  if (!derivative) throw std::invalid_argument("custom function needs a derivative callback");
  return SpectralFunction(std::make_shared<const Node>(
      Node{CustomNode{std::move(name), std::move(derivative), domain, max_order,
                      std::move(taylor)}}));
}

DomainDescriptor SpectralFunction::domain() const {
  return std::visit(
      [](const auto& n) -> DomainDescriptor {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, RootNode>) {
          return n.p % 2 == 0 ? DomainDescriptor{true, true} : DomainDescriptor{false, true};
        } else if constexpr (std::is_same_v<T, SumNode>) {
          DomainDescriptor d;
          for (const auto& [w, f] : n.terms) d = d.intersect(f.domain());
          return d;
        } else if constexpr (std::is_same_v<T, CustomNode>) {
          return n.domain;
        } else {
          return {};
        }
      },
      node_->kind);
}

int SpectralFunction::max_order() const {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AbsNode>) {
          return 0;
        } else if constexpr (std::is_same_v<T, SumNode>) {
          int m = kUnbounded;
          for (const auto& [w, f] : n.terms) m = std::min(m, f.max_order());
          return m;
        } else if constexpr (std::is_same_v<T, CustomNode>) {
          return n.max_order;
        } else {
          return kUnbounded;
        }
      },
      node_->kind);
}

Complex SpectralFunction::deriv(Complex z, int order) const {
  if (order < 0) throw std::invalid_argument("derivative order must be nonnegative");
  if (!domain().contains(z)) {
    throw DomainError(to_string() + " is not defined at (" + format_double(z.real()) + ", " +
                          format_double(z.imag()) + ")",
                      z);
  }
  if (order > max_order()) {
    throw NonDifferentiableError(
        to_string() + " has no derivative of order " + std::to_string(order), order);
  }
  return std::visit(
      [&](const auto& n) -> Complex {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MonomialNode>) {
          if (order > n.p) return 0.0;
          double falling = 1.0;
          for (int i = 0; i < order; ++i) falling *= n.p - i;
          return falling * int_power(z, n.p - order);
        } else if constexpr (std::is_same_v<T, RootNode>) {
          const Complex r = branch_root(z, n.p);
          if (order == 0) return r;
          const double e = 1.0 / n.p;
          double falling = 1.0;
          for (int i = 0; i < order; ++i) falling *= e - i;
          return falling * r / int_power(z, order);
        } else if constexpr (std::is_same_v<T, AbsNode>) {
          return std::abs(z);
        } else if constexpr (std::is_same_v<T, ExpNode>) {
          return std::exp(z);
        } else if constexpr (std::is_same_v<T, PolynomialNode>) {
          const int degree = static_cast<int>(n.coeffs.size()) - 1;
          if (order > degree) return 0.0;
          Complex acc = 0.0;
          for (int k = degree; k >= order; --k) {
            double falling = 1.0;
            for (int i = 0; i < order; ++i) falling *= k - i;
            acc = acc * z + falling * n.coeffs[k];
          }
          return acc;
        } else if constexpr (std::is_same_v<T, SumNode>) {
          Complex acc = 0.0;
          for (const auto& [w, f] : n.terms) acc += w * f.deriv(z, order);
          return acc;
        } else {
          return n.derivative(z, order);
        }
      },
      node_->kind);
}

std::optional<std::vector<double>> SpectralFunction::taylor_coefficients(
    std::size_t terms) const {
  return std::visit(
      [&](const auto& n) -> std::optional<std::vector<double>> {
        using T = std::decay_t<decltype(n)>;
        std::vector<double> c(terms, 0.0);
        if constexpr (std::is_same_v<T, MonomialNode>) {
          if (static_cast<std::size_t>(n.p) < terms) c[n.p] = 1.0;
          return c;
        } else if constexpr (std::is_same_v<T, ExpNode>) {
          double term = 1.0;
          for (std::size_t k = 0; k < terms; ++k) {
            c[k] = term;
            term /= static_cast<double>(k + 1);
          }
          return c;
        } else if constexpr (std::is_same_v<T, PolynomialNode>) {
          for (std::size_t k = 0; k < std::min(terms, n.coeffs.size()); ++k) c[k] = n.coeffs[k];
          return c;
        } else if constexpr (std::is_same_v<T, SumNode>) {
          for (const auto& [w, f] : n.terms) {
            auto sub = f.taylor_coefficients(terms);
            if (!sub) return std::nullopt;
            for (std::size_t k = 0; k < terms; ++k) c[k] += w * (*sub)[k];
          }
          return c;
        } else if constexpr (std::is_same_v<T, CustomNode>) {
          if (!n.taylor) return std::nullopt;
          for (std::size_t k = 0; k < std::min(terms, n.taylor->size()); ++k) {
            c[k] = (*n.taylor)[k];
          }
          return c;
        } else {
          return std::nullopt;
        }
      },
      node_->kind);
}

bool SpectralFunction::entire() const { return taylor_coefficients(1).has_value(); }

void SpectralFunction::collect_terms(
    double weight, std::vector<std::pair<double, SpectralFunction>>& out) const {
  if (const auto* sum = std::get_if<SumNode>(&node_->kind)) {
    for (const auto& [w, f] : sum->terms) f.collect_terms(weight * w, out);
    return;
  }
  out.emplace_back(weight, *this);
}

std::string SpectralFunction::to_string() const {
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MonomialNode>) {
          return "pow:" + std::to_string(n.p);
        } else if constexpr (std::is_same_v<T, RootNode>) {
          return "root:" + std::to_string(n.p);
        } else if constexpr (std::is_same_v<T, AbsNode>) {
          return "abs";
        } else if constexpr (std::is_same_v<T, ExpNode>) {
          return "exp";
        } else if constexpr (std::is_same_v<T, PolynomialNode>) {
          std::string s = "poly:";
          for (std::size_t k = 0; k < n.coeffs.size(); ++k) {
            if (k) s += ',';
            s += format_double(n.coeffs[k]);
          }
          return s;
        } else if constexpr (std::is_same_v<T, SumNode>) {
          std::vector<std::pair<double, SpectralFunction>> flat;
          collect_terms(1.0, flat);
          std::string s;
          for (std::size_t k = 0; k < flat.size(); ++k) {
            if (k) s += " + ";
            if (flat[k].first != 1.0) s += format_double(flat[k].first) + "*";
            s += flat[k].second.to_string();
          }
          return s;
        } else {
          return n.name;
        }
      },
      node_->kind);
}

SpectrumSupport defined_on_spectrum(const SpectralFunction& f, const JordanSpec& spec,
                                    const Tolerance& tol) {
  const auto domain = f.domain();
  const int available = f.max_order();
  for (const auto& d : spec.distinct_eigenvalues(tol)) {
    if (!domain.contains(d.value)) {
      return {false, d.value, 0,
              f.to_string() + " is not defined at the eigenvalue (" +
                  format_double(d.value.real()) + ", " + format_double(d.value.imag()) + ")"};
    }
    if (d.index - 1 > available) {
      return {false, d.value, available + 1,
              f.to_string() + " lacks the derivative of order " +
                  std::to_string(available + 1) + " required by a Jordan block of size " +
                  std::to_string(d.index) + " at (" + format_double(d.value.real()) + ", " +
                  format_double(d.value.imag()) + ")"};
    }
  }
  return {};
}

}  // namespace perfro
