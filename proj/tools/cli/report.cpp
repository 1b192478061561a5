#include "cli/report.hpp"

#include <cstdio>
#include <sstream>

namespace perfro::cli {

using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

std::string line(const std::string& label, Verdict v, const std::string& extra = {}) {
  std::string s = "  " + label;
  s.resize(27, ' ');
  s += std::string(to_string(v));
  if (!extra.empty()) s += "  (" + extra + ")";
  return s + "\n";
}

}  // namespace

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return num(z.real());
  return num(z.real()) + (z.imag() < 0 ? " - " : " + ") + num(std::abs(z.imag())) + "i";
}

std::string text_report(const PerronReport& r, const std::string& title) {
  std::ostringstream os;
  os << title << "\n";
  os << "  spectral radius       " << num(r.rho) << "\n";
  os << line("(i)   rho > 0", r.rho_positive);
  os << line("(ii)  rho in spectrum", r.rho_in_spectrum);
  std::string vec;
  if (r.eigvec) {
    vec = "x = [";
    for (std::size_t i = 0; i < r.eigvec->size(); ++i) {
      vec += (i ? ", " : "") + num((*r.eigvec)[i]);
    }
    vec += "], residual " + num(r.eigvec_residual);
  } else {
    vec = "no real eigenvector at rho";
  }
  os << line("(iii) positive vector", r.eigvec_positive, vec);
  os << line("(iv)  simple", r.simple,
             std::to_string(r.root_cluster_size) + " eigenvalue(s) at rho");
  os << line("(v)   strictly dominant", r.strictly_dominant,
             "margin " + num(r.dominance_margin));
  os << "  strong Perron-Frobenius: " << (r.passed() ? "yes" : "no") << "\n";
  const auto failed = r.failed_conditions();
  if (!failed.empty()) {
    os << "  failed:";
    for (const auto& f : failed) os << " " << f;
    os << "\n";
  }
  return os.str();
}

json json_report(const PerronReport& r) {
  json j;
  j["rho"] = r.rho;
  j["rho_positive"] = to_string(r.rho_positive);
  j["rho_in_spectrum"] = to_string(r.rho_in_spectrum);
  j["eigvec"] = r.eigvec ? json(*r.eigvec) : json(nullptr);
  j["eigvec_positive"] = to_string(r.eigvec_positive);
  j["eigvec_residual"] = r.eigvec_residual;
  j["simple"] = to_string(r.simple);
  j["root_cluster_size"] = r.root_cluster_size;
  j["strictly_dominant"] = to_string(r.strictly_dominant);
  j["dominance_margin"] = r.dominance_margin;
  json spectrum = json::array();
  for (const auto& z : r.spectrum) spectrum.push_back(complex_json(z));
  j["spectrum"] = spectrum;
  j["overall"] = to_string(r.overall);
  j["failed"] = r.failed_conditions();
  return j;
}

std::string text_report(const FrobeniusVerdict& v) {
  std::ostringstream os;
  os << "Frobenius conditions (" << v.points_checked << " points)\n";
  os << line("conjugate symmetry", v.conjugate_symmetry,
             "worst defect " + num(v.symmetry_defect) + " at " +
                 format_complex(v.symmetry_witness));
  os << line("modulus domination", v.modulus_domination,
             "max |f(lambda)| " + num(v.modulus_value) + " at " +
                 format_complex(v.modulus_witness) + " vs f(rho) " + format_complex(v.f_rho));
  os << line("f(rho) > 0", v.positivity_at_rho, "f(rho) = " + format_complex(v.f_rho));
  if (!v.detail.empty()) os << "  note: " << v.detail << "\n";
  os << "  Frobenius on the spectrum: " << (v.passed() ? "yes" : "no") << "\n";
  return os.str();
}

json json_report(const FrobeniusVerdict& v) {
  json j;
  j["conjugate_symmetry"] = {{"verdict", to_string(v.conjugate_symmetry)},
                             {"witness", complex_json(v.symmetry_witness)},
                             {"defect", v.symmetry_defect}};
  j["modulus_domination"] = {{"verdict", to_string(v.modulus_domination)},
                             {"witness", complex_json(v.modulus_witness)},
                             {"modulus", v.modulus_value},
                             {"f_rho", complex_json(v.f_rho)}};
  j["positivity_at_rho"] = to_string(v.positivity_at_rho);
  j["points_checked"] = v.points_checked;
  j["detail"] = v.detail;
  j["overall"] = to_string(v.overall);
  return j;
}

std::string text_report(const PreservationResult& r, const std::string& function) {
  std::ostringstream os;
  os << "f = " << function << "\n\n";
  os << text_report(r.frobenius) << "\n";
  if (r.f_a_report) {
    os << text_report(*r.f_a_report, "f(A)");
  } else {
    os << "f(A)\n  not real: " << r.f_a_failure << "\n";
  }
  os << "\n";
  os << "f is Frobenius:          " << (r.f_is_frobenius ? "yes" : "no") << "\n";
  os << "f(A) strong PF:          " << (r.f_a_strong_pf ? "yes" : "no") << "\n";
  os << "theorem consistent:      " << (r.theorem_consistent ? "yes" : "NO") << "\n";
  return os.str();
}

json json_report(const PreservationResult& r, const std::string& function) {
  json j;
  j["function"] = function;
  j["frobenius"] = json_report(r.frobenius);
  j["f_is_frobenius"] = r.f_is_frobenius;
  j["f_a_report"] = r.f_a_report ? json_report(*r.f_a_report) : json(nullptr);
  j["f_a_failure"] = r.f_a_failure;
  j["f_a_strong_pf"] = r.f_a_strong_pf;
  j["theorem_consistent"] = r.theorem_consistent;
  return j;
}

}  // namespace perfro::cli
