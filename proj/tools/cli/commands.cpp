#include "cli/commands.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli/documents.hpp"
#include "cli/expression.hpp"
#include "cli/report.hpp"
#include "perfro/matrix_function.hpp"
#include "perfro/perron.hpp"

namespace perfro::cli {

namespace {

constexpr double kOracleFailThreshold = 1e-6;
constexpr std::size_t kOracleMinTerms = 80;

struct Options {
  double tol = Tolerance::kDefaultAbs;
  std::uint64_t seed = 0;
  std::string out_path;
  bool oracle = false;
  int kmax = 64;
  std::string fn;
  std::string format = "text";
  int grid = 0;
  std::string input;
};

struct Context {
  const Options& opts;
  Tolerance tol;
  std::ostream& out;
  std::ostream& err;

  bool json() const { return opts.format == "json"; }

  // Writes a document to --out when given, otherwise to stdout.
  void emit_document(const std::string& text) const {
    if (opts.out_path.empty()) {
      out << text;
      return;
    }
    std::ofstream file(opts.out_path, std::ios::binary);
    if (!file) throw ParseError(opts.out_path + ": cannot open for writing");
    file << text;
    if (!file) throw ParseError(opts.out_path + ": write failed");
  }
};

struct FactoredInput {
  std::string name;
  MatR matrix;
  RealJordanFactors factors;
};

Synthesis synthesize_from(const SpecDocument& doc, const Context& ctx) {
  const MatR transform =
      doc.transform ? *doc.transform : random_orthogonal_transform(doc.spec, ctx.opts.seed);
  Synthesis s = synthesize_matrix(doc.spec, transform, ctx.tol);
  if (s.condition_warning) {
    ctx.err << "warning: transform condition estimate " << s.condition << " exceeds 1e6\n";
  }
  return s;
}

FactoredInput load_factored(const Context& ctx) {
  const InputDocument doc = parse_input_document(read_file(ctx.opts.input));
  if (const auto* m = std::get_if<MatrixDocument>(&doc)) {
    if (!m->matrix.square()) throw ParseError("rows: matrix must be square");
    return {m->name, m->matrix, extract_diagonalizable_structure(m->matrix, ctx.tol)};
  }
  const auto& spec = std::get<SpecDocument>(doc);
  Synthesis s = synthesize_from(spec, ctx);
  return {spec.name, std::move(s.matrix), std::move(s.factors)};
}

MatR load_square_matrix(const Context& ctx) {
  MatrixDocument doc = parse_matrix_document(read_file(ctx.opts.input));
  if (!doc.matrix.square()) throw ParseError("rows: matrix must be square");
  return std::move(doc.matrix);
}

int cmd_check_pf(const Context& ctx) {
  const MatR a = load_square_matrix(ctx);
  const PerronReport report = strong_pf_check(a, ctx.tol);
  if (ctx.json()) {
    ctx.out << json_report(report).dump(2) << "\n";
  } else {
    ctx.out << text_report(report, "Strong Perron-Frobenius check");
  }
  return report.passed() ? kHolds : kFails;
}

int cmd_check_evpos(const Context& ctx) {
  if (ctx.opts.kmax < 1) throw ParseError("--kmax must be positive");
  const MatR a = load_square_matrix(ctx);
  const auto report = eventually_positive_check(a, ctx.tol);
  const auto threshold = power_threshold(a, ctx.opts.kmax);
  const bool disagree = report.eventually_positive != threshold.has_value();

  if (ctx.json()) {
    nlohmann::json j;
    j["matrix"] = json_report(report.matrix);
    j["transpose"] = json_report(report.transpose);
    j["eventually_positive"] = report.eventually_positive;
    j["kmax"] = ctx.opts.kmax;
    j["power_threshold"] = threshold ? nlohmann::json(*threshold) : nlohmann::json(nullptr);
    j["routes_disagree"] = disagree;
    ctx.out << j.dump(2) << "\n";
  } else {
    ctx.out << text_report(report.matrix, "A") << "\n";
    ctx.out << text_report(report.transpose, "A^T") << "\n";
    ctx.out << "eventually positive (A and A^T strong PF): "
            << (report.eventually_positive ? "yes" : "no") << "\n";
    ctx.out << "power threshold: ";
    if (threshold) {
      ctx.out << *threshold << " (A^k > 0 for " << *threshold << " <= k <= " << ctx.opts.kmax
              << ")\n";
    } else {
      ctx.out << "none <= " << ctx.opts.kmax << "\n";
    }
    if (disagree) {
      ctx.out << "\n*** DEFECT: the spectral route and the power route disagree ***\n";
    }
  }
  if (disagree) {
    ctx.err << "defect: spectral route says "
            << (report.eventually_positive ? "eventually positive" : "not eventually positive")
            << " but powers up to " << ctx.opts.kmax << " say otherwise\n";
  }
  return report.eventually_positive ? kHolds : kFails;
}

int cmd_apply(const Context& ctx) {
  if (ctx.opts.fn.empty()) throw ParseError("apply needs --fn <expression>");
  const SpectralFunction f = parse_function(ctx.opts.fn);
  if (ctx.opts.oracle && !f.entire()) {
    throw ParseError("--oracle needs an entire function (exp, pow, poly or sums of these); got " +
                     f.to_string());
  }
  const FactoredInput input = load_factored(ctx);
  MatR fa;
  try {
    fa = matrix_function(input.factors, f, ctx.tol);
  } catch (const NonRealResultError& e) {
    ctx.err << "f(A) is not real: " << e.what() << "\n";
    return kFails;
  }
  const std::string name = f.to_string() + "(" + (input.name.empty() ? "A" : input.name) + ")";
  ctx.emit_document(write_matrix_document({name, fa}));

  if (!ctx.opts.oracle) return kHolds;
  const std::size_t terms =
      std::max(kOracleMinTerms, static_cast<std::size_t>(4.0 * norm_inf(input.matrix)) + 20);
  const MatR series = taylor_oracle(input.matrix, f, terms);
  const double deviation = max_abs_diff(fa, series);
  std::ostream& report = ctx.opts.out_path.empty() ? ctx.err : ctx.out;
  report << "oracle: " << terms << "-term Taylor series, max entrywise deviation "
         << std::setprecision(3) << std::scientific << deviation << "\n";
  return deviation > kOracleFailThreshold ? kFails : kHolds;
}

int cmd_verify(const Context& ctx) {
  if (ctx.opts.fn.empty()) throw ParseError("verify needs --fn <expression>");
  const SpectralFunction f = parse_function(ctx.opts.fn);
  const FactoredInput input = load_factored(ctx);
  PreservationResult result = verify_preservation_theorem(input.factors, f, ctx.tol);
  if (ctx.opts.grid > 0) {
    // Denser evidence for the Frobenius side; the theorem itself only needs
    // the spectrum, so the consistency verdict keeps the spectrum result.
    const auto spectrum = input.factors.spec().eigenvalues();
    const auto gridded = frobenius_check(f, spectrum, input.factors.spec().spectral_radius(),
                                         ctx.tol, ctx.opts.grid);
    if (!gridded.passed() && result.f_is_frobenius) {
      ctx.err << "note: Frobenius conditions fail on the sampling grid off the spectrum\n";
    }
    if (!ctx.json()) ctx.out << "grid " << ctx.opts.grid << ":\n" << text_report(gridded) << "\n";
  }
  if (ctx.json()) {
    ctx.out << json_report(result, f.to_string()).dump(2) << "\n";
  } else {
    ctx.out << text_report(result, f.to_string());
  }
  return result.theorem_consistent ? kHolds : kFails;
}

int cmd_synthesize(const Context& ctx) {
  const SpecDocument doc = parse_spec_document(read_file(ctx.opts.input));
  const Synthesis s = synthesize_from(doc, ctx);
  ctx.emit_document(write_matrix_document({doc.name.empty() ? "synthesized" : doc.name, s.matrix}));
  ctx.err << "condition estimate: " << std::setprecision(6) << s.condition << "\n";
  return kHolds;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opts;
  CLI::App app{"Matrix functions via real Jordan forms and strong Perron-Frobenius checks",
               "perfro"};
  app.require_subcommand(1);
  app.add_option("--tol", opts.tol, "absolute and relative comparison tolerance")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", opts.seed, "seed for random transforms");
  app.add_option("--out", opts.out_path, "write the output document to this path");
  app.add_flag("--oracle", opts.oracle, "cross-check f(A) against its Taylor series");
  app.add_option("--kmax", opts.kmax, "largest power examined by check-evpos");
  app.add_option("--fn", opts.fn, "function expression, e.g. exp or 0.5*exp + poly:1,2");
  app.add_option("--format", opts.format, "report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--grid", opts.grid, "polar sampling density for the Frobenius check");

  struct Sub {
    const char* name;
    const char* help;
    const char* input_help;
    int (*handler)(const Context&);
  };
  const Sub subs[] = {
      {"check-pf", "check the strong Perron-Frobenius property", "matrix document",
       cmd_check_pf},
      {"check-evpos", "check eventual positivity by spectrum and by powers", "matrix document",
       cmd_check_evpos},
      {"apply", "evaluate f(A) and print it as a matrix document",
       "matrix or spec document", cmd_apply},
      {"verify", "check that f(A) is strong PF exactly when f is Frobenius",
       "spec or matrix document", cmd_verify},
      {"synthesize", "build a matrix with a prescribed real Jordan structure", "spec document",
       cmd_synthesize},
  };
  std::vector<std::pair<CLI::App*, int (*)(const Context&)>> handlers;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("input", opts.input, s.input_help)->required();
    sub->fallthrough();
    handlers.emplace_back(sub, s.handler);
  }

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kHolds;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kHolds;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    const Context ctx{opts, Tolerance(opts.tol, opts.tol), out, err};
    for (const auto& [sub, handler] : handlers) {
      if (sub->parsed()) return handler(ctx);
    }
    err << "error: no command given\n";
    return kUsageError;
  } catch (const ParseError& e) {
    err << "error: " << opts.input << ": " << e.what() << "\n";
  } catch (const DefectiveMatrixError& e) {
    err << "error: " << e.what() << "\n"
        << "hint: write a spec document (real_blocks, complex_blocks, transform) for "
           "non-diagonalizable input\n";
  } catch (const DomainError& e) {
    err << "error: function is not defined on the spectrum: " << e.what() << "\n";
  } catch (const NonDifferentiableError& e) {
    err << "error: function is not defined on the spectrum: " << e.what() << "\n"
        << "hint: Jordan blocks of size k need derivatives up to order k-1\n";
  } catch (const PreconditionError& e) {
    err << "error: " << e.what()
        << "; verify needs a matrix with a simple, strictly dominant positive root and a "
           "positive eigenvector\n";
  } catch (const IllConditionedError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kUsageError;
}

}  // namespace perfro::cli
