#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "cli/expression.hpp"
#include "perfro/jordan.hpp"
#include "perfro/matrix.hpp"

namespace perfro::cli {

/// {"name": "...", "rows": [[...], ...]}
struct MatrixDocument {
  std::string name;
  MatR matrix;
};

/// {"name": "...",
///  "real_blocks": [{"lambda": x, "size": k}, ...],
///  "complex_blocks": [{"re": x, "im": y, "size": k}, ...],
///  "transform": [[...], ...]}            (transform optional)
struct SpecDocument {
  std::string name;
  JordanSpec spec;
  std::optional<MatR> transform;
};

using InputDocument = std::variant<MatrixDocument, SpecDocument>;

/// Throws ParseError with a line/column position for syntax errors and a
/// field path for structural errors.
MatrixDocument parse_matrix_document(std::string_view text);
SpecDocument parse_spec_document(std::string_view text);

/// Dispatches on the fields present: "rows" means a matrix document,
/// "real_blocks" or "complex_blocks" a spec document.
InputDocument parse_input_document(std::string_view text);

/// Numbers are written in shortest round-trip form, so the output parses
/// back to identical doubles.
std::string write_matrix_document(const MatrixDocument& doc);
std::string write_spec_document(const SpecDocument& doc);

/// Reads a whole file; throws ParseError when it cannot be read or is empty.
std::string read_file(const std::string& path);

}  // namespace perfro::cli
