#include "cli/documents.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace perfro::cli {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw ParseError("line 1, column 1: document is empty");
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (auto p = what.find("syntax error"); p != std::string::npos) what = what.substr(p);
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                     ": " + what);
  }
}

double number_at(const json& v, const std::string& path) {
  if (!v.is_number()) throw ParseError(path + ": expected a number");
  return v.get<double>();
}

int size_at(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw ParseError(path + ": expected a positive integer");
  }
  return v.get<int>();
}

MatR rows_at(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) throw ParseError(path + ": expected a nonempty list of rows");
  const std::size_t rows = v.size();
  std::size_t cols = 0;
  std::vector<double> entries;
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    const json& row = v[i];
    if (!row.is_array() || row.empty()) throw ParseError(row_path + ": expected a nonempty list");
    if (i == 0) cols = row.size();
    if (row.size() != cols) {
      throw ParseError(row_path + ": has " + std::to_string(row.size()) +
                       " entries, expected " + std::to_string(cols));
    }
    for (std::size_t j = 0; j < cols; ++j) {
      entries.push_back(number_at(row[j], row_path + "[" + std::to_string(j) + "]"));
    }
  }
  return MatR(rows, cols, std::move(entries));
}

std::string name_of(const json& doc) {
  if (!doc.contains("name")) return {};
  if (!doc["name"].is_string()) throw ParseError("name: expected a string");
  return doc["name"].get<std::string>();
}

MatrixDocument matrix_from(const json& doc) {
  if (!doc.is_object()) throw ParseError("document: expected an object");
  if (!doc.contains("rows")) throw ParseError("document: missing field \"rows\"");
  return {name_of(doc), rows_at(doc["rows"], "rows")};
}

SpecDocument spec_from(const json& doc) {
  if (!doc.is_object()) throw ParseError("document: expected an object");
  std::vector<RealBlock> real;
  std::vector<ComplexBlock> complex;
  if (doc.contains("real_blocks")) {
    const json& list = doc["real_blocks"];
    if (!list.is_array()) throw ParseError("real_blocks: expected a list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = "real_blocks[" + std::to_string(i) + "]";
      const json& b = list[i];
      if (!b.is_object() || !b.contains("lambda") || !b.contains("size")) {
        throw ParseError(path + ": expected {\"lambda\": number, \"size\": int}");
      }
      real.push_back({number_at(b["lambda"], path + ".lambda"), size_at(b["size"], path + ".size")});
    }
  }
  if (doc.contains("complex_blocks")) {
    const json& list = doc["complex_blocks"];
    if (!list.is_array()) throw ParseError("complex_blocks: expected a list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = "complex_blocks[" + std::to_string(i) + "]";
      const json& b = list[i];
      if (!b.is_object() || !b.contains("re") || !b.contains("im") || !b.contains("size")) {
        throw ParseError(path + ": expected {\"re\": number, \"im\": number, \"size\": int}");
      }
      const double im = number_at(b["im"], path + ".im");
      if (!(im > 0.0)) throw ParseError(path + ".im: must be > 0 (conjugate is implied)");
      complex.push_back(
          {Complex(number_at(b["re"], path + ".re"), im), size_at(b["size"], path + ".size")});
    }
  }
  if (real.empty() && complex.empty()) {
    throw ParseError("document: spec needs at least one of real_blocks, complex_blocks");
  }
  SpecDocument out{name_of(doc), JordanSpec{}, std::nullopt};
  try {
    out.spec = JordanSpec(std::move(real), std::move(complex));
  } catch (const InvalidSpecError& e) {
    throw ParseError(std::string("spec: ") + e.what());
  }
  if (doc.contains("transform")) {
    MatR t = rows_at(doc["transform"], "transform");
    if (!t.square() || t.rows() != out.spec.total_dimension()) {
      throw ParseError("transform: must be square of dimension " +
                       std::to_string(out.spec.total_dimension()));
    }
    out.transform = std::move(t);
  }
  return out;
}

std::string number_text(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("cannot serialize a non-finite entry");
  return json(v).dump();
}

void write_rows(std::ostringstream& os, const MatR& m, const std::string& indent) {
  os << "[\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << indent << "  [";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << number_text(m(i, j));
    }
    os << "]" << (i + 1 < m.rows() ? "," : "") << "\n";
  }
  os << indent << "]";
}

}  // namespace

MatrixDocument parse_matrix_document(std::string_view text) {
  return matrix_from(parse_json(text));
}

SpecDocument parse_spec_document(std::string_view text) { return spec_from(parse_json(text)); }

InputDocument parse_input_document(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("document: expected an object");
  if (doc.contains("rows")) return matrix_from(doc);
  if (doc.contains("real_blocks") || doc.contains("complex_blocks")) return spec_from(doc);
  throw ParseError("document: expected \"rows\" (matrix) or \"real_blocks\"/\"complex_blocks\" (spec)");
}

std::string write_matrix_document(const MatrixDocument& doc) {
  std::ostringstream os;
  os << "{\n  \"name\": " << json(doc.name).dump() << ",\n  \"rows\": ";
  write_rows(os, doc.matrix, "  ");
  os << "\n}\n";
  return os.str();
}

std::string write_spec_document(const SpecDocument& doc) {
  std::ostringstream os;
  os << "{\n  \"name\": " << json(doc.name).dump() << ",\n  \"real_blocks\": [";
  const auto& real = doc.spec.real_blocks();
  for (std::size_t i = 0; i < real.size(); ++i) {
    os << (i ? ", " : "") << "{\"lambda\": " << number_text(real[i].lambda)
       << ", \"size\": " << real[i].size << "}";
  }
  os << "],\n  \"complex_blocks\": [";
  const auto& cplx = doc.spec.complex_blocks();
  for (std::size_t i = 0; i < cplx.size(); ++i) {
    os << (i ? ", " : "") << "{\"re\": " << number_text(cplx[i].lambda.real())
       << ", \"im\": " << number_text(cplx[i].lambda.imag()) << ", \"size\": " << cplx[i].size
       << "}";
  }
  os << "]";
  if (doc.transform) {
    os << ",\n  \"transform\": ";
    write_rows(os, *doc.transform, "  ");
  }
  os << "\n}\n";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace perfro::cli
