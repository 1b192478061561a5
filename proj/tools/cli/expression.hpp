#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "perfro/function.hpp"

namespace perfro::cli {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses the function mini-language:
///
///   expr   := term ('+' term)*
///   term   := [number '*'] atom
///   atom   := 'exp' | 'abs' | 'pow:' int | 'root:' int | 'poly:' number (',' number)*
///
/// e.g. "exp", "pow:4", "0.5*exp + poly:1,2", "-1*pow:1".
SpectralFunction parse_function(std::string_view text);

}  // namespace perfro::cli
