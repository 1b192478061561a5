#include "cli/expression.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <utility>
#include <vector>

namespace perfro::cli {

namespace {

class Parser {
 public:
  explicit Parser(std::string text) : text_(std::move(text)) {}

  SpectralFunction parse() {
    std::vector<std::pair<double, SpectralFunction>> terms;
    bool weighted = false;
    do {
      skip_space();
      std::optional<double> weight = try_weight();
      weighted = weighted || weight.has_value();
      terms.emplace_back(weight.value_or(1.0), atom());
      skip_space();
    } while (consume('+'));
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    if (terms.size() == 1 && !weighted) return std::move(terms.front().second);
    return SpectralFunction::scaled_sum(std::move(terms));
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("function expression, column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool consume_word(std::string_view word) {
    if (text_.compare(pos_, word.size(), word) == 0) {
      pos_ += word.size();
      return true;
    }
    return false;
  }

  std::optional<double> number() {
    skip_space();
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    // from_chars rejects a leading '+'; the grammar uses '+' as separator.
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) return std::nullopt;
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  std::optional<double> try_weight() {
    const std::size_t saved = pos_;
    if (auto w = number()) {
      if (consume('*')) return w;
    }
    pos_ = saved;
    return std::nullopt;
  }

  int integer(int minimum) {
    auto v = number();
    if (!v) fail("expected an integer");
    if (*v != static_cast<double>(static_cast<int>(*v)) || *v < minimum) {
      fail("expected an integer >= " + std::to_string(minimum));
    }
    return static_cast<int>(*v);
  }

  SpectralFunction atom() {
    skip_space();
    if (consume_word("exp")) return SpectralFunction::exp();
    if (consume_word("abs")) return SpectralFunction::abs();
    if (consume_word("pow:")) return SpectralFunction::monomial(integer(1));
    if (consume_word("root:")) return SpectralFunction::root(integer(2));
    if (consume_word("poly:")) {
      std::vector<double> coeffs;
      do {
        auto c = number();
        if (!c) fail("expected a polynomial coefficient");
        coeffs.push_back(*c);
      } while (consume(','));
      return SpectralFunction::polynomial(std::move(coeffs));
    }
    fail("expected one of exp, abs, pow:<p>, root:<p>, poly:<a0>,...");
  }

  std::string text_;
  std::size_t pos_ = 0;
};

// Accept the Unicode minus sign as '-'.
std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text.compare(i, 3, "\xE2\x88\x92") == 0) {
      out += '-';
      i += 2;
    } else {
      out += text[i];
    }
  }
  return out;
}

}  // namespace

SpectralFunction parse_function(std::string_view text) {
  return Parser(normalize(text)).parse();
}

}  // namespace perfro::cli
