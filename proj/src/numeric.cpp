#include "sharing/numeric.hpp"

#include <cctype>
#include <cstddef>

#include "sharing/errors.hpp"

namespace sharing {

namespace {

// Optional leading '-', then one or more digits. No '+', no whitespace.
bool is_integer_token(const std::string& text) {
  std::size_t start = (!text.empty() && text[0] == '-') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  return true;
}

}  // namespace

Rat parse_rational(const std::string& text) {
  const auto bad = [&text]() {
    throw InputError("not a rational number: \"" + text +
                     "\" (expected \"p\" or \"p/q\" with integer p, q)");
  };

  const std::size_t slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_token(text)) bad();
    return Rat(Int(text));
  }
  if (text.find('/', slash + 1) != std::string::npos) bad();

  const std::string num_text = text.substr(0, slash);
  const std::string den_text = text.substr(slash + 1);
  if (!is_integer_token(num_text) || !is_integer_token(den_text)) bad();

  const Int num(num_text);
  const Int den(den_text);
  if (den == 0) {
    throw InputError("rational \"" + text + "\" has a zero denominator");
  }
  // Division normalizes: gcd reduced, denominator made positive.
  return Rat(num) / Rat(den);
}

std::string format_rational(const Rat& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

}  // namespace sharing
