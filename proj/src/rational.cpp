#include "tdw/rational.hpp"

#include <cctype>

namespace tdw {

Rational Rational::parse(const std::string& text) {
  auto bad = [&] { throw std::invalid_argument("malformed rational '" + text + "'"); };
  if (text.empty()) bad();
  std::size_t slash = text.find('/');
  auto parse_int = [&](const std::string& s) -> long long {
    if (s.empty()) bad();
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) bad();
    for (std::size_t k = i; k < s.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(s[k]))) bad();
    try {
      return std::stoll(s);
    } catch (const std::exception&) {
      bad();
    }
    return 0;  // unreachable
  };
  if (slash == std::string::npos) return Rational(parse_int(text));
  long long n = parse_int(text.substr(0, slash));
  long long d = parse_int(text.substr(slash + 1));
  if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  return Rational(n, d);
}

}  // namespace tdw
