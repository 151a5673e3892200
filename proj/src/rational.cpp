#include "tiectl/rational.hpp"

#include <charconv>

#include "tiectl/error.hpp"

namespace tiectl {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("not a rational number: '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t num = parse_int(text.substr(0, slash), text);
    std::int64_t den = parse_int(text.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 15) throw ParseError("too many decimals in '" + std::string(text) + "'");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::string_view ip = text.substr(0, dot);
    bool negative = !ip.empty() && ip.front() == '-';
    std::int64_t whole = (ip.empty() || ip == "-") ? 0 : parse_int(ip, text);
    std::int64_t part = frac.empty() ? 0 : parse_int(frac, text);
    if (part < 0) throw ParseError("not a rational number: '" + std::string(text) + "'");
    Rational r(whole);
    r += Rational(negative ? -part : part, den);
    return r;
  }
  return Rational(parse_int(text, text));
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace tiectl
