#include "andor/rational.hpp"

#include <stdexcept>

namespace andor {

Rational make_rational(Integer num, Integer den) {
  if (den == 0) {
    throw std::domain_error("rational with zero denominator");
  }
  Rational r(std::move(num));
  r /= Rational(std::move(den));
  return r;
}

std::string to_string(const Rational& value) {
  std::string out = numerator(value).str();
  if (denominator(value) != 1) {
    out += "/";
    out += denominator(value).str();
  }
  return out;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body.remove_prefix(1);
  }

  auto fail = [&] { throw std::invalid_argument("malformed rational '" + std::string(text) + "'"); };

  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) fail();
    Integer d{std::string(den)};
    if (d == 0) fail();
    value = make_rational(Integer{std::string(num)}, std::move(d));
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      fail();
    }
    Integer scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Integer num = whole.empty() ? Integer(0) : Integer{std::string(whole)};
    num *= scale;
    if (!frac.empty()) num += Integer{std::string(frac)};
    value = make_rational(std::move(num), std::move(scale));
  } else {
    if (!all_digits(body)) fail();
    value = Rational(Integer{std::string(body)});
  }
  if (negative) value = -value;
  return value;
}

}  // namespace andor
