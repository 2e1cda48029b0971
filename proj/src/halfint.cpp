#include "qsorep/halfint.hpp"

#include <charconv>
#include <stdexcept>

namespace qsorep {

std::string HalfInt::to_string() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
  return v;
}

[[noreturn]] void not_half(std::string_view whole) {
  throw std::invalid_argument("not an integer or half-integer: '" + std::string(whole) +
                              "'");
}

}  // namespace

HalfInt parse_halfint(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::int64_t num = parse_int(text.substr(0, slash), whole);
    const std::int64_t den = parse_int(text.substr(slash + 1), whole);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(whole) + "'");
    // num/den = t/2  <=>  2*num = t*den
    if ((2 * num) % den != 0) not_half(whole);
    return HalfInt::from_twice(2 * num / den);
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    bool negative = false;
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
      negative = int_part.front() == '-';
      int_part.remove_prefix(1);
    }
    if (int_part.empty() && frac.empty()) not_half(whole);
    const std::int64_t ip = int_part.empty() ? 0 : parse_int(int_part, whole);
    if (ip < 0) not_half(whole);
    while (!frac.empty() && frac.back() == '0') frac.remove_suffix(1);
    std::int64_t twice = 2 * ip;
    if (frac == "5") {
      twice += 1;
    } else if (!frac.empty()) {
      for (char c : frac)
        if (c < '0' || c > '9') throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
      not_half(whole);
    }
    return HalfInt::from_twice(negative ? -twice : twice);
  }

  return HalfInt::from_int(parse_int(text, whole));
}

}  // namespace qsorep
