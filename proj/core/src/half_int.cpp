#include "jspin/half_int.hpp"

#include <charconv>
#include <stdexcept>

namespace jspin {

HalfInt parse_half_int(std::string_view text) {
  auto parse_int = [](std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw std::invalid_argument("invalid half-integer: not a number");
    }
    return v;
  };

  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return HalfInt(parse_int(text));
  }
  int num = parse_int(text.substr(0, slash));
  int den = parse_int(text.substr(slash + 1));
  if (den != 2) {
    throw std::invalid_argument("invalid half-integer: denominator must be 2");
  }
  return HalfInt::from_twice(num);
}

std::string to_string(HalfInt h) {
  if (h.is_integer()) {
    return std::to_string(h.twice() / 2);
  }
  return std::to_string(h.twice()) + "/2";
}

}  // namespace jspin
