#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace jspin {

/// Exact half-integer quantum number (j, m, ...), stored as twice its value.
/// All arithmetic stays on the doubled integer, so parity can never drift.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr HalfInt(int whole) : twice_(2 * whole) {}  // NOLINT: implicit on purpose

  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }
  static constexpr HalfInt half() { return from_twice(1); }

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return 0.5 * twice_; }

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt& operator+=(HalfInt o) {
    twice_ += o.twice_;
    return *this;
  }
  constexpr HalfInt& operator-=(HalfInt o) {
    twice_ -= o.twice_;
    return *this;
  }

  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice_ + b.twice_); }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice_ - b.twice_); }
  friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;

 private:
  int twice_ = 0;
};

constexpr HalfInt operator*(int k, HalfInt h) { return HalfInt::from_twice(k * h.twice()); }
constexpr HalfInt operator*(HalfInt h, int k) { return k * h; }

/// 2j+1, the dimension of the |j,m> multiplet.
constexpr int multiplicity(HalfInt j) { return j.twice() + 1; }

/// Eigenvalue j(j+1) of J^2.
constexpr double j_squared_eigenvalue(HalfInt j) { return 0.25 * j.twice() * (j.twice() + 2); }

/// True when m is a valid projection of j: |m| <= j and j-m integer.
constexpr bool valid_projection(HalfInt j, HalfInt m) {
  return m.twice() >= -j.twice() && m.twice() <= j.twice() && (j.twice() - m.twice()) % 2 == 0;
}

/// Parses "1/2", "3/2", "2", "-1/2". Throws std::invalid_argument on malformed input.
HalfInt parse_half_int(std::string_view text);

/// "1/2", "2", "-3/2"
std::string to_string(HalfInt h);

}  // namespace jspin
