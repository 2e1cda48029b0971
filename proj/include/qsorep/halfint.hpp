#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace qsorep {

/// An integer or half-integer held exactly as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() = default;

  static constexpr HalfInt from_twice(std::int64_t twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }
  static constexpr HalfInt from_int(std::int64_t value) {
    return from_twice(2 * value);
  }

  constexpr std::int64_t twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr bool is_zero() const { return twice_ == 0; }
  constexpr double to_double() const { return static_cast<double>(twice_) / 2.0; }

  /// Parity of the stored twice value (0 for integers, 1 for half-integers).
  constexpr int parity() const { return static_cast<int>(twice_ & 1); }

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt& operator+=(HalfInt o) {
    twice_ += o.twice_;
    return *this;
  }
  constexpr HalfInt& operator-=(HalfInt o) {
    twice_ -= o.twice_;
    return *this;
  }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return a += b; }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return a -= b; }
  friend constexpr HalfInt operator+(HalfInt a, std::int64_t b) {
    return from_twice(a.twice_ + 2 * b);
  }
  friend constexpr HalfInt operator-(HalfInt a, std::int64_t b) {
    return from_twice(a.twice_ - 2 * b);
  }
  /// Doubling is always closed; 2x is an integer.
  constexpr HalfInt doubled() const { return from_twice(2 * twice_); }
  constexpr HalfInt abs() const { return from_twice(twice_ < 0 ? -twice_ : twice_); }

  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;
  friend constexpr bool operator==(HalfInt, HalfInt) = default;

  /// "3", "-1/2", "5/2".
  std::string to_string() const;

 private:
  std::int64_t twice_ = 0;
};

constexpr HalfInt half(std::int64_t twice) { return HalfInt::from_twice(twice); }

/// Parses "a", "a/2", "-3/2", ".5", "1.5". Throws std::invalid_argument for
/// anything that is not an integer or a half-integer.
HalfInt parse_halfint(std::string_view text);

}  // namespace qsorep

template <>
struct std::hash<qsorep::HalfInt> {
  std::size_t operator()(qsorep::HalfInt h) const noexcept {
    return std::hash<std::int64_t>{}(h.twice());
  }
};
