#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "basisorder/checked.hpp"
#include "basisorder/error.hpp"

namespace basisorder {

/// Exact rational with 64-bit numerator and denominator, always in lowest
/// terms with a positive denominator. Arithmetic is carried out in 128 bits
/// and throws OverflowError if the reduced result does not fit.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num) : num_(num) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    return (num_ % den_ != 0 && num_ < 0) ? q - 1 : q;
  }
  std::int64_t ceil() const {
    std::int64_t q = num_ / den_;
    return (num_ % den_ != 0 && num_ > 0) ? q + 1 : q;
  }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_wide(static_cast<int128>(a.num_) * b.den_ + static_cast<int128>(b.num_) * a.den_,
                     static_cast<int128>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return from_wide(static_cast<int128>(a.num_) * b.den_ - static_cast<int128>(b.num_) * a.den_,
                     static_cast<int128>(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(static_cast<int128>(a.num_) * b.num_, static_cast<int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw InvalidArgument("rational division by zero");
    return from_wide(static_cast<int128>(a.num_) * b.den_, static_cast<int128>(a.den_) * b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int128 l = static_cast<int128>(a.num_) * b.den_;
    int128 r = static_cast<int128>(b.num_) * a.den_;
    return l <=> r;
  }

  /// "p" when integral, "p/q" otherwise.
  std::string to_string() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Accepts "p", "-p" and "p/q".
  static Rational parse(std::string_view text);

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  static Rational from_wide(int128 num, int128 den) {
    if (den == 0) throw InvalidArgument("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    int128 a = num < 0 ? -num : num;
    int128 b = den;
    while (b != 0) {
      int128 t = a % b;
      a = b;
      b = t;
    }
    Rational r;
    r.num_ = checked::narrow(num / a);
    r.den_ = checked::narrow(den / a);
    return r;
  }

  void assign(std::int64_t num, std::int64_t den) { *this = from_wide(num, den); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational Rational::parse(std::string_view text) {
  auto parse_int = [](std::string_view s) -> std::int64_t {
    if (s.empty()) throw InvalidArgument("empty rational component");
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
      neg = s[0] == '-';
      i = 1;
    }
    if (i == s.size()) throw InvalidArgument("bad rational literal");
    int128 v = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw InvalidArgument("bad rational literal: " + std::string(s));
      v = v * 10 + (s[i] - '0');
      if (v > (static_cast<int128>(1) << 63)) throw OverflowError("rational literal too large");
    }
    return checked::narrow(neg ? -v : v);
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

/// A rational in [0, 1]; the value type of lower asymptotic densities.
class Density {
 public:
  Density() = default;
  explicit Density(Rational value) : value_(value) {
    if (value < Rational(0) || value > Rational(1))
      throw InvalidArgument("density outside [0,1]: " + value.to_string());
  }
  Density(std::int64_t num, std::int64_t den) : Density(Rational(num, den)) {}

  const Rational& value() const { return value_; }
  bool is_zero() const { return value_.num() == 0; }

  friend bool operator==(const Density&, const Density&) = default;
  friend std::strong_ordering operator<=>(const Density& a, const Density& b) {
    return a.value_ <=> b.value_;
  }
  friend std::ostream& operator<<(std::ostream& os, const Density& d) { return os << d.value_; }

 private:
  Rational value_;
};

}  // namespace basisorder
