#pragma once

// Exact decimal arithmetic for rupiah amounts and dimensionless rates.
//
// Values are stored as an unscaled 128-bit integer plus a decimal scale
// (number of fractional digits). Addition and multiplication are exact: the
// scale grows as needed and trailing zeros are stripped after every
// operation, so two equal values always share one representation. Binary
// floating point never appears on a monetary path. Division is the only
// operation that needs a target precision and an explicit rounding mode.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace roi_forge {

class ArithmeticOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

class DecimalParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Presentation rounding. Never applied implicitly.
enum class RoundingMode {
  HalfUp,          // ties away from zero
  Down,            // toward zero
  NearestPercent,  // rates: 100*r to an integer; amounts: same as HalfUp
};

inline std::string_view to_string(RoundingMode mode) {
  switch (mode) {
    case RoundingMode::HalfUp: return "half_up";
    case RoundingMode::Down: return "down";
    case RoundingMode::NearestPercent: return "nearest_percent";
  }
  return "half_up";
}

inline std::optional<RoundingMode> parse_rounding_mode(std::string_view s) {
  if (s == "half_up") return RoundingMode::HalfUp;
  if (s == "down") return RoundingMode::Down;
  if (s == "nearest_percent") return RoundingMode::NearestPercent;
  return std::nullopt;
}

namespace detail {

using i128 = __int128;

inline constexpr int kMaxScale = 36;

inline i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("decimal addition overflow");
  return r;
}

inline i128 checked_sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow("decimal subtraction overflow");
  return r;
}

inline i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("decimal multiplication overflow");
  return r;
}

inline i128 pow10(int n) {
  if (n < 0 || n > 38) throw ArithmeticOverflow("power of ten out of range");
  i128 r = 1;
  for (int i = 0; i < n; ++i) r *= 10;
  return r;
}

inline i128 abs128(i128 v) {
  if (v < 0) {
    if (v == -v) throw ArithmeticOverflow("decimal magnitude overflow");
    return -v;
  }
  return v;
}

inline i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::string i128_to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  std::string digits;
  // Work on negative values so the minimum representable value is handled.
  i128 x = neg ? v : -v;
  while (x != 0) {
    digits.push_back(static_cast<char>('0' - static_cast<int>(x % 10)));
    x /= 10;
  }
  if (neg) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

// Integer quotient num/den rounded per mode. den must be non-zero.
inline i128 div_round(i128 num, i128 den, RoundingMode mode) {
  if (den == 0) throw std::domain_error("division by zero");
  i128 q = num / den;
  i128 r = num % den;
  if (r == 0 || mode == RoundingMode::Down) return q;
  i128 ar = abs128(r);
  i128 ad = abs128(den);
  if (ar >= ad - ar) {
    bool negative = (num < 0) != (den < 0);
    q = negative ? checked_sub(q, 1) : checked_add(q, 1);
  }
  return q;
}

}  // namespace detail

/// Exact signed decimal number: units / 10^scale.
class Decimal {
 public:
  using Units = detail::i128;

  /// Fractional digits every result keeps before overflow is reported.
  static constexpr int kMinCarriedScale = 6;

  constexpr Decimal() = default;

  static Decimal from_units(Units units, int scale) {
    if (scale < 0 || scale > detail::kMaxScale) throw ArithmeticOverflow("decimal scale out of range");
    Decimal d;
    d.units_ = units;
    d.scale_ = scale;
    d.normalize();
    return d;
  }

  static Decimal from_integer(std::int64_t v) { return from_units(v, 0); }

  /// Parses "-123", "0.10", "1.5e3". Rejects anything else, including
  /// leading '+' duplicates, empty strings, hex, inf and nan.
  static Decimal parse(std::string_view text) {
    auto fail = [&]() -> DecimalParseError {
      return DecimalParseError("not a decimal number: '" + std::string(text) + "'");
    };
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
      neg = text[i] == '-';
      ++i;
    }
    Units units = 0;
    int scale = 0;
    int digits = 0;
    bool seen_point = false;
    for (; i < text.size(); ++i) {
      char c = text[i];
      if (c >= '0' && c <= '9') {
        units = detail::checked_add(detail::checked_mul(units, 10), c - '0');
        if (seen_point) ++scale;
        ++digits;
      } else if (c == '.' && !seen_point) {
        seen_point = true;
      } else {
        break;
      }
    }
    if (digits == 0) throw fail();
    int exponent = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
      ++i;
      bool eneg = false;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        eneg = text[i] == '-';
        ++i;
      }
      int edigits = 0;
      for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
        exponent = exponent * 10 + (text[i] - '0');
        if (exponent > 1000) throw fail();
        ++edigits;
      }
      if (edigits == 0) throw fail();
      if (eneg) exponent = -exponent;
    }
    if (i != text.size()) throw fail();
    scale -= exponent;
    if (scale < 0) {
      units = detail::checked_mul(units, detail::pow10(-scale));
      scale = 0;
    }
    // Strip trailing zeros before the range check so "1.000...0" parses.
    while (scale > detail::kMaxScale && units % 10 == 0) {
      units /= 10;
      --scale;
    }
    if (scale > detail::kMaxScale) throw DecimalParseError("too many fractional digits: '" + std::string(text) + "'");
    return from_units(neg ? -units : units, scale);
  }

  Units units() const { return units_; }
  int scale() const { return scale_; }

  bool is_zero() const { return units_ == 0; }
  bool is_negative() const { return units_ < 0; }
  bool is_integer() const { return scale_ == 0; }
  int sign() const { return units_ < 0 ? -1 : (units_ > 0 ? 1 : 0); }

  /// Canonical text: minimal digits, no exponent ("0", "-0.5", "30150000").
  std::string to_string() const {
    if (scale_ == 0) return detail::i128_to_string(units_);
    std::string digits = detail::i128_to_string(detail::abs128(units_));
    if (static_cast<int>(digits.size()) <= scale_) {
      digits.insert(0, static_cast<std::size_t>(scale_ - static_cast<int>(digits.size()) + 1), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(scale_), 1, '.');
    return units_ < 0 ? "-" + digits : digits;
  }

  /// Text with exactly `places` fractional digits after rounding.
  std::string to_fixed(int places, RoundingMode mode = RoundingMode::HalfUp) const {
    Decimal r = rounded(places, mode);
    std::string s = r.to_string();
    if (places <= 0) return s;
    auto point = s.find('.');
    int have = point == std::string::npos ? 0 : static_cast<int>(s.size() - point - 1);
    if (point == std::string::npos) s.push_back('.');
    s.append(static_cast<std::size_t>(places - have), '0');
    return s;
  }

  Decimal rounded(int places, RoundingMode mode) const {
    if (places < 0) places = 0;
    if (scale_ <= places) return *this;
    Units q = detail::div_round(units_, detail::pow10(scale_ - places), mode);
    return from_units(q, places);
  }

  Decimal operator-() const { return from_units(detail::checked_sub(0, units_), scale_); }

  // Exact whenever the result fits; otherwise the operand carrying more
  // fractional digits is rounded half-up, one digit at a time, but never
  // below kMinCarriedScale digits, and the operation retried.
  friend Decimal operator+(const Decimal& a, const Decimal& b) {
    return with_precision_fallback(a, b, [](const Decimal& x, const Decimal& y) {
      int s = std::max(x.scale_, y.scale_);
      return from_units(detail::checked_add(x.aligned(s), y.aligned(s)), s);
    });
  }
  friend Decimal operator-(const Decimal& a, const Decimal& b) {
    return with_precision_fallback(a, b, [](const Decimal& x, const Decimal& y) {
      int s = std::max(x.scale_, y.scale_);
      return from_units(detail::checked_sub(x.aligned(s), y.aligned(s)), s);
    });
  }
  friend Decimal operator*(const Decimal& a, const Decimal& b) {
    return with_precision_fallback(a, b, [](const Decimal& x, const Decimal& y) {
      int s = x.scale_ + y.scale_;
      Units u = detail::checked_mul(x.units_, y.units_);
      while (s > detail::kMaxScale && u % 10 == 0) {
        u /= 10;
        --s;
      }
      if (s > detail::kMaxScale) throw ArithmeticOverflow("decimal product exceeds carried precision");
      return from_units(u, s);
    });
  }

  /// a / b rounded to `places` fractional digits.
  static Decimal divide(const Decimal& a, const Decimal& b, int places, RoundingMode mode) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    int e = b.scale_ + places - a.scale_;
    Units num = a.units_;
    Units den = b.units_;
    if (e >= 0) {
      num = detail::checked_mul(num, detail::pow10(e));
    } else {
      den = detail::checked_mul(den, detail::pow10(-e));
    }
    return from_units(detail::div_round(num, den, mode), places);
  }

  friend bool operator==(const Decimal& a, const Decimal& b) {
    return a.scale_ == b.scale_ && a.units_ == b.units_;
  }
  friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
    int s = std::max(a.scale_, b.scale_);
    Units x = a.aligned(s);
    Units y = b.aligned(s);
    if (x < y) return std::strong_ordering::less;
    if (x > y) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Integer value if this is integral and fits in 64 bits.
  std::optional<std::int64_t> to_int64() const {
    if (scale_ != 0) return std::nullopt;
    if (units_ > INT64_MAX || units_ < INT64_MIN) return std::nullopt;
    return static_cast<std::int64_t>(units_);
  }

 private:
  Units aligned(int s) const { return detail::checked_mul(units_, detail::pow10(s - scale_)); }

  template <typename Op>
  static Decimal with_precision_fallback(Decimal a, Decimal b, Op op) {
    for (;;) {
      try {
        return op(a, b);
      } catch (const ArithmeticOverflow&) {
        Decimal& wider = a.scale_ >= b.scale_ ? a : b;
        if (wider.scale_ <= kMinCarriedScale) throw;
        wider = wider.rounded(wider.scale_ - 1, RoundingMode::HalfUp);
      }
    }
  }

  void normalize() {
    if (units_ == 0) {
      scale_ = 0;
      return;
    }
    while (scale_ > 0 && units_ % 10 == 0) {
      units_ /= 10;
      --scale_;
    }
  }

  Units units_ = 0;
  int scale_ = 0;
};

/// Exact reduced fraction; used where a quotient must stay exact (ROI).
class Ratio {
 public:
  using Units = detail::i128;

  Ratio() = default;

  static Ratio of(const Decimal& num, const Decimal& den) {
    if (den.is_zero()) throw std::domain_error("ratio with zero denominator");
    Units n = num.units();
    Units d = den.units();
    // num/den = (n / 10^sn) / (d / 10^sd)
    if (den.scale() >= num.scale()) {
      n = detail::checked_mul(n, detail::pow10(den.scale() - num.scale()));
    } else {
      d = detail::checked_mul(d, detail::pow10(num.scale() - den.scale()));
    }
    return Ratio(n, d);
  }

  Units numerator() const { return num_; }
  Units denominator() const { return den_; }

  Decimal to_decimal(int places, RoundingMode mode) const {
    return Decimal::divide(Decimal::from_units(num_, 0), Decimal::from_units(den_, 0), places, mode);
  }

  std::string to_string() const {
    return detail::i128_to_string(num_) + "/" + detail::i128_to_string(den_);
  }

  Ratio scaled(const Decimal& k) const {
    Ratio r = of(k, Decimal::from_integer(1));
    return Ratio(detail::checked_mul(num_, r.num_), detail::checked_mul(den_, r.den_));
  }

  friend bool operator==(const Ratio& a, const Ratio& b) = default;
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    Units x = detail::checked_mul(a.num_, b.den_);
    Units y = detail::checked_mul(b.num_, a.den_);
    if (x < y) return std::strong_ordering::less;
    if (x > y) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Ratio(Units n, Units d) {
    if (d < 0) {
      n = detail::checked_sub(0, n);
      d = detail::checked_sub(0, d);
    }
    Units g = detail::gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    num_ = n;
    den_ = d;
  }

  Units num_ = 0;
  Units den_ = 1;
};

class Rate;

/// Rupiah amount. The currency label lives on the scenario, not here.
class Money {
 public:
  Money() = default;
  explicit Money(Decimal value) : value_(value) {}

  static Money rupiah(std::int64_t amount) { return Money(Decimal::from_integer(amount)); }
  static Money parse(std::string_view text) { return Money(Decimal::parse(text)); }

  const Decimal& value() const { return value_; }
  bool is_zero() const { return value_.is_zero(); }
  bool is_negative() const { return value_.is_negative(); }
  std::string to_string() const { return value_.to_string(); }

  Money operator-() const { return Money(-value_); }
  Money& operator+=(const Money& o) { return *this = *this + o; }
  Money& operator-=(const Money& o) { return *this = *this - o; }

  friend Money operator+(const Money& a, const Money& b) { return Money(a.value_ + b.value_); }
  friend Money operator-(const Money& a, const Money& b) { return Money(a.value_ - b.value_); }
  friend Money operator*(const Money& a, std::int64_t count) {
    return Money(a.value_ * Decimal::from_integer(count));
  }
  friend Money operator*(std::int64_t count, const Money& a) { return a * count; }
  inline friend Money operator*(const Money& a, const Rate& r);
  inline friend Money operator*(const Rate& r, const Money& a);

  friend bool operator==(const Money&, const Money&) = default;
  friend std::strong_ordering operator<=>(const Money& a, const Money& b) { return a.value_ <=> b.value_; }

 private:
  Decimal value_;
};

/// Dimensionless scalar: growth, decay, fractions, multipliers.
class Rate {
 public:
  Rate() = default;
  explicit Rate(Decimal value) : value_(value) {}

  static Rate parse(std::string_view text) { return Rate(Decimal::parse(text)); }
  static Rate integer(std::int64_t v) { return Rate(Decimal::from_integer(v)); }
  static Rate one() { return integer(1); }
  /// `percent` hundredths, e.g. percent(75) == 0.75.
  static Rate percent(std::int64_t pct) { return Rate(Decimal::from_units(pct, 2)); }

  const Decimal& value() const { return value_; }
  bool is_zero() const { return value_.is_zero(); }
  std::string to_string() const { return value_.to_string(); }

  /// 100*r as text with `places` decimals.
  std::string to_percent_string(int places, RoundingMode mode = RoundingMode::HalfUp) const {
    return (value_ * Decimal::from_integer(100)).to_fixed(places, mode);
  }

  friend Rate operator+(const Rate& a, const Rate& b) { return Rate(a.value_ + b.value_); }
  friend Rate operator-(const Rate& a, const Rate& b) { return Rate(a.value_ - b.value_); }
  friend Rate operator*(const Rate& a, const Rate& b) { return Rate(a.value_ * b.value_); }

  friend bool operator==(const Rate&, const Rate&) = default;
  friend std::strong_ordering operator<=>(const Rate& a, const Rate& b) { return a.value_ <=> b.value_; }

 private:
  Decimal value_;
};

inline Money operator*(const Money& a, const Rate& r) { return Money(a.value_ * r.value()); }
inline Money operator*(const Rate& r, const Money& a) { return a * r; }

/// Exact product; throws ArithmeticOverflow past the representable range.
inline Money mul_rate(const Money& m, const Rate& r) { return m * r; }

/// Integer-rupiah presentation value.
inline Money round_money(const Money& m, RoundingMode mode = RoundingMode::HalfUp) {
  return Money(m.value().rounded(0, mode));
}

/// r^n for n >= 0, exact.
inline Rate pow(const Rate& r, int n) {
  Rate out = Rate::one();
  for (int i = 0; i < n; ++i) out = out * r;
  return out;
}

/// Fractional digits carried by quotients (means, prorations, discounting).
inline constexpr int kDivisionScale = 6;

}  // namespace roi_forge
