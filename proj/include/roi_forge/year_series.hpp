#pragma once

#include <span>
#include <string>
#include <vector>

#include "roi_forge/diagnostics.hpp"
#include "roi_forge/money.hpp"

namespace roi_forge {

/// Amounts indexed by project year 1..horizon.
class YearSeries {
 public:
  YearSeries() = default;
  explicit YearSeries(int horizon) : values_(check_horizon(horizon)) {}
  explicit YearSeries(std::vector<Money> values) : values_(std::move(values)) {}

  int horizon() const { return static_cast<int>(values_.size()); }

  /// 1-based year access.
  const Money& year(int t) const { return values_.at(static_cast<std::size_t>(t - 1)); }
  Money& year(int t) { return values_.at(static_cast<std::size_t>(t - 1)); }

  std::span<const Money> values() const { return values_; }

  YearSeries rounded(RoundingMode mode) const {
    YearSeries out = *this;
    for (auto& v : out.values_) v = round_money(v, mode);
    return out;
  }

  friend bool operator==(const YearSeries&, const YearSeries&) = default;

 private:
  static std::size_t check_horizon(int horizon) {
    if (horizon < 1) throw ValidationError("horizon must be at least 1, got " + std::to_string(horizon));
    return static_cast<std::size_t>(horizon);
  }

  std::vector<Money> values_;
};

inline Money sum_series(const YearSeries& s) {
  Money total;
  for (const auto& v : s.values()) total += v;
  return total;
}

inline YearSeries operator+(const YearSeries& a, const YearSeries& b) {
  if (a.horizon() != b.horizon()) {
    throw ValidationError("horizon mismatch: " + std::to_string(a.horizon()) + " vs " + std::to_string(b.horizon()));
  }
  YearSeries out(a.horizon());
  for (int t = 1; t <= a.horizon(); ++t) out.year(t) = a.year(t) + b.year(t);
  return out;
}

inline YearSeries operator-(const YearSeries& a, const YearSeries& b) {
  if (a.horizon() != b.horizon()) {
    throw ValidationError("horizon mismatch: " + std::to_string(a.horizon()) + " vs " + std::to_string(b.horizon()));
  }
  YearSeries out(a.horizon());
  for (int t = 1; t <= a.horizon(); ++t) out.year(t) = a.year(t) - b.year(t);
  return out;
}

}  // namespace roi_forge
