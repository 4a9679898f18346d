#pragma once

// Test-only helpers: an arbitrary-precision oracle independent of the
// library's int128 decimal, plus small seeded generators.

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "roi_forge/enrollment.hpp"
#include "roi_forge/money.hpp"
#include "roi_forge/year_series.hpp"

namespace oracle {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

inline cpp_int ten_pow(unsigned n) {
  cpp_int r = 1;
  for (unsigned i = 0; i < n; ++i) r *= 10;
  return r;
}

// Reads "-123.4500" style text; never goes through roi_forge::Decimal.
inline cpp_rational exact(std::string_view text) {
  bool neg = !text.empty() && text.front() == '-';
  if (neg) text.remove_prefix(1);
  cpp_int digits = 0;
  unsigned frac = 0;
  bool after_point = false;
  for (char c : text) {
    if (c == '.') {
      after_point = true;
      continue;
    }
    digits = digits * 10 + (c - '0');
    if (after_point) ++frac;
  }
  cpp_rational r(digits, ten_pow(frac));
  return neg ? cpp_rational(-r) : r;
}

inline cpp_rational exact(const roi_forge::Decimal& d) { return exact(d.to_string()); }
inline cpp_rational exact(const roi_forge::Money& m) { return exact(m.value().to_string()); }
inline cpp_rational exact(const roi_forge::Rate& r) { return exact(r.value().to_string()); }

// Half-up (ties away from zero) to an integer.
inline cpp_int round_half_up(const cpp_rational& q) {
  cpp_int num = boost::multiprecision::numerator(q);
  cpp_int den = boost::multiprecision::denominator(q);
  bool neg = num < 0;
  if (neg) num = -num;
  cpp_int r = (2 * num + den) / (2 * den);
  return neg ? cpp_int(-r) : r;
}

inline std::string str(const cpp_int& v) { return v.str(); }

// Brute force: every student-semester payment made in year t, summed.
// Shares nothing with cohort_revenue beyond the input structs.
inline std::vector<cpp_rational> enumerate_payments(const roi_forge::CohortModel& m) {
  cpp_rational g = exact(m.growth);
  cpp_rational e = exact(m.fee.escalation);

  cpp_int students = 0;
  for (auto b : m.baseline_intake) students += round_half_up(cpp_rational(b) * g);

  cpp_rational items = 0;
  for (const auto& f : m.fee.first_semester_items) items += exact(f.amount);
  for (const auto& name : m.fee.earmarked) {
    for (const auto& f : m.fee.first_semester_items) {
      if (f.name == name) {
        items -= exact(f.amount);
        break;
      }
    }
  }
  cpp_rational donation = 0;
  for (const auto& d : m.fee.donation_grades) donation += exact(d);
  if (!m.fee.donation_grades.empty()) donation /= static_cast<long>(m.fee.donation_grades.size());
  cpp_rational fee = (items + donation) * (1 - exact(m.fee.overhead_fraction));

  std::vector<cpp_rational> year(static_cast<std::size_t>(m.horizon), 0);
  if (students <= 0) return year;
  for (int cohort = 1; cohort <= m.horizon; ++cohort) {
    cpp_rational enrolled = cpp_rational(students) * fee;
    for (int k = 1; k < cohort; ++k) enrolled *= (1 + g) * (1 + e);
    for (const auto& entry : m.schedule.entries) {
      int t = cohort + entry.age;
      if (t > m.horizon) continue;
      for (std::int64_t sem = 0; sem < entry.semesters; ++sem) {
        year[static_cast<std::size_t>(t - 1)] += enrolled * exact(entry.multiplier);
      }
    }
  }
  return year;
}

}  // namespace oracle

namespace gen {

// Deterministic seeds so failures reproduce; override with ROI_FORGE_SEED.
inline std::uint64_t seed() {
  if (const char* s = std::getenv("ROI_FORGE_SEED")) return std::stoull(s);
  return 20061231u;
}

struct Rng {
  std::mt19937_64 engine{seed()};

  std::int64_t integer(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine); }

  // Decimal with up to `places` fractional digits in [lo, hi] whole units.
  roi_forge::Decimal decimal(std::int64_t lo, std::int64_t hi, int places) {
    std::int64_t scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    return roi_forge::Decimal::from_units(integer(lo * scale, hi * scale), places);
  }

  roi_forge::Money money(std::int64_t lo, std::int64_t hi, int places = 0) { return roi_forge::Money(decimal(lo, hi, places)); }
  roi_forge::Rate rate(std::int64_t lo, std::int64_t hi, int places = 2) { return roi_forge::Rate(decimal(lo, hi, places)); }
};

inline roi_forge::CohortModel random_model(Rng& rng, int rate_places = 2) {
  roi_forge::CohortModel m;
  m.horizon = static_cast<int>(rng.integer(1, 6));
  int programs = static_cast<int>(rng.integer(1, 4));
  for (int p = 0; p < programs; ++p) m.baseline_intake.push_back(rng.integer(0, 2000));
  m.growth = rng.rate(-1, 1, static_cast<int>(rng.integer(0, rate_places)));
  if (m.growth <= roi_forge::Rate::integer(-1)) m.growth = roi_forge::Rate::parse("-0.5");
  int items = static_cast<int>(rng.integer(1, 5));
  for (int i = 0; i < items; ++i) m.fee.first_semester_items.push_back({"item" + std::to_string(i), rng.money(0, 5'000'000)});
  if (rng.integer(0, 1)) m.fee.earmarked.push_back("item0");
  int grades = static_cast<int>(rng.integer(0, 4));
  // Multiples of 12 keep the mean of up to four grades exact.
  for (int i = 0; i < grades; ++i) m.fee.donation_grades.push_back(rng.money(0, 750'000, 0) * 12);
  m.fee.overhead_fraction = rng.rate(0, 1, 2);
  if (m.fee.overhead_fraction > roi_forge::Rate::one()) m.fee.overhead_fraction = roi_forge::Rate::one();
  m.fee.escalation = rng.rate(0, 1, static_cast<int>(rng.integer(0, rate_places)));
  m.schedule.entries.push_back({0, rng.integer(0, 2), rng.rate(0, 2, 2)});
  for (int age = 1; age < 6; ++age) {
    if (rng.integer(0, 2) == 0) continue;
    m.schedule.entries.push_back({age, rng.integer(0, 3), rng.rate(0, 1, 2)});
  }
  return m;
}

}  // namespace gen
