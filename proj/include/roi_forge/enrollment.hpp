#pragma once

// Enrollment growth estimation and the cohort revenue waterfall.
//
// Each project year t brings a new cohort of incremental students. Cohort c
// pays its enrollment-year net fee N_c once, then keeps paying in later years
// according to the payment schedule: at age a it pays semesters(a) times
// multiplier(a) times N_c. Continuing fees are locked to the cohort's own
// enrollment-year fee and do not escalate further.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "roi_forge/diagnostics.hpp"
#include "roi_forge/money.hpp"
#include "roi_forge/year_series.hpp"

namespace roi_forge {

struct IntakeYear {
  int year = 0;
  std::vector<std::int64_t> counts;  // aligned with EnrollmentHistory::programs

  std::int64_t total() const {
    std::int64_t sum = 0;
    for (auto c : counts) sum += c;
    return sum;
  }

  friend bool operator==(const IntakeYear&, const IntakeYear&) = default;
};

struct EnrollmentHistory {
  std::vector<std::string> programs;
  std::vector<IntakeYear> years;

  friend bool operator==(const EnrollmentHistory&, const EnrollmentHistory&) = default;
};

struct YearChange {
  int year = 0;
  std::int64_t delta = 0;
  std::optional<std::int64_t> percent;  // nearest integer; absent when the prior total is zero
};

inline void check_history(const EnrollmentHistory& h) {
  for (std::size_t i = 0; i < h.years.size(); ++i) {
    const auto& y = h.years[i];
    std::string at = "[" + std::to_string(i) + "]";
    if (i > 0 && y.year <= h.years[i - 1].year) throw ValidationError("years must be strictly increasing", at);
    if (y.counts.size() != h.programs.size()) throw ValidationError("count per program expected", at);
    for (auto c : y.counts) {
      if (c < 0) throw ValidationError("negative intake count", at);
    }
  }
}

inline std::vector<YearChange> yoy_changes(const EnrollmentHistory& h, DiagnosticScope diag = {}) {
  check_history(h);
  if (h.years.size() < 2) throw ValidationError("at least two years of history are needed");
  std::vector<YearChange> out;
  for (std::size_t i = 1; i < h.years.size(); ++i) {
    std::int64_t prev = h.years[i - 1].total();
    std::int64_t cur = h.years[i].total();
    YearChange c{h.years[i].year, cur - prev, std::nullopt};
    if (prev == 0) {
      diag.warning(std::to_string(c.year), "percentage change undefined: prior-year total is zero");
    } else {
      c.percent = static_cast<std::int64_t>(detail::div_round(detail::i128{100} * c.delta, prev, RoundingMode::HalfUp));
    }
    out.push_back(c);
  }
  return out;
}

enum class GrowthSelector { PositiveOnly, All };

/// Arithmetic mean of the selected integer percentage changes, as a rate.
inline Rate estimate_growth(const EnrollmentHistory& h, GrowthSelector selector) {
  std::int64_t sum = 0;
  std::int64_t n = 0;
  for (const auto& c : yoy_changes(h)) {
    if (!c.percent) continue;
    if (selector == GrowthSelector::PositiveOnly && *c.percent <= 0) continue;
    sum += *c.percent;
    ++n;
  }
  if (n == 0) throw ValidationError("no year matches the growth selector");
  // percent / 100, carrying kDivisionScale digits of the percentage itself.
  return Rate(Decimal::divide(Decimal::from_integer(sum), Decimal::from_integer(n * 100), kDivisionScale + 2,
                              RoundingMode::HalfUp));
}

struct FeeItem {
  std::string name;
  Money amount;

  friend bool operator==(const FeeItem&, const FeeItem&) = default;
};

struct FeeModel {
  std::vector<FeeItem> first_semester_items;
  std::vector<Money> donation_grades;
  std::vector<std::string> earmarked;  // item names allocated elsewhere, excluded from revenue
  Rate overhead_fraction;
  Rate escalation;

  friend bool operator==(const FeeModel&, const FeeModel&) = default;
};

/// Net revenue from one new student in the enrollment year.
inline Money per_student_net(const FeeModel& fee, DiagnosticScope diag = {}) {
  Money items;
  for (const auto& item : fee.first_semester_items) items += item.amount;
  Money earmarked;
  for (const auto& name : fee.earmarked) {
    auto it = std::find_if(fee.first_semester_items.begin(), fee.first_semester_items.end(),
                           [&](const FeeItem& f) { return f.name == name; });
    if (it == fee.first_semester_items.end()) {
      throw ValidationError("earmarked item '" + name + "' is not a first-semester item", "earmarked");
    }
    earmarked += it->amount;
  }
  Money donation;
  if (fee.donation_grades.empty()) {
    diag.warning("donation_grades", "no donation grades; average donation taken as 0");
  } else {
    Money sum;
    for (const auto& d : fee.donation_grades) sum += d;
    donation = Money(Decimal::divide(sum.value(), Decimal::from_integer(static_cast<std::int64_t>(fee.donation_grades.size())),
                                     kDivisionScale, RoundingMode::HalfUp));
  }
  return (items - earmarked + donation) * (Rate::one() - fee.overhead_fraction);
}

struct ScheduleEntry {
  int age = 0;
  std::int64_t semesters = 0;
  Rate multiplier;

  friend bool operator==(const ScheduleEntry&, const ScheduleEntry&) = default;
};

/// Payments per cohort age. Ages not listed pay nothing.
struct PaymentSchedule {
  std::vector<ScheduleEntry> entries;

  void check() const {
    std::set<int> ages;
    for (const auto& e : entries) {
      if (e.age < 0) throw ValidationError("negative cohort age", "schedule");
      if (e.semesters < 0) throw ValidationError("negative semester count", "schedule");
      if (!ages.insert(e.age).second) throw ValidationError("duplicate cohort age " + std::to_string(e.age), "schedule");
    }
    if (!ages.contains(0)) throw ValidationError("schedule has no entry for cohort age 0", "schedule");
  }

  /// semesters(age) * multiplier(age).
  Rate contribution(int age) const {
    for (const auto& e : entries) {
      if (e.age == age) return Rate::integer(e.semesters) * e.multiplier;
    }
    return Rate{};
  }

  friend bool operator==(const PaymentSchedule&, const PaymentSchedule&) = default;
};

/// Seven semesters per student: the enrollment semester at the full net fee,
/// then 2, 2, 1, 1 continuing semesters at 0.65 of that fee.
inline PaymentSchedule default_payment_schedule() {
  Rate continuing = Rate::percent(65);
  return PaymentSchedule{{{0, 1, Rate::one()}, {1, 2, continuing}, {2, 2, continuing}, {3, 1, continuing}, {4, 1, continuing}}};
}

struct Intake {
  std::vector<std::int64_t> per_program;
  std::int64_t total = 0;
};

/// Rounded incremental intake per program for the first project year.
inline Intake incremental_intake(const std::vector<std::int64_t>& baseline, const Rate& growth) {
  Intake out;
  for (auto b : baseline) {
    auto v = (Decimal::from_integer(b) * growth.value()).rounded(0, RoundingMode::HalfUp).to_int64();
    if (!v) throw ArithmeticOverflow("incremental intake out of range");
    out.per_program.push_back(*v);
    out.total += *v;
  }
  return out;
}

struct CohortModel {
  std::vector<std::int64_t> baseline_intake;
  Rate growth;
  FeeModel fee;
  PaymentSchedule schedule;
  int horizon = 5;
};

/// Enrollment-year revenue of the first cohort: rounded intake times net fee.
inline Money first_cohort_revenue(const CohortModel& m, DiagnosticScope diag = {}) {
  Intake intake = incremental_intake(m.baseline_intake, m.growth);
  if (intake.total <= 0) {
    diag.warning("growth", "incremental intake is " + std::to_string(intake.total) + "; enrollment benefit is zero");
    return Money{};
  }
  return per_student_net(m.fee, diag.child("fee")) * intake.total;
}

/// Exact revenue per project year. Present with YearSeries::rounded.
inline YearSeries cohort_revenue(const CohortModel& m, DiagnosticScope diag = {}) {
  m.schedule.check();
  if (m.growth <= Rate::integer(-1)) throw ValidationError("growth must exceed -1", "growth");
  YearSeries out(m.horizon);
  Money first = first_cohort_revenue(m, diag);
  if (first.is_zero()) return out;

  Rate factor = (Rate::one() + m.growth) * (Rate::one() + m.fee.escalation);
  std::vector<Money> enrollment_year(static_cast<std::size_t>(m.horizon));
  enrollment_year[0] = first;
  for (std::size_t c = 1; c < enrollment_year.size(); ++c) enrollment_year[c] = enrollment_year[c - 1] * factor;

  for (int t = 1; t <= m.horizon; ++t) {
    Money year_total;
    for (int c = 1; c <= t; ++c) {
      Rate share = m.schedule.contribution(t - c);
      if (!share.is_zero()) year_total += enrollment_year[static_cast<std::size_t>(c - 1)] * share;
    }
    out.year(t) = year_total;
  }
  return out;
}

/// Splits a series over programs in proportion to `shares`. Cells carry
/// kDivisionScale fractional digits, so their sum may differ from the
/// input by a few units in the last carried digit.
inline std::vector<YearSeries> prorate_programs(const YearSeries& series, const std::vector<std::int64_t>& shares) {
  std::int64_t total = 0;
  for (auto s : shares) {
    if (s < 0) throw ValidationError("negative program share");
    total += s;
  }
  if (total <= 0) throw ValidationError("program shares sum to zero");
  std::vector<YearSeries> out;
  for (auto s : shares) {
    YearSeries p(series.horizon());
    for (int t = 1; t <= series.horizon(); ++t) {
      p.year(t) = Money(Decimal::divide(series.year(t).value() * Decimal::from_integer(s), Decimal::from_integer(total),
                                        kDivisionScale, RoundingMode::HalfUp));
    }
    out.push_back(std::move(p));
  }
  return out;
}

/// The per-program enrollment table as customarily printed shows one third
/// of the yearly revenue. Only used for that display.
inline YearSeries table15_compat(const YearSeries& series) {
  YearSeries out(series.horizon());
  for (int t = 1; t <= series.horizon(); ++t) {
    out.year(t) = Money(Decimal::divide(series.year(t).value(), Decimal::from_integer(3), kDivisionScale, RoundingMode::HalfUp));
  }
  return out;
}

struct CohortCounts {
  std::vector<std::vector<std::int64_t>> per_program;  // [program][year-1]
  std::vector<std::int64_t> total;                     // per-program sums
  std::vector<std::int64_t> total_direct;              // round(total intake * (1+g)^(t-1))
};

/// New-student headcount per program and year for display: each program's
/// first-year intake compounded by the growth rate and rounded half-up.
inline CohortCounts cohort_counts(const Intake& first_year, const Rate& growth, int horizon, DiagnosticScope diag = {}) {
  CohortCounts out;
  out.per_program.resize(first_year.per_program.size());
  Rate factor = Rate::one() + growth;
  for (int t = 1; t <= horizon; ++t) {
    Rate k = pow(factor, t - 1);
    std::int64_t sum = 0;
    for (std::size_t p = 0; p < first_year.per_program.size(); ++p) {
      auto v = (Decimal::from_integer(first_year.per_program[p]) * k.value()).rounded(0, RoundingMode::HalfUp).to_int64();
      out.per_program[p].push_back(v.value_or(0));
      sum += v.value_or(0);
    }
    auto direct = (Decimal::from_integer(first_year.total) * k.value()).rounded(0, RoundingMode::HalfUp).to_int64().value_or(0);
    out.total.push_back(sum);
    out.total_direct.push_back(direct);
    if (sum != direct) {
      diag.warning("year " + std::to_string(t), "program headcounts sum to " + std::to_string(sum) +
                                                    " but the compounded total rounds to " + std::to_string(direct));
    }
  }
  return out;
}

}  // namespace roi_forge
