#include <gtest/gtest.h>

#include "roi_forge/baseline.hpp"
#include "roi_forge/enrollment.hpp"
#include "support.hpp"

using namespace roi_forge;
using oracle::cpp_int;
using oracle::cpp_rational;

namespace {

Money rp(std::int64_t v) { return Money::rupiah(v); }

CohortModel baseline_model() {
  auto s = baseline_scenario();
  return {s.enrollment.effective_baseline(), s.enrollment.growth, s.enrollment.fee, s.enrollment.schedule, s.horizon};
}

EnrollmentHistory two_years(std::int64_t a, std::int64_t b) { return {{"X"}, {{2000, {a}}, {2001, {b}}}}; }

}  // namespace

TEST(YoyChanges, BaselineRows) {
  auto h = baseline_scenario().enrollment.history;
  auto changes = yoy_changes(h);
  ASSERT_EQ(changes.size(), 19u);
  auto at = [&](int year) {
    for (const auto& c : changes) {
      if (c.year == year) return c;
    }
    throw std::out_of_range("year");
  };
  EXPECT_EQ(at(1990).delta, 549);
  EXPECT_EQ(at(1990).percent, 65);
  EXPECT_EQ(at(2005).delta, -613);
  EXPECT_EQ(at(2005).percent, -46);
  EXPECT_EQ(yoy_changes(two_years(10, 10))[0].percent, 0);
}

TEST(YoyChanges, ZeroPriorWarns) {
  Diagnostics d;
  auto c = yoy_changes(two_years(0, 10), DiagnosticScope(d, "history"));
  EXPECT_FALSE(c[0].percent.has_value());
  EXPECT_EQ(d.items().size(), 1u);
}

TEST(EstimateGrowth, BaselineMean) {
  EXPECT_EQ(estimate_growth(baseline_scenario().enrollment.history, GrowthSelector::PositiveOnly), Rate::parse("0.19125"));
  EXPECT_EQ(estimate_growth(two_years(100, 110), GrowthSelector::PositiveOnly), Rate::parse("0.10"));
  EXPECT_THROW(estimate_growth(two_years(100, 90), GrowthSelector::PositiveOnly), ValidationError);
  EXPECT_EQ(estimate_growth(two_years(100, 90), GrowthSelector::All), Rate::parse("-0.10"));
}

TEST(PerStudentNet, BaselineFee) {
  auto fee = baseline_scenario().enrollment.fee;
  EXPECT_EQ(per_student_net(fee), rp(6'201'000));
  fee.overhead_fraction = Rate{};
  EXPECT_EQ(per_student_net(fee), rp(10'335'000));
}

TEST(PerStudentNet, EdgeCases) {
  auto fee = baseline_scenario().enrollment.fee;
  Diagnostics d;
  auto no_donation = fee;
  no_donation.donation_grades.clear();
  EXPECT_EQ(per_student_net(no_donation, DiagnosticScope(d, "fee")), rp((3'985'000 - 525'000) * 6 / 10));
  EXPECT_EQ(d.items().size(), 1u);
  fee.earmarked.push_back("Tidak ada");
  EXPECT_THROW(per_student_net(fee), ValidationError);
}

TEST(IncrementalIntake, BaselineAndTies) {
  auto in = incremental_intake({312, 295, 33, 79}, Rate::percent(20));
  EXPECT_EQ(in.per_program, (std::vector<std::int64_t>{62, 59, 7, 16}));
  EXPECT_EQ(in.total, 144);
  EXPECT_EQ(baseline_model().baseline_intake, (std::vector<std::int64_t>{312, 295, 33, 79}));
  EXPECT_EQ(incremental_intake({10, 10}, Rate::percent(25)).per_program, (std::vector<std::int64_t>{3, 3}));
  EXPECT_EQ(incremental_intake({312, 295}, Rate{}).total, 0);
}

TEST(CohortRevenue, BaselineSeries) {
  auto m = baseline_model();
  EXPECT_EQ(first_cohort_revenue(m), rp(892'944'000));
  auto rev = cohort_revenue(m);
  EXPECT_EQ(rev.year(2), rp(2'285'936'640));
  std::vector<std::int64_t> printed{892'944'000, 2'285'936'640, 4'041'107'366, 5'672'208'882, 7'727'396'791};
  for (int t = 1; t <= 5; ++t) EXPECT_EQ(round_money(rev.year(t)), rp(printed[static_cast<std::size_t>(t - 1)])) << t;
  EXPECT_EQ(round_money(sum_series(rev)), rp(20'619'593'679));
}

TEST(CohortRevenue, SimpleSchedules) {
  auto m = baseline_model();
  m.schedule = {{{0, 1, Rate::one()}}};
  auto rev = cohort_revenue(m);
  Money expect = rp(892'944'000);
  for (int t = 1; t <= 5; ++t) {
    EXPECT_EQ(rev.year(t), expect);
    expect = expect * Rate::parse("1.26");
  }
}

TEST(CohortRevenue, FlatRecurrenceHandEvaluated) {
  // (1 + g)(1 + e) = 1 with g = 0.25, e = -0.2.
  CohortModel m{{576}, Rate::percent(25), baseline_scenario().enrollment.fee, {{{0, 1, Rate::one()}, {1, 2, Rate::percent(65)}}}, 5};
  m.fee.escalation = Rate::parse("-0.2");
  auto rev = cohort_revenue(m);
  Money n1 = rp(144 * 6'201'000);
  EXPECT_EQ(rev.year(1), n1);
  for (int t = 2; t <= 5; ++t) EXPECT_EQ(rev.year(t), n1 * Rate::parse("2.3")) << t;
}

TEST(CohortRevenue, MissingAgeZeroIsError) {
  auto m = baseline_model();
  m.schedule.entries.erase(m.schedule.entries.begin());
  EXPECT_THROW(cohort_revenue(m), ValidationError);
}

TEST(CohortRevenue, NonPositiveIntakeIsZeroWithWarning) {
  auto m = baseline_model();
  m.growth = Rate{};
  Diagnostics d;
  EXPECT_EQ(cohort_revenue(m, DiagnosticScope(d, "enrollment")), YearSeries(5));
  EXPECT_EQ(d.items().size(), 1u);
  EXPECT_FALSE(d.has_errors());
}

TEST(CohortRevenue, MatchesBruteForceOracle) {
  gen::Rng rng;
  int checked = 0;
  for (int i = 0; i < 1200; ++i) {
    CohortModel m = gen::random_model(rng);
    auto got = cohort_revenue(m);
    auto want = oracle::enumerate_payments(m);
    for (int t = 1; t <= m.horizon; ++t) {
      ASSERT_EQ(oracle::exact(got.year(t)), want[static_cast<std::size_t>(t - 1)]) << "model " << i << " year " << t;
    }
    ++checked;
  }
  EXPECT_GE(checked, 1000);
  auto m = baseline_model();
  auto want = oracle::enumerate_payments(m);
  for (int t = 1; t <= 5; ++t) EXPECT_EQ(oracle::exact(cohort_revenue(m).year(t)), want[static_cast<std::size_t>(t - 1)]);
}

TEST(CohortRevenue, FourDecimalRatesStayWithinCarriedPrecision) {
  // Long rate chains can exceed 128-bit exact range; results then keep at
  // least six fractional digits, so the error stays far below a rupiah.
  gen::Rng rng;
  const cpp_rational bound(1, 1'000'000);
  for (int i = 0; i < 300; ++i) {
    CohortModel m = gen::random_model(rng, 4);
    auto got = cohort_revenue(m);
    auto want = oracle::enumerate_payments(m);
    for (int t = 1; t <= m.horizon; ++t) {
      cpp_rational err = oracle::exact(got.year(t)) - want[static_cast<std::size_t>(t - 1)];
      if (err < 0) err = -err;
      ASSERT_LE(err, bound) << "model " << i << " year " << t;
    }
  }
}

TEST(CohortRevenue, HomogeneousInFee) {
  gen::Rng rng;
  for (int i = 0; i < 200; ++i) {
    CohortModel m = gen::random_model(rng);
    std::int64_t k = rng.integer(2, 1000);
    CohortModel scaled = m;
    for (auto& item : scaled.fee.first_semester_items) item.amount = item.amount * k;
    for (auto& d : scaled.fee.donation_grades) d = d * k;
    auto a = cohort_revenue(m);
    auto b = cohort_revenue(scaled);
    for (int t = 1; t <= m.horizon; ++t) EXPECT_EQ(b.year(t), a.year(t) * k);
  }
}

TEST(CohortRevenue, MonotoneInGrowth) {
  gen::Rng rng;
  for (int i = 0; i < 300; ++i) {
    CohortModel lo = gen::random_model(rng);
    if (lo.growth < Rate{}) lo.growth = Rate{};
    CohortModel hi = lo;
    hi.growth = lo.growth + rng.rate(0, 1, 2);
    auto a = cohort_revenue(lo);
    auto b = cohort_revenue(hi);
    for (int t = 1; t <= lo.horizon; ++t) EXPECT_LE(a.year(t), b.year(t)) << i;
  }
}

TEST(ProratePrograms, BaselineYearTwo) {
  auto rev = cohort_revenue(baseline_model());
  auto per = prorate_programs(rev, {62, 59, 7, 16});
  EXPECT_EQ(per[0].year(2), rp(984'222'720));
  EXPECT_EQ(table15_compat(per[0]).year(2), rp(328'074'240));
  YearSeries s({rp(100), rp(7)});
  EXPECT_EQ(prorate_programs(s, {5})[0], s);
  auto quarters = prorate_programs(YearSeries({rp(100)}), {1, 1, 1, 1});
  for (const auto& q : quarters) EXPECT_EQ(q.year(1), rp(25));
  EXPECT_THROW(prorate_programs(s, {0, 0}), ValidationError);
}

TEST(ProratePrograms, CellsSumToTotalWithinOneRupiah) {
  auto rev = cohort_revenue(baseline_model());
  auto per = prorate_programs(rev, {62, 59, 7, 16});
  for (int t = 1; t <= 5; ++t) {
    Money sum;
    Money rounded_sum;
    for (const auto& p : per) {
      sum += p.year(t);
      rounded_sum += round_money(p.year(t));
    }
    EXPECT_LE(oracle::exact(sum - rev.year(t)) * (oracle::exact(sum - rev.year(t)) < 0 ? -1 : 1), cpp_rational(1, 100'000));
    Money diff = rounded_sum - round_money(rev.year(t));
    EXPECT_LE(diff, rp(2));
    EXPECT_GE(diff, rp(-2));
  }
}

TEST(Table15Compat, PrintedTotalsAndCells) {
  auto rev = cohort_revenue(baseline_model());
  auto compat = table15_compat(rev).rounded(RoundingMode::HalfUp);
  std::vector<std::int64_t> totals{297'648'000, 761'978'880, 1'347'035'789, 1'890'736'294, 2'575'798'930};
  for (int t = 1; t <= 5; ++t) EXPECT_EQ(compat.year(t), rp(totals[static_cast<std::size_t>(t - 1)])) << t;

  std::vector<std::vector<std::int64_t>> cells{
      {128'154'000, 328'074'240, 579'973'742, 814'067'015, 1'109'024'539},
      {121'953'000, 312'199'680, 551'910'497, 774'676'676, 1'055'362'062},
      {14'469'000, 37'040'640, 65'480'906, 91'910'792, 125'212'448},
      {33'072'000, 84'664'320, 149'670'643, 210'081'810, 286'199'881},
  };
  auto per = prorate_programs(rev, {62, 59, 7, 16});
  for (std::size_t p = 0; p < 4; ++p) {
    auto shown = table15_compat(per[p]).rounded(RoundingMode::HalfUp);
    for (int t = 1; t <= 5; ++t) EXPECT_EQ(shown.year(t), rp(cells[p][static_cast<std::size_t>(t - 1)])) << p << "," << t;
  }
  EXPECT_EQ(table15_compat(YearSeries(2)), YearSeries(2));
}

TEST(CohortCounts, FlagsYearTwoMismatch) {
  Diagnostics d;
  auto in = incremental_intake({312, 295, 33, 79}, Rate::percent(20));
  auto c = cohort_counts(in, Rate::percent(20), 5, DiagnosticScope(d, "counts"));
  EXPECT_EQ(c.per_program[0], (std::vector<std::int64_t>{62, 74, 89, 107, 129}));
  EXPECT_EQ(c.total[1], 172);
  EXPECT_EQ(c.total_direct[1], 173);
  EXPECT_FALSE(d.empty());
  EXPECT_FALSE(d.has_errors());
}
