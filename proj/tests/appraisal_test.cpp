#include <gtest/gtest.h>

#include "roi_forge/appraisal.hpp"
#include "roi_forge/baseline.hpp"
#include "roi_forge/evaluate.hpp"
#include "support.hpp"

using namespace roi_forge;
using oracle::cpp_rational;

namespace {

Money rp(std::int64_t v) { return Money::rupiah(v); }

YearSeries flat(std::int64_t v, int h) { return YearSeries(std::vector<Money>(static_cast<std::size_t>(h), rp(v))); }

YearSeries random_series(gen::Rng& rng, int h) {
  std::vector<Money> v;
  for (int t = 0; t < h; ++t) v.push_back(rng.money(-5'000'000'000, 50'000'000'000, static_cast<int>(rng.integer(0, 6))));
  return YearSeries(v);
}

const Evaluation& baseline() {
  static const Evaluation ev = [] {
    auto out = evaluate(baseline_scenario());
    if (!out.ok()) throw std::runtime_error("baseline does not evaluate");
    return *out.evaluation;
  }();
  return ev;
}

}  // namespace

TEST(StaffCost, BaselineRows) {
  EXPECT_EQ(staff_cost({"Data Warehouse Administrator", 2, rp(15'000), Rate::integer(7), 260}), rp(54'600'000));
  EXPECT_EQ(staff_cost({"Kepala Proyek", 1, rp(20'000), Rate::integer(7), 260}), rp(36'400'000));
  EXPECT_TRUE(staff_cost({"Relawan", 1, rp(0), Rate::integer(7), 260}).is_zero());
}

TEST(InvestmentTotal, BaselineLedger) {
  auto b = investment_breakdown(baseline_scenario().investment);
  EXPECT_EQ(b.staff, rp(136'500'000));
  EXPECT_EQ(b.hardware, rp(82'000'000));
  EXPECT_EQ(b.network, rp(5'800'000));
  EXPECT_EQ(b.support, rp(14'400'000));
  EXPECT_EQ(b.total, rp(238'700'000));

  InvestmentLedger hw;
  hw.hardware = {{"a", rp(12'000'000)}, {"b", rp(30'000'000)}, {"c", rp(40'000'000)}};
  EXPECT_EQ(investment_total(hw), rp(82'000'000));
  EXPECT_TRUE(investment_total({}).is_zero());
}

TEST(BuildStatement, BaselineTable) {
  const auto& st = baseline().result.statement;
  EXPECT_EQ(round_money(st.enrollment_benefit), rp(20'619'593'679));
  EXPECT_EQ(st.productivity_benefit, rp(332'605'848));
  EXPECT_EQ(round_money(st.net_economic_benefit), rp(20'952'199'527));
  EXPECT_EQ(round_money(st.operational_savings), rp(1'341'183'631));
  EXPECT_EQ(round_money(st.pre_tax_income), rp(22'293'383'158));
  EXPECT_EQ(st.running_costs, rp(212'085'850));
  EXPECT_EQ(round_money(st.net_cash_flow), rp(22'081'297'308));
  EXPECT_TRUE(st.income_tax.is_zero());
}

TEST(BuildStatement, TrivialCases) {
  auto zero = build_statement(YearSeries(5), YearSeries(5), YearSeries(5), YearSeries(5));
  EXPECT_EQ(zero, CashFlowStatement{});
  auto savings = build_statement(YearSeries(5), YearSeries(5), flat(100, 5), YearSeries(5));
  EXPECT_EQ(savings.pre_tax_income, rp(500));
  EXPECT_EQ(savings.net_cash_flow, rp(500));
  EXPECT_THROW(build_statement(YearSeries(5), YearSeries(4), YearSeries(5), YearSeries(5)), ValidationError);
}

TEST(BuildStatement, IdentitiesUnderFuzzing) {
  gen::Rng rng;
  for (int i = 0; i < 1000; ++i) {
    int h = static_cast<int>(rng.integer(1, 8));
    auto e = random_series(rng, h);
    auto p = random_series(rng, h);
    auto s = random_series(rng, h);
    auto r = random_series(rng, h);
    Rate tax = rng.integer(0, 1) ? Rate{} : rng.rate(0, 1, 2);
    auto st = build_statement(e, p, s, r, tax);
    EXPECT_EQ(st.net_economic_benefit, st.enrollment_benefit + st.productivity_benefit);
    EXPECT_EQ(st.pre_tax_income, st.net_economic_benefit + st.operational_savings);
    EXPECT_EQ(st.net_cash_flow, st.pre_tax_income - st.income_tax - st.running_costs);
    EXPECT_EQ(sum_series(yearly_net(e, p, s, r, tax)), st.net_cash_flow);

    cpp_rational total = 0;
    for (int t = 1; t <= h; ++t) total += oracle::exact(e.year(t)) + oracle::exact(p.year(t)) + oracle::exact(s.year(t));
    cpp_rational rc = 0;
    for (int t = 1; t <= h; ++t) rc += oracle::exact(r.year(t));
    EXPECT_EQ(oracle::exact(st.net_cash_flow), total * (1 - oracle::exact(tax)) - rc);
  }
}

TEST(SimpleRoi, BaselineFigure) {
  CashFlowStatement st;
  st.net_cash_flow = rp(22'081'297'308);
  auto roi = simple_roi(st, 5, rp(238'700'000));
  EXPECT_EQ(roi_display(roi), "1850.13");
  EXPECT_EQ(roi_display(baseline().result.roi_percent), "1850.13");
  // |exact - 1850.13| <= 0.01 percentage point.
  cpp_rational exact = cpp_rational(22'081'297'308LL * 100, 5LL * 238'700'000);
  cpp_rational diff = exact - cpp_rational(185013, 100);
  EXPECT_LE(diff < 0 ? cpp_rational(-diff) : diff, cpp_rational(1, 100));
}

TEST(SimpleRoi, DefinitionalCases) {
  CashFlowStatement st;
  EXPECT_EQ(roi_display(simple_roi(st, 5, rp(10))), "0.00");
  st.net_cash_flow = rp(5'000);
  EXPECT_EQ(roi_display(simple_roi(st, 5, rp(1'000))), "100.00");
  EXPECT_THROW(simple_roi(st, 5, Money{}), UndefinedRoi);
  EXPECT_THROW(simple_roi(st, 5, rp(-1)), ValidationError);
}

TEST(SimpleRoi, HomogeneousUnderScaling) {
  gen::Rng rng;
  for (std::int64_t k : {2, 10, 1000}) {
    const auto& base = baseline().result;
    CashFlowStatement scaled;
    scaled.net_cash_flow = base.statement.net_cash_flow * k;
    EXPECT_EQ(simple_roi(scaled, 5, base.investment * k), base.roi_percent) << k;
    for (int i = 0; i < 200; ++i) {
      CashFlowStatement st;
      st.net_cash_flow = rng.money(-10'000'000'000, 100'000'000'000, static_cast<int>(rng.integer(0, 6)));
      Money inv = rng.money(1, 1'000'000'000, static_cast<int>(rng.integer(0, 3)));
      int h = static_cast<int>(rng.integer(1, 10));
      CashFlowStatement big;
      big.net_cash_flow = st.net_cash_flow * k;
      EXPECT_EQ(simple_roi(big, h, inv * k), simple_roi(st, h, inv));
    }
  }
}

TEST(Npv, DiscountZeroAndZeroSeries) {
  const auto& ev = baseline();
  EXPECT_EQ(npv(ev.net_by_year, ev.result.investment, Rate{}), ev.result.statement.net_cash_flow - ev.result.investment);
  EXPECT_EQ(npv(YearSeries(5), rp(238'700'000), Rate::percent(10)), rp(-238'700'000));
}

TEST(Npv, BaselineTenPercentMatchesPerYearOracle) {
  const auto& ev = baseline();
  cpp_rational want = -oracle::exact(ev.result.investment);
  cpp_rational factor = 1;
  for (int t = 1; t <= 5; ++t) {
    factor *= cpp_rational(11, 10);
    want += oracle::exact(ev.net_by_year.year(t)) / factor;
  }
  Money got = npv(ev.net_by_year, ev.result.investment, Rate::percent(10));
  cpp_rational diff = oracle::exact(got) - want;
  EXPECT_LE(diff < 0 ? cpp_rational(-diff) : diff, cpp_rational(1, 2'000'000));
  EXPECT_EQ(round_money(got), Money::parse(oracle::round_half_up(want).str()));
}

TEST(PaybackYear, Cases) {
  const auto& ev = baseline();
  EXPECT_EQ(ev.net_by_year.year(1), rp(1'167'106'500));
  EXPECT_EQ(payback_year(ev.net_by_year, ev.result.investment), 1);
  EXPECT_EQ(payback_year(YearSeries(5), Money{}), 1);
  EXPECT_EQ(payback_year(YearSeries(5), rp(1)), std::nullopt);
  EXPECT_EQ(payback_year(flat(100, 5), rp(250)), 3);
}

TEST(Evaluate, TaxRateAddsIncomeTaxLine) {
  auto s = baseline_scenario();
  s.options.tax_rate = Rate::percent(10);
  auto out = evaluate(s);
  ASSERT_TRUE(out.ok());
  const auto& st = out.evaluation->result.statement;
  EXPECT_EQ(st.income_tax, st.pre_tax_income * Rate::percent(10));
  EXPECT_LT(out.evaluation->result.roi_percent, baseline().result.roi_percent);
}

TEST(Evaluate, ZeroInvestmentIsDiagnosed) {
  auto s = baseline_scenario();
  s.investment = {};
  auto out = evaluate(s);
  EXPECT_FALSE(out.ok());
  EXPECT_TRUE(out.diagnostics.has_errors());
}
