#include <algorithm>
#include <vector>

#include <gtest/gtest.h>

#include "roi_forge/money.hpp"
#include "roi_forge/year_series.hpp"
#include "support.hpp"

using namespace roi_forge;

namespace {

Money rp(std::int64_t v) { return Money::rupiah(v); }

}  // namespace

TEST(Decimal, ParsesAndPrintsCanonically) {
  EXPECT_EQ(Decimal::parse("0.20").to_string(), "0.2");
  EXPECT_EQ(Decimal::parse("-0.000").to_string(), "0");
  EXPECT_EQ(Decimal::parse("1e3").to_string(), "1000");
  EXPECT_EQ(Decimal::parse("1.5E-2").to_string(), "0.015");
  EXPECT_EQ(Decimal::parse("+42").to_string(), "42");
  EXPECT_EQ(Decimal::parse("0.20"), Decimal::parse("0.2"));
}

TEST(Decimal, RejectsGarbage) {
  for (const char* bad : {"", "-", ".", "1.2.3", "abc", "1e", "1,000", " 1", "0x10", "nan"}) {
    EXPECT_THROW(Decimal::parse(bad), DecimalParseError) << bad;
  }
}

TEST(Decimal, FixedFormatting) {
  EXPECT_EQ(Decimal::parse("1850.125").to_fixed(2), "1850.13");
  EXPECT_EQ(Decimal::parse("-1850.125").to_fixed(2), "-1850.13");
  EXPECT_EQ(Decimal::parse("1850.125").to_fixed(2, RoundingMode::Down), "1850.12");
  EXPECT_EQ(Decimal::parse("7").to_fixed(2), "7.00");
}

TEST(MulRate, BaselineRecurrenceSteps) {
  EXPECT_EQ(mul_rate(rp(360'000), Rate::parse("1.10")), rp(396'000));
  EXPECT_EQ(mul_rate(rp(30'150'000), Rate::parse("0.90")), rp(27'135'000));
}

TEST(MulRate, IdentityAndZero) {
  gen::Rng rng;
  for (int i = 0; i < 200; ++i) {
    Money x = rng.money(-1'000'000'000, 1'000'000'000, 6);
    EXPECT_EQ(mul_rate(x, Rate::one()), x);
    EXPECT_TRUE(mul_rate(x, Rate{}).is_zero());
  }
}

TEST(MulRate, MatchesBigIntegerOracle) {
  gen::Rng rng;
  for (int i = 0; i < 2000; ++i) {
    Money a = rng.money(-10'000'000'000, 10'000'000'000);
    Rate r = rng.rate(-3, 3, 2);
    Money got = mul_rate(a, r);
    EXPECT_EQ(oracle::exact(got), oracle::exact(a) * oracle::exact(r)) << a.to_string() << " x " << r.to_string();
    EXPECT_LE(got.value().scale(), 2);
  }
}

TEST(MulRate, OverflowIsReported) {
  Money huge = Money::parse("100000000000000000000000000000000000");
  EXPECT_THROW(mul_rate(huge, Rate::integer(10'000)), ArithmeticOverflow);
  EXPECT_THROW(huge * 100'000, ArithmeticOverflow);
}

TEST(RoundMoney, BaselineSums) {
  EXPECT_EQ(round_money(Money::parse("7727396790.896")), rp(7'727'396'791));
  EXPECT_EQ(round_money(Money::parse("5672208881.664")), rp(5'672'208'882));
  EXPECT_EQ(round_money(Money::parse("100.000000")), rp(100));
}

TEST(RoundMoney, Modes) {
  EXPECT_EQ(round_money(Money::parse("2.5")), rp(3));
  EXPECT_EQ(round_money(Money::parse("-2.5")), rp(-3));
  EXPECT_EQ(round_money(Money::parse("2.9"), RoundingMode::Down), rp(2));
  EXPECT_EQ(round_money(Money::parse("-2.9"), RoundingMode::Down), rp(-2));
}

TEST(RoundMoney, IdempotentAndMatchesOracle) {
  gen::Rng rng;
  for (auto mode : {RoundingMode::HalfUp, RoundingMode::Down}) {
    for (int i = 0; i < 1000; ++i) {
      Money x = rng.money(-1'000'000'000, 1'000'000'000, rng.integer(0, 6));
      Money once = round_money(x, mode);
      EXPECT_EQ(round_money(once, mode), once);
      EXPECT_TRUE(once.value().is_integer());
      if (mode == RoundingMode::HalfUp) {
        EXPECT_EQ(oracle::exact(once), oracle::cpp_rational(oracle::round_half_up(oracle::exact(x))));
      }
    }
  }
}

TEST(SumSeries, BaselineSums) {
  YearSeries running({rp(0), rp(30'150'000), rp(67'135'000), rp(60'421'500), rp(54'379'350)});
  EXPECT_EQ(sum_series(running), rp(212'085'850));
  YearSeries savings({rp(219'682'500), rp(241'650'750), rp(265'815'825), rp(292'397'408), rp(321'637'148)});
  EXPECT_EQ(sum_series(savings), rp(1'341'183'631));
  EXPECT_TRUE(sum_series(YearSeries(5)).is_zero());
}

TEST(SumSeries, PermutationInvariant) {
  gen::Rng rng;
  for (int i = 0; i < 300; ++i) {
    std::vector<Money> v;
    int n = static_cast<int>(rng.integer(1, 12));
    for (int k = 0; k < n; ++k) v.push_back(rng.money(-1'000'000'000, 1'000'000'000, rng.integer(0, 6)));
    Money base = sum_series(YearSeries(v));
    oracle::cpp_rational expect = 0;
    for (const auto& m : v) expect += oracle::exact(m);
    EXPECT_EQ(oracle::exact(base), expect);
    std::shuffle(v.begin(), v.end(), rng.engine);
    EXPECT_EQ(sum_series(YearSeries(v)), base);
  }
}

TEST(YearSeries, RejectsBadHorizon) {
  EXPECT_THROW(YearSeries(0), ValidationError);
  EXPECT_THROW(YearSeries(3) + YearSeries(4), ValidationError);
}

TEST(Ratio, ReducesAndCompares) {
  Ratio r = Ratio::of(Decimal::from_integer(6), Decimal::from_integer(4));
  EXPECT_EQ(r.to_string(), "3/2");
  EXPECT_EQ(r.to_decimal(2, RoundingMode::HalfUp).to_string(), "1.5");
  EXPECT_LT(Ratio::of(Decimal::from_integer(1), Decimal::from_integer(3)), r);
}

TEST(Rate, PercentString) {
  EXPECT_EQ(Rate::parse("0.19125").to_percent_string(3), "19.125");
  EXPECT_EQ(Rate::percent(20), Rate::parse("0.2"));
}

TEST(Decimal, PrecisionFallbackKeepsCarriedDigits) {
  Decimal a = Decimal::parse("12345678901.123456789012345678901234");
  Decimal b = Decimal::parse("1.000000000000000000000000000001");
  Decimal p = a * b;
  EXPECT_GE(p.scale(), Decimal::kMinCarriedScale);
  oracle::cpp_rational err = oracle::exact(p) - oracle::exact(a) * oracle::exact(b);
  if (err < 0) err = -err;
  EXPECT_LE(err, oracle::cpp_rational(1, 1'000'000));
  Decimal sum = a + Decimal::parse("0.000000000000000000000000000000000001");
  EXPECT_LE(oracle::exact(sum) - oracle::exact(a), oracle::cpp_rational(1, 1'000'000));
}
