#pragma once

// Investment ledger, cash-flow statement and Simple ROI, plus NPV and
// payback as supporting measures.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "roi_forge/diagnostics.hpp"
#include "roi_forge/money.hpp"
#include "roi_forge/year_series.hpp"

namespace roi_forge {

class UndefinedRoi : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct StaffLine {
  std::string role;
  std::int64_t headcount = 1;
  Money hourly_wage;
  Rate hours_per_day = Rate::integer(7);
  std::int64_t working_days = 260;

  Rate total_hours() const { return hours_per_day * Rate::integer(working_days); }

  friend bool operator==(const StaffLine&, const StaffLine&) = default;
};

struct LedgerItem {
  std::string name;
  Money amount;

  friend bool operator==(const LedgerItem&, const LedgerItem&) = default;
};

struct InvestmentLedger {
  std::vector<StaffLine> staff;
  std::vector<LedgerItem> hardware;
  std::vector<LedgerItem> network;
  std::vector<LedgerItem> support;

  friend bool operator==(const InvestmentLedger&, const InvestmentLedger&) = default;
};

inline Money staff_cost(const StaffLine& line) { return line.hourly_wage * line.total_hours() * line.headcount; }

struct InvestmentBreakdown {
  Money staff;
  Money hardware;
  Money network;
  Money support;
  Money total;
};

inline Money sum_items(const std::vector<LedgerItem>& items) {
  Money sum;
  for (const auto& i : items) sum += i.amount;
  return sum;
}

inline InvestmentBreakdown investment_breakdown(const InvestmentLedger& ledger) {
  InvestmentBreakdown b;
  for (const auto& s : ledger.staff) b.staff += staff_cost(s);
  b.hardware = sum_items(ledger.hardware);
  b.network = sum_items(ledger.network);
  b.support = sum_items(ledger.support);
  b.total = b.staff + b.hardware + b.network + b.support;
  return b;
}

inline Money investment_total(const InvestmentLedger& ledger) { return investment_breakdown(ledger).total; }

/// Five-year totals of every cash-flow line. The identities
///   net_economic_benefit = enrollment_benefit + productivity_benefit
///   pre_tax_income       = net_economic_benefit + operational_savings
///   net_cash_flow        = pre_tax_income - income_tax - running_costs
/// hold by construction.
struct CashFlowStatement {
  Money enrollment_benefit;
  Money productivity_benefit;
  Money net_economic_benefit;
  Money operational_savings;
  Money pre_tax_income;
  Money income_tax;
  Money running_costs;
  Money net_cash_flow;

  friend bool operator==(const CashFlowStatement&, const CashFlowStatement&) = default;
};

inline CashFlowStatement build_statement(const YearSeries& enrollment, const YearSeries& productivity,
                                         const YearSeries& savings, const YearSeries& running,
                                         const Rate& tax_rate = Rate{}) {
  int h = enrollment.horizon();
  if (productivity.horizon() != h || savings.horizon() != h || running.horizon() != h) {
    throw ValidationError("cash-flow inputs must share one horizon");
  }
  CashFlowStatement s;
  s.enrollment_benefit = sum_series(enrollment);
  s.productivity_benefit = sum_series(productivity);
  s.net_economic_benefit = s.enrollment_benefit + s.productivity_benefit;
  s.operational_savings = sum_series(savings);
  s.pre_tax_income = s.net_economic_benefit + s.operational_savings;
  s.income_tax = s.pre_tax_income * tax_rate;
  s.running_costs = sum_series(running);
  s.net_cash_flow = s.pre_tax_income - s.income_tax - s.running_costs;
  return s;
}

/// Net cash flow per year: inflows minus tax minus running costs.
inline YearSeries yearly_net(const YearSeries& enrollment, const YearSeries& productivity, const YearSeries& savings,
                             const YearSeries& running, const Rate& tax_rate = Rate{}) {
  YearSeries pre_tax = enrollment + productivity + savings;
  YearSeries out(pre_tax.horizon());
  for (int t = 1; t <= out.horizon(); ++t) {
    out.year(t) = pre_tax.year(t) - pre_tax.year(t) * tax_rate - running.year(t);
  }
  return out;
}

/// 100 * net_cash_flow / horizon / investment, exact.
inline Ratio simple_roi(const CashFlowStatement& statement, int horizon, const Money& investment) {
  if (horizon < 1) throw ValidationError("horizon must be at least 1", "horizon");
  if (investment.is_negative()) throw ValidationError("investment must not be negative", "investment");
  if (investment.is_zero()) throw UndefinedRoi("ROI is undefined for a zero investment");
  Decimal num = statement.net_cash_flow.value() * Decimal::from_integer(100);
  Decimal den = investment.value() * Decimal::from_integer(horizon);
  return Ratio::of(num, den);
}

/// ROI percent for display, two decimals half-up ("1850.13").
inline std::string roi_display(const Ratio& roi_percent) { return roi_percent.to_decimal(2, RoundingMode::HalfUp).to_fixed(2); }

/// -investment + sum_t net[t] / (1+discount)^t, carried to kDivisionScale digits.
inline Money npv(const YearSeries& net, const Money& investment, const Rate& discount) {
  if (discount <= Rate::integer(-1)) throw ValidationError("discount rate must exceed -1", "discount_rate");
  Rate growth = Rate::one() + discount;
  int h = net.horizon();
  // Common denominator (1+d)^H keeps the sum exact until the final division.
  Money numerator = -(investment * pow(growth, h));
  for (int t = 1; t <= h; ++t) numerator += net.year(t) * pow(growth, h - t);
  return Money(Decimal::divide(numerator.value(), pow(growth, h).value(), kDivisionScale, RoundingMode::HalfUp));
}

/// First year whose cumulative net cash flow covers the investment.
inline std::optional<int> payback_year(const YearSeries& net, const Money& investment) {
  if (!(investment > Money{})) return 1;
  Money cumulative;
  for (int t = 1; t <= net.horizon(); ++t) {
    cumulative += net.year(t);
    if (cumulative >= investment) return t;
  }
  return std::nullopt;
}

struct AppraisalResult {
  CashFlowStatement statement;
  Money investment;
  int horizon = 0;
  Ratio roi_percent;
  std::optional<Money> npv;
  std::optional<int> payback_year;
};

}  // namespace roi_forge
