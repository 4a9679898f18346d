#pragma once

// Multi-year cost, saving and productivity series.

#include <optional>
#include <string>
#include <vector>

#include "roi_forge/diagnostics.hpp"
#include "roi_forge/money.hpp"
#include "roi_forge/year_series.hpp"

namespace roi_forge {

/// base in start_year, then multiplied by annual_ratio every following year.
struct ProjectionRule {
  Money base;
  int start_year = 1;
  Rate annual_ratio = Rate::one();

  friend bool operator==(const ProjectionRule&, const ProjectionRule&) = default;
};

enum class CostCategory { RunningCost, OperationalCost };

struct CostLine {
  std::string name;
  CostCategory category = CostCategory::RunningCost;
  ProjectionRule rule;
  std::optional<Rate> saving_fraction;  // operational lines only
  std::optional<int> benefit_id;        // benefit the saving is credited to

  friend bool operator==(const CostLine&, const CostLine&) = default;
};

struct RoleUtilization {
  std::string role;
  Rate before;
  Rate after;

  friend bool operator==(const RoleUtilization&, const RoleUtilization&) = default;
};

struct ProductivityAssumption {
  Money loss_before;
  Money loss_after;
  Rate growth;
  std::vector<RoleUtilization> roles;  // informational
  std::optional<int> benefit_id;

  friend bool operator==(const ProductivityAssumption&, const ProductivityAssumption&) = default;
};

inline YearSeries geometric_series(const ProjectionRule& rule, int horizon, DiagnosticScope diag = {}) {
  YearSeries out(horizon);
  if (rule.start_year > horizon) {
    diag.warning("start_year", "start year " + std::to_string(rule.start_year) + " is beyond the horizon of " +
                                   std::to_string(horizon) + "; the line contributes nothing");
    return out;
  }
  if (rule.start_year < 1) throw ValidationError("start year must be at least 1", diag.base());
  Money v = rule.base;
  for (int t = rule.start_year; t <= horizon; ++t) {
    out.year(t) = v;
    v = v * rule.annual_ratio;
  }
  return out;
}

inline YearSeries apply_saving(const YearSeries& cost, const Rate& fraction) {
  if (fraction < Rate::integer(0) || fraction > Rate::one()) {
    throw ValidationError("saving fraction " + fraction.to_string() + " outside [0, 1]");
  }
  YearSeries out(cost.horizon());
  for (int t = 1; t <= cost.horizon(); ++t) out.year(t) = cost.year(t) * fraction;
  return out;
}

inline YearSeries total_by_year(const std::vector<YearSeries>& lines, int horizon) {
  YearSeries total(horizon);
  for (const auto& line : lines) total = total + line;
  return total;
}

/// Pointwise sum; the horizon is taken from the first line.
inline YearSeries total_by_year(const std::vector<YearSeries>& lines) {
  if (lines.empty()) throw ValidationError("total of zero lines has no horizon");
  return total_by_year(lines, lines.front().horizon());
}

inline YearSeries productivity_series(const ProductivityAssumption& p, int horizon, DiagnosticScope diag = {}) {
  if (p.loss_after > p.loss_before) {
    diag.warning("loss_after", "productivity loss after the project exceeds the loss before it");
  }
  ProjectionRule rule{p.loss_before - p.loss_after, 1, Rate::one() + p.growth};
  return geometric_series(rule, horizon);
}

/// Cost series for every line, in input order.
inline std::vector<YearSeries> project_lines(const std::vector<CostLine>& lines, int horizon, DiagnosticScope diag = {}) {
  std::vector<YearSeries> out;
  out.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    out.push_back(geometric_series(lines[i].rule, horizon, diag.child("[" + std::to_string(i) + "]")));
  }
  return out;
}

}  // namespace roi_forge
