#pragma once

// End-to-end appraisal of a scenario, and parameter sweeps over it.

#include <future>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "roi_forge/appraisal.hpp"
#include "roi_forge/enrollment.hpp"
#include "roi_forge/projection.hpp"
#include "roi_forge/scenario.hpp"
#include "roi_forge/taxonomy.hpp"

namespace roi_forge {

/// Every intermediate table plus the final result.
struct Evaluation {
  Scenario scenario;
  InvestmentBreakdown investment;
  BenefitMatrix matrix;
  std::vector<BenefitItem> financial_benefits;

  std::vector<YearSeries> running_lines;
  YearSeries running_total;
  std::vector<YearSeries> operational_lines;
  YearSeries operational_total;
  std::vector<YearSeries> saving_lines;
  YearSeries saving_total;
  YearSeries productivity;

  std::optional<Rate> estimated_growth;  // informational, from history
  Money per_student_net;
  Intake intake;
  YearSeries enrollment;
  std::vector<YearSeries> enrollment_by_program;
  CohortCounts counts;

  YearSeries net_by_year;
  AppraisalResult result;
};

struct EvaluationOutcome {
  Diagnostics diagnostics;
  std::optional<Evaluation> evaluation;

  bool ok() const { return evaluation.has_value(); }
};

namespace detail {

inline Evaluation run_evaluation(const Scenario& s, Diagnostics& diags) {
  Evaluation ev;
  ev.scenario = s;
  const int h = s.horizon;
  DiagnosticScope root(diags);

  ev.investment = investment_breakdown(s.investment);
  ev.matrix = classify_matrix(s.benefits.items);
  ev.financial_benefits = financial_benefits(s.benefits.items, s.benefits.exclusion_set());

  ev.running_lines = project_lines(s.running_costs, h);
  ev.running_total = total_by_year(ev.running_lines, h);
  ev.operational_lines = project_lines(s.operational_costs, h);
  ev.operational_total = total_by_year(ev.operational_lines, h);
  for (std::size_t i = 0; i < s.operational_costs.size(); ++i) {
    ev.saving_lines.push_back(apply_saving(ev.operational_lines[i], s.operational_costs[i].saving_fraction.value_or(Rate{})));
  }
  ev.saving_total = total_by_year(ev.saving_lines, h);
  ev.productivity = productivity_series(s.productivity, h);

  const auto& e = s.enrollment;
  if (e.history.years.size() >= 2) {
    try {
      ev.estimated_growth = estimate_growth(e.history, GrowthSelector::PositiveOnly);
    } catch (const ValidationError&) {
    }
  }
  CohortModel model{e.effective_baseline(), e.growth, e.fee, e.schedule, h};
  DiagnosticScope enrollment_scope = root.child("enrollment");
  ev.per_student_net = per_student_net(e.fee);
  ev.intake = incremental_intake(model.baseline_intake, model.growth);
  ev.enrollment = cohort_revenue(model, enrollment_scope);
  if (ev.intake.total > 0) {
    ev.enrollment_by_program = prorate_programs(ev.enrollment, ev.intake.per_program);
  } else {
    ev.enrollment_by_program.assign(ev.intake.per_program.size(), YearSeries(h));
  }
  ev.counts = cohort_counts(ev.intake, e.growth, h, enrollment_scope.child("counts"));

  const Rate& tax = s.options.tax_rate;
  ev.net_by_year = yearly_net(ev.enrollment, ev.productivity, ev.saving_total, ev.running_total, tax);

  AppraisalResult& r = ev.result;
  r.statement = build_statement(ev.enrollment, ev.productivity, ev.saving_total, ev.running_total, tax);
  r.investment = ev.investment.total;
  r.horizon = h;
  r.roi_percent = simple_roi(r.statement, h, r.investment);
  if (s.options.discount_rate) r.npv = npv(ev.net_by_year, r.investment, *s.options.discount_rate);
  r.payback_year = payback_year(ev.net_by_year, r.investment);
  return ev;
}

}  // namespace detail

/// Validates then evaluates. Never throws for scenario content problems;
/// they come back as Error diagnostics with no evaluation.
inline EvaluationOutcome evaluate(const Scenario& s) {
  EvaluationOutcome out;
  out.diagnostics = validate(s);
  if (out.diagnostics.has_errors()) return out;
  try {
    out.evaluation = detail::run_evaluation(s, out.diagnostics);
  } catch (const UndefinedRoi& e) {
    out.diagnostics.error("investment", e.what());
  } catch (const ValidationError& e) {
    out.diagnostics.error(e.path(), e.what());
  } catch (const ArithmeticOverflow& e) {
    out.diagnostics.error("", std::string("arithmetic overflow: ") + e.what());
  } catch (const std::domain_error& e) {
    out.diagnostics.error("", e.what());
  }
  if (out.diagnostics.has_errors()) out.evaluation.reset();
  return out;
}

namespace detail {

// Splits "operational_costs[2].saving_fraction" into keys and indices.
struct PathStep {
  std::optional<std::string> key;
  std::optional<std::size_t> index;
};

inline std::vector<PathStep> split_param_path(const std::string& path) {
  std::vector<PathStep> steps;
  std::size_t i = 0;
  auto bad = [&]() { return ValidationError("malformed parameter path '" + path + "'", "param"); };
  if (path.empty()) throw bad();
  while (i < path.size()) {
    if (path[i] == '[') {
      auto close = path.find(']', i);
      if (close == std::string::npos || close == i + 1) throw bad();
      std::string digits = path.substr(i + 1, close - i - 1);
      if (digits.find_first_not_of("0123456789") != std::string::npos) throw bad();
      steps.push_back({std::nullopt, std::stoul(digits)});
      i = close + 1;
      if (i < path.size() && path[i] == '.') ++i;
      continue;
    }
    auto end = path.find_first_of(".[", i);
    if (end == std::string::npos) end = path.size();
    if (end == i) throw bad();
    steps.push_back({path.substr(i, end - i), std::nullopt});
    i = end;
    if (i < path.size() && path[i] == '.') ++i;
  }
  return steps;
}

inline nlohmann::json& resolve_numeric(nlohmann::json& doc, const std::string& path) {
  nlohmann::json* node = &doc;
  for (const auto& step : split_param_path(path)) {
    if (step.key) {
      if (!node->is_object() || !node->contains(*step.key)) {
        throw ValidationError("parameter path '" + path + "' does not name a scenario field", "param");
      }
      node = &(*node)[*step.key];
    } else {
      if (!node->is_array() || *step.index >= node->size()) {
        throw ValidationError("parameter path '" + path + "' indexes past the end of a list", "param");
      }
      node = &(*node)[*step.index];
    }
  }
  bool numeric = node->is_number();
  if (node->is_string()) {
    try {
      Decimal::parse(node->get<std::string>());
      numeric = true;
    } catch (const DecimalParseError&) {
    }
  }
  if (!numeric) throw ValidationError("parameter path '" + path + "' is not a numeric field", "param");
  return *node;
}

}  // namespace detail

/// Scenario copy with one numeric field replaced. Throws ValidationError
/// when the path does not resolve to a numeric field.
inline nlohmann::json with_parameter(const Scenario& s, const std::string& path, const Decimal& value) {
  nlohmann::json doc = scenario_to_json(s);
  nlohmann::json& leaf = detail::resolve_numeric(doc, path);
  leaf = leaf.is_number_integer() && value.is_integer() ? nlohmann::json(*value.to_int64()) : nlohmann::json(value.to_string());
  return doc;
}

struct SweepPoint {
  Decimal value;
  EvaluationOutcome outcome;
};

/// One full evaluation per value, in input order. The input is not modified.
inline std::vector<SweepPoint> sweep(const Scenario& s, const std::string& path, const std::vector<Decimal>& values) {
  // Resolve once up front so a bad path fails before any work.
  {
    nlohmann::json probe = scenario_to_json(s);
    detail::resolve_numeric(probe, path);
  }
  std::vector<std::future<EvaluationOutcome>> jobs;
  jobs.reserve(values.size());
  for (const auto& v : values) {
    std::string text = with_parameter(s, path, v).dump();
    jobs.push_back(std::async(std::launch::async, [text = std::move(text)] {
      ParseResult parsed = parse_scenario(text);
      if (!parsed.scenario) return EvaluationOutcome{parsed.diagnostics, std::nullopt};
      EvaluationOutcome o = evaluate(*parsed.scenario);
      Diagnostics all = parsed.diagnostics;
      all.append(o.diagnostics);
      o.diagnostics = all;
      return o;
    }));
  }
  std::vector<SweepPoint> out;
  for (std::size_t i = 0; i < values.size(); ++i) out.push_back({values[i], jobs[i].get()});
  return out;
}

/// Values from..to inclusive in exact steps of `step`.
inline std::vector<Decimal> decimal_range(const Decimal& from, const Decimal& to, const Decimal& step) {
  if (!(step > Decimal{})) throw ValidationError("step must be positive", "step");
  if (to < from) throw ValidationError("range end is below its start", "to");
  std::vector<Decimal> out;
  for (Decimal v = from; v <= to; v = v + step) {
    out.push_back(v);
    if (out.size() > 10000) throw ValidationError("range has more than 10000 points", "step");
  }
  return out;
}

}  // namespace roi_forge
