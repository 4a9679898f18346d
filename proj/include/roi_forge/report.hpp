#pragma once

// Tabular exports (CSV, Markdown, JSON) and the structured JSON report.

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "roi_forge/evaluate.hpp"

namespace roi_forge {

using Cell = std::variant<std::string, std::int64_t, Money>;

struct Table {
  std::string name;   // file stem: table9, table19, matrix, ...
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

enum class ExportFormat { Csv, Markdown, Json };
enum class ValueView { Display, Exact };

inline std::optional<ExportFormat> parse_export_format(std::string_view s) {
  if (s == "csv") return ExportFormat::Csv;
  if (s == "md" || s == "markdown") return ExportFormat::Markdown;
  if (s == "json") return ExportFormat::Json;
  return std::nullopt;
}

inline std::string_view file_extension(ExportFormat f) {
  switch (f) {
    case ExportFormat::Csv: return "csv";
    case ExportFormat::Markdown: return "md";
    case ExportFormat::Json: return "json";
  }
  return "txt";
}

namespace detail {

inline std::vector<std::string> year_columns(std::string first, int horizon) {
  std::vector<std::string> cols{std::move(first)};
  for (int t = 1; t <= horizon; ++t) cols.push_back("Tahun ke-" + std::to_string(t));
  return cols;
}

inline std::vector<Cell> series_row(std::string label, const YearSeries& s) {
  std::vector<Cell> row{std::move(label)};
  for (const auto& v : s.values()) row.emplace_back(v);
  return row;
}

inline std::string join_ids(const std::vector<int>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(ids[i]);
  }
  return out;
}

inline std::string percent_label(const Rate& r) { return (r.value() * Decimal::from_integer(100)).to_string() + "%"; }

}  // namespace detail

/// The seven exported tables in fixed order.
inline std::vector<Table> build_tables(const Evaluation& ev) {
  const Scenario& s = ev.scenario;
  const int h = s.horizon;
  std::vector<Table> out;

  Table t9{"table9", "Biaya berjalan proyek", detail::year_columns("Biaya", h), {}};
  for (std::size_t i = 0; i < s.running_costs.size(); ++i) t9.rows.push_back(detail::series_row(s.running_costs[i].name, ev.running_lines[i]));
  t9.rows.push_back(detail::series_row("Total Biaya berjalan", ev.running_total));
  out.push_back(std::move(t9));

  Table t10{"table10", "Biaya operasional pembuatan laporan", detail::year_columns("Jenis Biaya", h), {}};
  for (std::size_t i = 0; i < s.operational_costs.size(); ++i) {
    t10.rows.push_back(detail::series_row(s.operational_costs[i].name, ev.operational_lines[i]));
  }
  t10.rows.push_back(detail::series_row("Total Biaya Operasional", ev.operational_total));
  out.push_back(std::move(t10));

  Table t11{"table11", "Penghematan biaya operasional pembuatan laporan", detail::year_columns("Jenis Penghematan", h), {}};
  for (std::size_t i = 0; i < s.operational_costs.size(); ++i) {
    const auto& c = s.operational_costs[i];
    t11.rows.push_back(detail::series_row(c.name + " (" + detail::percent_label(c.saving_fraction.value_or(Rate{})) + ")",
                                          ev.saving_lines[i]));
  }
  t11.rows.push_back(detail::series_row("Total Penghematan", ev.saving_total));
  out.push_back(std::move(t11));

  Table t15{"table15", "Perkiraan pendapatan dari peningkatan jumlah mahasiswa baru", {"Program Studi"}, {}};
  for (int t = 1; t <= h; ++t) {
    t15.columns.push_back("Tahun ke-" + std::to_string(t) + " Rata-rata");
    t15.columns.push_back("Tahun ke-" + std::to_string(t) + " Rp");
  }
  auto shown = [&](const YearSeries& v) { return s.options.table15_compat ? table15_compat(v) : v; };
  const auto& programs = s.enrollment.history.programs;
  for (std::size_t p = 0; p < ev.enrollment_by_program.size(); ++p) {
    std::vector<Cell> row{p < programs.size() ? programs[p] : "program " + std::to_string(p + 1)};
    YearSeries money = shown(ev.enrollment_by_program[p]);
    for (int t = 1; t <= h; ++t) {
      row.emplace_back(ev.counts.per_program[p][static_cast<std::size_t>(t - 1)]);
      row.emplace_back(money.year(t));
    }
    t15.rows.push_back(std::move(row));
  }
  {
    std::vector<Cell> row{std::string("Total")};
    YearSeries money = shown(ev.enrollment);
    for (int t = 1; t <= h; ++t) {
      row.emplace_back(ev.counts.total[static_cast<std::size_t>(t - 1)]);
      row.emplace_back(money.year(t));
    }
    t15.rows.push_back(std::move(row));
  }
  out.push_back(std::move(t15));

  Table t18{"table18", "Rekapitulasi efisiensi produktivitas kerja", detail::year_columns("Efisiensi", h), {}};
  t18.rows.push_back(detail::series_row("Efisiensi produktivitas kerja", ev.productivity));
  out.push_back(std::move(t18));

  const auto& st = ev.result.statement;
  Table t19{"table19", "Arus kas bersih", {"Manfaat dan Biaya", "Harga"}, {}};
  t19.rows.push_back({std::string("Penerimaan Mahasiswa baru"), st.enrollment_benefit});
  t19.rows.push_back({std::string("Peningkatan produktivitas manajemen tingkat atas"), st.productivity_benefit});
  t19.rows.push_back({std::string("Manfaat Ekonomi Bersih"), st.net_economic_benefit});
  t19.rows.push_back({std::string("Pengurangan Biaya Operasional"), st.operational_savings});
  t19.rows.push_back({std::string("Pendapatan Sebelum Pajak"), st.pre_tax_income});
  if (!s.options.tax_rate.is_zero()) t19.rows.push_back({std::string("Pajak"), st.income_tax});
  t19.rows.push_back({std::string("Biaya Berjalan"), st.running_costs});
  t19.rows.push_back({std::string("Arus Kas Bersih"), st.net_cash_flow});
  out.push_back(std::move(t19));

  Table matrix{"matrix", "Matrik Manfaat", {"Aspek", "Measurable", "Immeasurable"}, {}};
  for (auto tang : {Tangibility::Tangible, Tangibility::Intangible}) {
    std::string label = tang == Tangibility::Tangible ? "Tangible" : "Intangible";
    matrix.rows.push_back({label, detail::join_ids(ev.matrix.cell(tang, Measurability::Measurable)),
                           detail::join_ids(ev.matrix.cell(tang, Measurability::Immeasurable))});
  }
  out.push_back(std::move(matrix));
  return out;
}

inline std::string render_cell(const Cell& c, ValueView view, RoundingMode mode) {
  if (auto* s = std::get_if<std::string>(&c)) return *s;
  if (auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  const Money& m = std::get<Money>(c);
  return view == ValueView::Exact ? m.to_string() : round_money(m, mode).to_string();
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string md_field(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

/// RFC 4180: CRLF line ends, fields quoted only when needed.
inline std::string to_csv(const Table& t, ValueView view, RoundingMode mode) {
  std::string out;
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += detail::csv_field(fields[i]);
    }
    out += "\r\n";
  };
  line(t.columns);
  for (const auto& row : t.rows) {
    std::vector<std::string> fields;
    for (const auto& c : row) fields.push_back(render_cell(c, view, mode));
    line(fields);
  }
  return out;
}

inline std::string to_markdown(const Table& t, ValueView view, RoundingMode mode) {
  std::string out = "### " + t.title + "\n\n|";
  for (const auto& c : t.columns) out += " " + detail::md_field(c) + " |";
  out += "\n|";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += i == 0 ? " --- |" : " ---: |";
  out += "\n";
  for (const auto& row : t.rows) {
    out += "|";
    for (const auto& c : row) out += " " + detail::md_field(render_cell(c, view, mode)) + " |";
    out += "\n";
  }
  return out;
}

/// Display and exact cells side by side.
inline nlohmann::json to_json(const Table& t, RoundingMode mode) {
  nlohmann::json rows = nlohmann::json::array();
  nlohmann::json exact = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json r = nlohmann::json::array();
    nlohmann::json x = nlohmann::json::array();
    for (const auto& c : row) {
      r.push_back(render_cell(c, ValueView::Display, mode));
      x.push_back(render_cell(c, ValueView::Exact, mode));
    }
    rows.push_back(std::move(r));
    exact.push_back(std::move(x));
  }
  return {{"title", t.title}, {"columns", t.columns}, {"rows", rows}, {"exact_rows", exact}};
}

/// Document name -> content, one per table.
inline std::map<std::string, std::string> export_tables(const Evaluation& ev, ExportFormat format,
                                                        ValueView view = ValueView::Display) {
  std::map<std::string, std::string> docs;
  RoundingMode mode = ev.scenario.options.rounding;
  for (const auto& t : build_tables(ev)) {
    switch (format) {
      case ExportFormat::Csv: docs[t.name] = to_csv(t, view, mode); break;
      case ExportFormat::Markdown: docs[t.name] = to_markdown(t, view, mode); break;
      case ExportFormat::Json: docs[t.name] = to_json(t, mode).dump(2) + "\n"; break;
    }
  }
  return docs;
}

inline nlohmann::json diagnostics_json(const Diagnostics& d) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& item : d.items()) {
    a.push_back({{"severity", to_string(item.severity)}, {"path", item.path}, {"message", item.message}});
  }
  return a;
}

inline nlohmann::json statement_json(const CashFlowStatement& st, bool exact, RoundingMode mode) {
  auto v = [&](const Money& m) { return exact ? m.to_string() : round_money(m, mode).to_string(); };
  return {{"enrollment_benefit", v(st.enrollment_benefit)},
          {"productivity_benefit", v(st.productivity_benefit)},
          {"net_economic_benefit", v(st.net_economic_benefit)},
          {"operational_savings", v(st.operational_savings)},
          {"pre_tax_income", v(st.pre_tax_income)},
          {"income_tax", v(st.income_tax)},
          {"running_costs", v(st.running_costs)},
          {"net_cash_flow", v(st.net_cash_flow)}};
}

/// Structured report. Money values are decimal strings; roi_percent is the
/// two-decimal display value and roi_percent_exact the reduced fraction.
inline nlohmann::json report_json(const EvaluationOutcome& outcome) {
  nlohmann::json j;
  j["diagnostics"] = diagnostics_json(outcome.diagnostics);
  if (!outcome.ok()) {
    j["ok"] = false;
    return j;
  }
  const Evaluation& ev = *outcome.evaluation;
  RoundingMode mode = ev.scenario.options.rounding;
  const auto& r = ev.result;
  j["ok"] = true;
  j["scenario"] = ev.scenario.meta.name;
  j["currency"] = ev.scenario.meta.currency;
  j["horizon"] = r.horizon;
  j["investment"] = {{"staff", ev.investment.staff.to_string()},
                     {"hardware", ev.investment.hardware.to_string()},
                     {"network", ev.investment.network.to_string()},
                     {"support", ev.investment.support.to_string()},
                     {"total", ev.investment.total.to_string()}};
  j["statement"] = statement_json(r.statement, false, mode);
  j["statement_exact"] = statement_json(r.statement, true, mode);
  j["roi_percent"] = roi_display(r.roi_percent);
  j["roi_percent_exact"] = r.roi_percent.to_string();
  j["npv"] = r.npv ? nlohmann::json(r.npv->to_string()) : nlohmann::json(nullptr);
  j["payback_year"] = r.payback_year ? nlohmann::json(*r.payback_year) : nlohmann::json(nullptr);
  nlohmann::json enrollment = {{"per_student_net", ev.per_student_net.to_string()},
                               {"incremental_intake", ev.intake.per_program},
                               {"incremental_intake_total", ev.intake.total}};
  enrollment["estimated_growth"] = ev.estimated_growth ? nlohmann::json(ev.estimated_growth->to_string()) : nlohmann::json(nullptr);
  j["enrollment"] = enrollment;
  nlohmann::json net = nlohmann::json::array();
  for (const auto& v : ev.net_by_year.values()) net.push_back(v.to_string());
  j["net_by_year"] = net;
  nlohmann::json tables = nlohmann::json::object();
  for (const auto& t : build_tables(ev)) tables[t.name] = to_json(t, mode);
  j["tables"] = tables;
  return j;
}

inline std::string report_text(const EvaluationOutcome& outcome) { return report_json(outcome).dump(2) + "\n"; }

/// Sweep rows: one object per value with the headline measures.
inline nlohmann::json sweep_json(const std::string& param, const std::vector<SweepPoint>& points) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& p : points) {
    nlohmann::json row = {{"value", p.value.to_string()}, {"ok", p.outcome.ok()},
                          {"diagnostics", diagnostics_json(p.outcome.diagnostics)}};
    if (p.outcome.ok()) {
      const auto& ev = *p.outcome.evaluation;
      const auto& r = ev.result;
      row["roi_percent"] = roi_display(r.roi_percent);
      row["net_cash_flow"] = round_money(r.statement.net_cash_flow, ev.scenario.options.rounding).to_string();
      row["npv"] = r.npv ? nlohmann::json(r.npv->to_string()) : nlohmann::json(nullptr);
      row["payback_year"] = r.payback_year ? nlohmann::json(*r.payback_year) : nlohmann::json(nullptr);
    }
    rows.push_back(std::move(row));
  }
  return {{"param", param}, {"rows", rows}};
}

inline Table sweep_table(const std::string& param, const std::vector<SweepPoint>& points) {
  Table t{"sweep", "ROI sensitivity to " + param, {param, "roi_percent", "net_cash_flow", "payback_year"}, {}};
  for (const auto& p : points) {
    if (!p.outcome.ok()) {
      t.rows.push_back({p.value.to_string(), std::string("invalid"), std::string(""), std::string("")});
      continue;
    }
    const auto& r = p.outcome.evaluation->result;
    t.rows.push_back({p.value.to_string(), roi_display(r.roi_percent), r.statement.net_cash_flow,
                      r.payback_year ? std::to_string(*r.payback_year) : std::string("none")});
  }
  return t;
}

}  // namespace roi_forge
