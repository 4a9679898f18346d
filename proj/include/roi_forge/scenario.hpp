#pragma once

// Scenario document: typed model, JSON parsing with exact decimals,
// semantic validation and canonical emission.
//
// Monetary and rate fields are accepted as JSON strings ("0.10") or JSON
// numbers (0.10). Numbers are taken from their source lexeme, never through
// a double. Emission always writes decimal strings with sorted keys.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "roi_forge/appraisal.hpp"
#include "roi_forge/diagnostics.hpp"
#include "roi_forge/enrollment.hpp"
#include "roi_forge/money.hpp"
#include "roi_forge/projection.hpp"
#include "roi_forge/taxonomy.hpp"

namespace roi_forge {

inline constexpr int kSchemaVersion = 1;
inline constexpr int kMaxHorizon = 100;

struct ScenarioMeta {
  std::string name;
  std::string currency = "IDR";
  std::string description;

  friend bool operator==(const ScenarioMeta&, const ScenarioMeta&) = default;
};

struct BenefitsSection {
  std::vector<BenefitItem> items;
  std::vector<int> exclusions;

  std::set<int> exclusion_set() const { return {exclusions.begin(), exclusions.end()}; }

  friend bool operator==(const BenefitsSection&, const BenefitsSection&) = default;
};

struct EnrollmentSection {
  std::optional<int> benefit_id;
  EnrollmentHistory history;
  std::optional<std::vector<std::int64_t>> baseline_intake;  // aligned with history.programs
  Rate growth;
  FeeModel fee;
  PaymentSchedule schedule;

  /// Explicit baseline, else the most recent history year.
  std::vector<std::int64_t> effective_baseline() const {
    if (baseline_intake) return *baseline_intake;
    if (history.years.empty()) return {};
    return history.years.back().counts;
  }

  friend bool operator==(const EnrollmentSection&, const EnrollmentSection&) = default;
};

struct ScenarioOptions {
  RoundingMode rounding = RoundingMode::HalfUp;
  bool table15_compat = true;
  Rate tax_rate;
  std::optional<Rate> discount_rate;

  friend bool operator==(const ScenarioOptions&, const ScenarioOptions&) = default;
};

struct Scenario {
  int schema_version = kSchemaVersion;
  ScenarioMeta meta;
  int horizon = 5;
  BenefitsSection benefits;
  InvestmentLedger investment;
  std::vector<CostLine> running_costs;
  std::vector<CostLine> operational_costs;
  ProductivityAssumption productivity;
  EnrollmentSection enrollment;
  ScenarioOptions options;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Reads a sidecar file named in the scenario (enrollment.history_csv).
using SidecarReader = std::function<std::optional<std::string>(const std::string& path)>;

struct ParseOptions {
  SidecarReader read_sidecar;
};

struct ParseResult {
  std::optional<Scenario> scenario;  // present iff no Error diagnostics
  Diagnostics diagnostics;
};

namespace detail {

using ojson = nlohmann::ordered_json;

// Builds an ordered_json tree, storing every non-integer number as the
// string of its source lexeme.
class ExactSaxBuilder {
 public:
  using number_integer_t = ojson::number_integer_t;
  using number_unsigned_t = ojson::number_unsigned_t;
  using number_float_t = ojson::number_float_t;
  using string_t = ojson::string_t;
  using binary_t = ojson::binary_t;

  explicit ExactSaxBuilder(ojson& root) : root_(root) {}

  bool null() { return put(nullptr); }
  bool boolean(bool v) { return put(v); }
  bool number_integer(number_integer_t v) { return put(v); }
  bool number_unsigned(number_unsigned_t v) { return put(v); }
  bool number_float(number_float_t, const string_t& lexeme) { return put(lexeme); }
  bool string(string_t& v) { return put(v); }
  bool binary(binary_t& v) { return put(ojson::binary(v)); }
  bool start_object(std::size_t) {
    stack_.push_back(put_container(ojson::object()));
    return true;
  }
  bool key(string_t& k) {
    key_ = k;
    return true;
  }
  bool end_object() {
    stack_.pop_back();
    return true;
  }
  bool start_array(std::size_t) {
    stack_.push_back(put_container(ojson::array()));
    return true;
  }
  bool end_array() {
    stack_.pop_back();
    return true;
  }
  bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) {
    error_position_ = position;
    error_message_ = ex.what();
    return false;
  }

  std::optional<std::size_t> error_position() const { return error_position_; }
  const std::string& error_message() const { return error_message_; }

 private:
  template <typename V>
  bool put(V&& v) {
    put_container(ojson(std::forward<V>(v)));
    return true;
  }

  ojson* put_container(ojson v) {
    if (stack_.empty()) {
      root_ = std::move(v);
      return &root_;
    }
    ojson& parent = *stack_.back();
    if (parent.is_array()) {
      parent.push_back(std::move(v));
      return &parent.back();
    }
    parent[key_] = std::move(v);
    return &parent[key_];
  }

  ojson& root_;
  std::vector<ojson*> stack_;
  std::string key_;
  std::optional<std::size_t> error_position_;
  std::string error_message_;
};

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t position) {
  std::size_t line = 1;
  std::size_t col = 0;
  for (std::size_t i = 0; i < position && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 0;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Typed field access with path-located diagnostics.
class Reader {
 public:
  explicit Reader(Diagnostics& d) : d_(d) {}

  Diagnostics& diagnostics() { return d_; }

  const ojson* field(const ojson& obj, const std::string& path, const char* key, bool required) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
      if (required) d_.error(join_path(path, key), "required field is missing");
      return nullptr;
    }
    return &*it;
  }

  bool object(const ojson& v, const std::string& path) {
    if (v.is_object()) return true;
    d_.error(path, "expected an object");
    return false;
  }

  bool array(const ojson& v, const std::string& path) {
    if (v.is_array()) return true;
    d_.error(path, "expected an array");
    return false;
  }

  void known_keys(const ojson& obj, const std::string& path, std::initializer_list<std::string_view> keys) {
    if (!obj.is_object()) return;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (std::find(keys.begin(), keys.end(), it.key()) == keys.end()) {
        d_.warning(join_path(path, it.key()), "unknown key ignored");
      }
    }
  }

  std::optional<Decimal> decimal(const ojson& v, const std::string& path) {
    try {
      if (v.is_number_integer()) {
        return v.is_number_unsigned() ? Decimal::parse(std::to_string(v.get<std::uint64_t>()))
                                      : Decimal::from_integer(v.get<std::int64_t>());
      }
      if (v.is_string()) return Decimal::parse(v.get<std::string>());
    } catch (const std::exception& e) {
      d_.error(path, e.what());
      return std::nullopt;
    }
    d_.error(path, "expected a decimal string or number");
    return std::nullopt;
  }

  std::optional<std::int64_t> integer(const ojson& v, const std::string& path) {
    auto d = decimal(v, path);
    if (!d) return std::nullopt;
    auto i = d->to_int64();
    if (!i) d_.error(path, "expected an integer");
    return i;
  }

  std::optional<std::string> text(const ojson& v, const std::string& path) {
    if (v.is_string()) return v.get<std::string>();
    d_.error(path, "expected a string");
    return std::nullopt;
  }

  // Convenience: optional/required field of a given kind, with default.
  Money money_field(const ojson& obj, const std::string& path, const char* key, bool required = true) {
    if (auto* f = field(obj, path, key, required)) {
      if (auto d = decimal(*f, join_path(path, key))) return Money(*d);
    }
    return Money{};
  }
  std::optional<Rate> rate_field(const ojson& obj, const std::string& path, const char* key, bool required = true) {
    if (auto* f = field(obj, path, key, required)) {
      if (auto d = decimal(*f, join_path(path, key))) return Rate(*d);
    }
    return std::nullopt;
  }
  std::optional<std::int64_t> int_field(const ojson& obj, const std::string& path, const char* key, bool required = true) {
    if (auto* f = field(obj, path, key, required)) return integer(*f, join_path(path, key));
    return std::nullopt;
  }
  std::string text_field(const ojson& obj, const std::string& path, const char* key, bool required = true,
                         std::string fallback = {}) {
    if (auto* f = field(obj, path, key, required)) {
      if (auto s = text(*f, join_path(path, key))) return *s;
    }
    return fallback;
  }

  template <typename E>
  E enum_field(const ojson& obj, const std::string& path, const char* key, E fallback) {
    std::string s = text_field(obj, path, key);
    if (s.empty()) return fallback;
    if (auto e = parse_enum<E>(s)) return *e;
    d_.error(join_path(path, key), "unrecognized value '" + s + "'");
    return fallback;
  }

 private:
  Diagnostics& d_;
};

inline std::string idx(std::string_view base, std::size_t i) { return std::string(base) + "[" + std::to_string(i) + "]"; }

inline BenefitsSection read_benefits(Reader& r, const ojson& v, const std::string& path) {
  BenefitsSection out;
  if (!r.object(v, path)) return out;
  r.known_keys(v, path, {"items", "exclusions"});
  if (auto* items = r.field(v, path, "items", true); items && r.array(*items, path + ".items")) {
    for (std::size_t i = 0; i < items->size(); ++i) {
      const auto& it = (*items)[i];
      std::string p = idx(path + ".items", i);
      if (!r.object(it, p)) continue;
      r.known_keys(it, p, {"id", "name", "tangibility", "measurability", "domain", "value", "method"});
      BenefitItem b;
      b.id = static_cast<int>(r.int_field(it, p, "id").value_or(0));
      b.name = r.text_field(it, p, "name");
      b.tangibility = r.enum_field(it, p, "tangibility", Tangibility::Tangible);
      b.measurability = r.enum_field(it, p, "measurability", Measurability::Measurable);
      b.domain = r.enum_field(it, p, "domain", DomainClass::Technology);
      b.value = r.enum_field(it, p, "value", ValueClass::Financial);
      b.method = r.enum_field(it, p, "method", MeasurementMethod::SimpleRoi);
      out.items.push_back(std::move(b));
    }
  }
  if (auto* ex = r.field(v, path, "exclusions", false); ex && r.array(*ex, path + ".exclusions")) {
    for (std::size_t i = 0; i < ex->size(); ++i) {
      if (auto id = r.integer((*ex)[i], idx(path + ".exclusions", i))) out.exclusions.push_back(static_cast<int>(*id));
    }
  }
  return out;
}

inline std::vector<LedgerItem> read_items(Reader& r, const ojson& v, const std::string& path) {
  std::vector<LedgerItem> out;
  if (!r.array(v, path)) return out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::string p = idx(path, i);
    if (!r.object(v[i], p)) continue;
    r.known_keys(v[i], p, {"name", "amount"});
    out.push_back({r.text_field(v[i], p, "name"), r.money_field(v[i], p, "amount")});
  }
  return out;
}

inline InvestmentLedger read_investment(Reader& r, const ojson& v, const std::string& path) {
  InvestmentLedger out;
  if (!r.object(v, path)) return out;
  r.known_keys(v, path, {"staff", "hardware", "network", "support"});
  if (auto* staff = r.field(v, path, "staff", true); staff && r.array(*staff, path + ".staff")) {
    for (std::size_t i = 0; i < staff->size(); ++i) {
      const auto& s = (*staff)[i];
      std::string p = idx(path + ".staff", i);
      if (!r.object(s, p)) continue;
      r.known_keys(s, p, {"role", "headcount", "hourly_wage", "hours_per_day", "working_days"});
      StaffLine line;
      line.role = r.text_field(s, p, "role");
      line.headcount = r.int_field(s, p, "headcount").value_or(1);
      line.hourly_wage = r.money_field(s, p, "hourly_wage");
      line.hours_per_day = r.rate_field(s, p, "hours_per_day").value_or(Rate{});
      line.working_days = r.int_field(s, p, "working_days").value_or(0);
      out.staff.push_back(std::move(line));
    }
  }
  for (auto [key, dest] : {std::pair{"hardware", &out.hardware}, {"network", &out.network}, {"support", &out.support}}) {
    if (auto* f = r.field(v, path, key, true)) *dest = read_items(r, *f, join_path(path, key));
  }
  return out;
}

inline std::vector<CostLine> read_cost_lines(Reader& r, const ojson& v, const std::string& path, CostCategory category) {
  std::vector<CostLine> out;
  if (!r.array(v, path)) return out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& c = v[i];
    std::string p = idx(path, i);
    if (!r.object(c, p)) continue;
    r.known_keys(c, p, {"name", "base", "start_year", "annual_ratio", "saving_fraction", "benefit_id"});
    CostLine line;
    line.category = category;
    line.name = r.text_field(c, p, "name");
    line.rule.base = r.money_field(c, p, "base");
    line.rule.start_year = static_cast<int>(r.int_field(c, p, "start_year").value_or(1));
    line.rule.annual_ratio = r.rate_field(c, p, "annual_ratio").value_or(Rate::one());
    line.saving_fraction = r.rate_field(c, p, "saving_fraction", category == CostCategory::OperationalCost);
    if (auto id = r.int_field(c, p, "benefit_id", false)) line.benefit_id = static_cast<int>(*id);
    out.push_back(std::move(line));
  }
  return out;
}

inline ProductivityAssumption read_productivity(Reader& r, const ojson& v, const std::string& path) {
  ProductivityAssumption out;
  if (!r.object(v, path)) return out;
  r.known_keys(v, path, {"loss_before", "loss_after", "growth", "roles", "benefit_id"});
  out.loss_before = r.money_field(v, path, "loss_before");
  out.loss_after = r.money_field(v, path, "loss_after");
  out.growth = r.rate_field(v, path, "growth").value_or(Rate{});
  if (auto id = r.int_field(v, path, "benefit_id", false)) out.benefit_id = static_cast<int>(*id);
  if (auto* roles = r.field(v, path, "roles", false); roles && r.array(*roles, path + ".roles")) {
    for (std::size_t i = 0; i < roles->size(); ++i) {
      const auto& o = (*roles)[i];
      std::string p = idx(path + ".roles", i);
      if (!r.object(o, p)) continue;
      r.known_keys(o, p, {"role", "utilization_before", "utilization_after"});
      out.roles.push_back({r.text_field(o, p, "role"), r.rate_field(o, p, "utilization_before").value_or(Rate{}),
                           r.rate_field(o, p, "utilization_after").value_or(Rate{})});
    }
  }
  return out;
}

inline std::size_t program_index(std::vector<std::string>& programs, const std::string& name, bool fixed) {
  auto it = std::find(programs.begin(), programs.end(), name);
  if (it != programs.end()) return static_cast<std::size_t>(it - programs.begin());
  if (fixed) return programs.size();
  programs.push_back(name);
  return programs.size() - 1;
}

// Collected (year, program, count) triples before alignment.
struct HistoryRecord {
  std::int64_t year;
  std::string program;
  std::int64_t count;
  std::string path;
};

inline EnrollmentHistory assemble_history(Reader& r, std::vector<std::string> programs, bool fixed_programs,
                                          const std::vector<HistoryRecord>& records, const std::string& path) {
  EnrollmentHistory h;
  std::map<std::int64_t, std::map<std::size_t, std::int64_t>> by_year;
  for (const auto& rec : records) {
    std::size_t p = program_index(programs, rec.program, fixed_programs);
    if (p == programs.size()) {
      r.diagnostics().error(rec.path, "program '" + rec.program + "' is not listed in enrollment.programs");
      continue;
    }
    if (!by_year[rec.year].emplace(p, rec.count).second) {
      r.diagnostics().error(rec.path, "duplicate count for program '" + rec.program + "'");
    }
  }
  h.programs = programs;
  for (const auto& [year, counts] : by_year) {
    IntakeYear y;
    y.year = static_cast<int>(year);
    for (std::size_t p = 0; p < programs.size(); ++p) {
      auto it = counts.find(p);
      if (it == counts.end()) {
        r.diagnostics().error(path + "." + std::to_string(year), "no count for program '" + programs[p] + "'");
        y.counts.push_back(0);
      } else {
        y.counts.push_back(it->second);
      }
    }
    h.years.push_back(std::move(y));
  }
  return h;
}

inline std::vector<HistoryRecord> read_history_csv(Reader& r, const std::string& csv, const std::string& path) {
  std::vector<HistoryRecord> out;
  std::istringstream in(csv);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ls(line);
    std::string col;
    while (std::getline(ls, col, ',')) cols.push_back(col);
    std::string p = path + ":" + std::to_string(line_no);
    if (line_no == 1 && !cols.empty() && cols[0] == "year") continue;
    if (cols.size() != 3) {
      r.diagnostics().error(p, "expected year,program,count");
      continue;
    }
    auto year = r.integer(ojson(cols[0]), p);
    auto count = r.integer(ojson(cols[2]), p);
    if (year && count) out.push_back({*year, cols[1], *count, p});
  }
  return out;
}

inline FeeModel read_fee(Reader& r, const ojson& v, const std::string& path) {
  FeeModel fee;
  if (!r.object(v, path)) return fee;
  r.known_keys(v, path, {"first_semester_items", "donation_grades", "earmarked", "overhead_fraction", "escalation"});
  if (auto* f = r.field(v, path, "first_semester_items", true)) {
    for (auto& item : read_items(r, *f, path + ".first_semester_items")) fee.first_semester_items.push_back({item.name, item.amount});
  }
  if (auto* f = r.field(v, path, "donation_grades", true); f && r.array(*f, path + ".donation_grades")) {
    for (std::size_t i = 0; i < f->size(); ++i) {
      if (auto d = r.decimal((*f)[i], idx(path + ".donation_grades", i))) fee.donation_grades.emplace_back(*d);
    }
  }
  if (auto* f = r.field(v, path, "earmarked", false); f && r.array(*f, path + ".earmarked")) {
    for (std::size_t i = 0; i < f->size(); ++i) {
      if (auto s = r.text((*f)[i], idx(path + ".earmarked", i))) fee.earmarked.push_back(*s);
    }
  }
  fee.overhead_fraction = r.rate_field(v, path, "overhead_fraction").value_or(Rate{});
  fee.escalation = r.rate_field(v, path, "escalation").value_or(Rate{});
  return fee;
}

inline EnrollmentSection read_enrollment(Reader& r, const ojson& v, const std::string& path, const ParseOptions& opts) {
  EnrollmentSection out;
  if (!r.object(v, path)) return out;
  r.known_keys(v, path, {"benefit_id", "programs", "history", "history_csv", "baseline_intake", "growth", "fee", "schedule"});
  if (auto id = r.int_field(v, path, "benefit_id", false)) out.benefit_id = static_cast<int>(*id);

  std::vector<std::string> programs;
  bool fixed = false;
  if (auto* f = r.field(v, path, "programs", false); f && r.array(*f, path + ".programs")) {
    fixed = true;
    for (std::size_t i = 0; i < f->size(); ++i) {
      if (auto s = r.text((*f)[i], idx(path + ".programs", i))) programs.push_back(*s);
    }
  }

  std::vector<HistoryRecord> records;
  const ojson* inline_history = r.field(v, path, "history", false);
  const ojson* csv_ref = r.field(v, path, "history_csv", false);
  if (inline_history && csv_ref) {
    r.diagnostics().error(path + ".history_csv", "give either history or history_csv, not both");
  } else if (inline_history) {
    std::string hp = path + ".history";
    if (r.object(*inline_history, hp)) {
      for (auto it = inline_history->begin(); it != inline_history->end(); ++it) {
        std::string yp = hp + "." + it.key();
        auto year = r.integer(ojson(it.key()), yp);
        if (!year || !r.object(it.value(), yp)) continue;
        for (auto pc = it.value().begin(); pc != it.value().end(); ++pc) {
          std::string pp = yp + "." + pc.key();
          if (auto count = r.integer(pc.value(), pp)) records.push_back({*year, pc.key(), *count, pp});
        }
      }
    }
  } else if (csv_ref) {
    std::string cp = path + ".history_csv";
    if (auto file = r.text(*csv_ref, cp)) {
      std::optional<std::string> csv;
      if (opts.read_sidecar) csv = opts.read_sidecar(*file);
      if (!csv) {
        r.diagnostics().error(cp, "cannot read enrollment history file '" + *file + "'");
      } else {
        records = read_history_csv(r, *csv, cp);
      }
    }
  }
  out.history = assemble_history(r, programs, fixed, records, path + ".history");

  if (auto* f = r.field(v, path, "baseline_intake", false)) {
    std::string bp = path + ".baseline_intake";
    if (r.object(*f, bp)) {
      std::vector<std::int64_t> intake(out.history.programs.size(), 0);
      std::vector<bool> seen(intake.size(), false);
      for (auto it = f->begin(); it != f->end(); ++it) {
        std::size_t p = program_index(out.history.programs, it.key(), true);
        if (p == out.history.programs.size()) {
          if (out.history.years.empty() && !fixed) {
            out.history.programs.push_back(it.key());
            intake.push_back(0);
            seen.push_back(false);
          } else {
            r.diagnostics().error(bp + "." + it.key(), "unknown program");
            continue;
          }
        }
        if (auto c = r.integer(it.value(), bp + "." + it.key())) {
          intake[p] = *c;
          seen[p] = true;
        }
      }
      for (std::size_t p = 0; p < seen.size(); ++p) {
        if (!seen[p]) r.diagnostics().error(bp, "no intake for program '" + out.history.programs[p] + "'");
      }
      out.baseline_intake = std::move(intake);
    }
  }

  out.growth = r.rate_field(v, path, "growth").value_or(Rate{});
  if (auto* f = r.field(v, path, "fee", true)) out.fee = read_fee(r, *f, path + ".fee");
  if (auto* f = r.field(v, path, "schedule", true); f && r.array(*f, path + ".schedule")) {
    for (std::size_t i = 0; i < f->size(); ++i) {
      const auto& e = (*f)[i];
      std::string p = idx(path + ".schedule", i);
      if (!r.object(e, p)) continue;
      r.known_keys(e, p, {"age", "semesters", "multiplier"});
      ScheduleEntry entry;
      entry.age = static_cast<int>(r.int_field(e, p, "age").value_or(0));
      entry.semesters = r.int_field(e, p, "semesters").value_or(0);
      entry.multiplier = r.rate_field(e, p, "multiplier").value_or(Rate{});
      out.schedule.entries.push_back(entry);
    }
  }
  return out;
}

inline ScenarioOptions read_options(Reader& r, const ojson& v, const std::string& path) {
  ScenarioOptions out;
  if (!r.object(v, path)) return out;
  r.known_keys(v, path, {"rounding", "table15_compat", "tax_rate", "discount_rate"});
  if (auto* f = r.field(v, path, "rounding", false)) {
    if (auto s = r.text(*f, path + ".rounding")) {
      if (auto m = parse_rounding_mode(*s)) {
        out.rounding = *m;
      } else {
        r.diagnostics().error(path + ".rounding", "unrecognized rounding mode '" + *s + "'");
      }
    }
  }
  if (auto* f = r.field(v, path, "table15_compat", false)) {
    if (f->is_boolean()) {
      out.table15_compat = f->get<bool>();
    } else {
      r.diagnostics().error(path + ".table15_compat", "expected true or false");
    }
  }
  out.tax_rate = r.rate_field(v, path, "tax_rate", false).value_or(Rate{});
  out.discount_rate = r.rate_field(v, path, "discount_rate", false);
  return out;
}

inline ParseResult read_scenario(const ojson& doc, const ParseOptions& opts) {
  ParseResult result;
  Reader r(result.diagnostics);
  Scenario s;
  if (!doc.is_object()) {
    result.diagnostics.error("", "scenario must be a JSON object");
    return result;
  }
  r.known_keys(doc, "", {"schema_version", "meta", "horizon", "benefits", "investment", "running_costs",
                         "operational_costs", "productivity", "enrollment", "options"});
  if (auto v = r.int_field(doc, "", "schema_version")) {
    if (*v != kSchemaVersion) {
      result.diagnostics.error("schema_version", "unsupported schema version " + std::to_string(*v) + " (expected " +
                                                     std::to_string(kSchemaVersion) + ")");
    }
    s.schema_version = static_cast<int>(*v);
  }
  if (auto* f = r.field(doc, "", "meta", true); f && r.object(*f, "meta")) {
    r.known_keys(*f, "meta", {"name", "currency", "description"});
    s.meta.name = r.text_field(*f, "meta", "name");
    s.meta.currency = r.text_field(*f, "meta", "currency", false, "IDR");
    s.meta.description = r.text_field(*f, "meta", "description", false);
  }
  if (auto v = r.int_field(doc, "", "horizon")) s.horizon = static_cast<int>(*v);
  if (auto* f = r.field(doc, "", "benefits", true)) s.benefits = read_benefits(r, *f, "benefits");
  if (auto* f = r.field(doc, "", "investment", true)) s.investment = read_investment(r, *f, "investment");
  if (auto* f = r.field(doc, "", "running_costs", true)) {
    s.running_costs = read_cost_lines(r, *f, "running_costs", CostCategory::RunningCost);
  }
  if (auto* f = r.field(doc, "", "operational_costs", true)) {
    s.operational_costs = read_cost_lines(r, *f, "operational_costs", CostCategory::OperationalCost);
  }
  if (auto* f = r.field(doc, "", "productivity", true)) s.productivity = read_productivity(r, *f, "productivity");
  if (auto* f = r.field(doc, "", "enrollment", true)) s.enrollment = read_enrollment(r, *f, "enrollment", opts);
  if (auto* f = r.field(doc, "", "options", false)) s.options = read_options(r, *f, "options");
  if (!result.diagnostics.has_errors()) result.scenario = std::move(s);
  return result;
}

}  // namespace detail

/// Parses scenario JSON text. Syntax errors carry line and column.
inline ParseResult parse_scenario(std::string_view text, const ParseOptions& opts = {}) {
  detail::ojson doc;
  detail::ExactSaxBuilder builder(doc);
  bool ok = false;
  try {
    ok = detail::ojson::sax_parse(text.begin(), text.end(), &builder);
  } catch (const std::exception& e) {
    ParseResult r;
    r.diagnostics.error("", std::string("malformed JSON: ") + e.what());
    return r;
  }
  if (!ok) {
    ParseResult r;
    auto [line, col] = detail::line_column(text, builder.error_position().value_or(0));
    std::string msg = builder.error_message();
    // Keep the parser's own explanation, drop its exception id prefix.
    if (auto colon = msg.find(": "); colon != std::string::npos) msg = msg.substr(colon + 2);
    r.diagnostics.error("", "malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
    return r;
  }
  return detail::read_scenario(doc, opts);
}

namespace detail {

inline void check_benefit_link(const Scenario& s, const std::optional<int>& id, const std::string& path, Diagnostics& d) {
  if (!id) return;
  auto it = std::find_if(s.benefits.items.begin(), s.benefits.items.end(), [&](const BenefitItem& b) { return b.id == *id; });
  if (it == s.benefits.items.end()) {
    d.error(path, "references undefined benefit " + std::to_string(*id));
  } else if (it->method != MeasurementMethod::SimpleRoi) {
    d.error(path, "benefit " + std::to_string(*id) + " is not measured by Simple ROI");
  } else if (std::find(s.benefits.exclusions.begin(), s.benefits.exclusions.end(), *id) != s.benefits.exclusions.end()) {
    d.error(path, "benefit " + std::to_string(*id) + " is excluded from the appraisal");
  }
}

inline bool in_unit_interval(const Rate& r) { return r >= Rate{} && r <= Rate::one(); }

}  // namespace detail

/// Checks every section invariant. Diagnostics follow document order.
inline Diagnostics validate(const Scenario& s) {
  Diagnostics d;
  const Rate zero;
  const Rate minus_one = Rate::integer(-1);
  if (s.schema_version != kSchemaVersion) d.error("schema_version", "unsupported schema version");
  if (s.horizon < 1) d.error("horizon", "horizon must be at least 1 year");
  if (s.horizon > kMaxHorizon) d.error("horizon", "horizon exceeds " + std::to_string(kMaxHorizon) + " years");

  std::set<int> ids;
  for (std::size_t i = 0; i < s.benefits.items.size(); ++i) {
    const auto& b = s.benefits.items[i];
    std::string p = detail::idx("benefits.items", i);
    if (!ids.insert(b.id).second) d.error(p + ".id", "duplicate benefit id " + std::to_string(b.id));
    if (!is_consistent(b)) {
      d.error(p, "measurement method, measurability and value class disagree (Simple ROI requires measurable financial)");
    }
  }
  for (std::size_t i = 0; i < s.benefits.exclusions.size(); ++i) {
    if (!ids.contains(s.benefits.exclusions[i])) {
      d.warning(detail::idx("benefits.exclusions", i), "excluded benefit id " + std::to_string(s.benefits.exclusions[i]) +
                                                           " is not defined");
    }
  }

  for (std::size_t i = 0; i < s.investment.staff.size(); ++i) {
    const auto& l = s.investment.staff[i];
    std::string p = detail::idx("investment.staff", i);
    if (l.headcount < 1) d.error(p + ".headcount", "headcount must be at least 1");
    if (l.hourly_wage.is_negative()) d.error(p + ".hourly_wage", "wage must not be negative");
    if (!(l.hours_per_day > zero)) d.error(p + ".hours_per_day", "hours per day must be positive");
    if (l.working_days < 1) d.error(p + ".working_days", "working days must be positive");
  }
  for (auto [name, items] : {std::pair{"investment.hardware", &s.investment.hardware},
                             {"investment.network", &s.investment.network},
                             {"investment.support", &s.investment.support}}) {
    for (std::size_t i = 0; i < items->size(); ++i) {
      if ((*items)[i].amount.is_negative()) d.error(detail::idx(name, i) + ".amount", "amount must not be negative");
    }
  }

  auto check_line = [&](const CostLine& c, const std::string& p) {
    if (c.rule.base.is_negative()) d.error(p + ".base", "base amount must not be negative");
    if (c.rule.start_year < 1) d.error(p + ".start_year", "start year must be at least 1");
    if (c.rule.start_year > s.horizon) d.warning(p + ".start_year", "start year is beyond the horizon; line contributes nothing");
    if (c.rule.annual_ratio < zero) d.error(p + ".annual_ratio", "annual ratio must not be negative");
  };
  for (std::size_t i = 0; i < s.running_costs.size(); ++i) {
    std::string p = detail::idx("running_costs", i);
    check_line(s.running_costs[i], p);
    if (s.running_costs[i].saving_fraction) d.error(p + ".saving_fraction", "running costs carry no saving fraction");
    if (s.running_costs[i].benefit_id) d.error(p + ".benefit_id", "running costs are not linked to a benefit");
  }
  for (std::size_t i = 0; i < s.operational_costs.size(); ++i) {
    const auto& c = s.operational_costs[i];
    std::string p = detail::idx("operational_costs", i);
    check_line(c, p);
    if (c.saving_fraction && !detail::in_unit_interval(*c.saving_fraction)) {
      d.error(p + ".saving_fraction", "saving fraction " + c.saving_fraction->to_string() + " outside [0, 1]");
    }
    detail::check_benefit_link(s, c.benefit_id, p + ".benefit_id", d);
  }

  if (s.productivity.loss_before.is_negative()) d.error("productivity.loss_before", "must not be negative");
  if (s.productivity.loss_after.is_negative()) d.error("productivity.loss_after", "must not be negative");
  if (s.productivity.loss_after > s.productivity.loss_before) {
    d.warning("productivity.loss_after", "loss after the project exceeds the loss before it");
  }
  if (s.productivity.growth <= minus_one) d.error("productivity.growth", "growth must exceed -1");
  detail::check_benefit_link(s, s.productivity.benefit_id, "productivity.benefit_id", d);

  const auto& e = s.enrollment;
  detail::check_benefit_link(s, e.benefit_id, "enrollment.benefit_id", d);
  for (const auto& y : e.history.years) {
    for (std::size_t p = 0; p < y.counts.size(); ++p) {
      if (y.counts[p] < 0) {
        d.error("enrollment.history." + std::to_string(y.year) + "." + e.history.programs[p], "count must not be negative");
      }
    }
  }
  auto baseline = e.effective_baseline();
  if (baseline.empty()) {
    d.error("enrollment.baseline_intake", "no baseline intake: give baseline_intake or a non-empty history");
  }
  for (std::size_t p = 0; p < baseline.size(); ++p) {
    if (baseline[p] < 0) d.error("enrollment.baseline_intake", "baseline intake must not be negative");
  }
  if (e.growth <= minus_one) d.error("enrollment.growth", "growth must exceed -1");
  else if (e.growth < zero) d.warning("enrollment.growth", "negative growth yields no incremental intake");

  std::set<std::string> names;
  for (std::size_t i = 0; i < e.fee.first_semester_items.size(); ++i) {
    const auto& item = e.fee.first_semester_items[i];
    names.insert(item.name);
    if (item.amount.is_negative()) {
      d.error(detail::idx("enrollment.fee.first_semester_items", i) + ".amount", "amount must not be negative");
    }
  }
  for (std::size_t i = 0; i < e.fee.donation_grades.size(); ++i) {
    if (e.fee.donation_grades[i].is_negative()) {
      d.error(detail::idx("enrollment.fee.donation_grades", i), "donation must not be negative");
    }
  }
  if (e.fee.donation_grades.empty()) d.warning("enrollment.fee.donation_grades", "no donation grades; average taken as 0");
  for (std::size_t i = 0; i < e.fee.earmarked.size(); ++i) {
    if (!names.contains(e.fee.earmarked[i])) {
      d.error(detail::idx("enrollment.fee.earmarked", i), "'" + e.fee.earmarked[i] + "' is not a first-semester item");
    }
  }
  if (e.fee.overhead_fraction < zero || e.fee.overhead_fraction >= Rate::one()) {
    d.error("enrollment.fee.overhead_fraction", "overhead fraction must lie in [0, 1)");
  }
  if (e.fee.escalation <= minus_one) d.error("enrollment.fee.escalation", "escalation must exceed -1");

  std::set<int> ages;
  for (std::size_t i = 0; i < e.schedule.entries.size(); ++i) {
    const auto& entry = e.schedule.entries[i];
    std::string p = detail::idx("enrollment.schedule", i);
    if (entry.age < 0) d.error(p + ".age", "age must not be negative");
    if (!ages.insert(entry.age).second) d.error(p + ".age", "duplicate cohort age " + std::to_string(entry.age));
    if (entry.semesters < 0) d.error(p + ".semesters", "semesters must not be negative");
    if (entry.multiplier < zero) d.error(p + ".multiplier", "multiplier must not be negative");
  }
  if (!ages.contains(0)) d.error("enrollment.schedule", "schedule has no entry for cohort age 0");

  if (!detail::in_unit_interval(s.options.tax_rate)) d.error("options.tax_rate", "tax rate must lie in [0, 1]");
  if (s.options.discount_rate && *s.options.discount_rate <= minus_one) {
    d.error("options.discount_rate", "discount rate must exceed -1");
  }
  return d;
}

/// Parse then validate; the scenario is dropped when either reports an Error.
inline ParseResult load_scenario(std::string_view text, const ParseOptions& opts = {}) {
  ParseResult r = parse_scenario(text, opts);
  if (!r.scenario) return r;
  Diagnostics v = validate(*r.scenario);
  r.diagnostics.append(v);
  if (v.has_errors()) r.scenario.reset();
  return r;
}

namespace detail {

inline nlohmann::json items_json(const std::vector<LedgerItem>& items) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& i : items) a.push_back({{"name", i.name}, {"amount", i.amount.to_string()}});
  return a;
}

inline nlohmann::json cost_lines_json(const std::vector<CostLine>& lines) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : lines) {
    nlohmann::json o = {{"name", c.name},
                        {"base", c.rule.base.to_string()},
                        {"start_year", c.rule.start_year},
                        {"annual_ratio", c.rule.annual_ratio.to_string()}};
    if (c.saving_fraction) o["saving_fraction"] = c.saving_fraction->to_string();
    if (c.benefit_id) o["benefit_id"] = *c.benefit_id;
    a.push_back(std::move(o));
  }
  return a;
}

}  // namespace detail

/// Canonical JSON object for a scenario (sorted keys, decimal strings).
inline nlohmann::json scenario_to_json(const Scenario& s) {
  using nlohmann::json;
  json benefits_items = json::array();
  for (const auto& b : s.benefits.items) {
    benefits_items.push_back({{"id", b.id},
                              {"name", b.name},
                              {"tangibility", to_string(b.tangibility)},
                              {"measurability", to_string(b.measurability)},
                              {"domain", to_string(b.domain)},
                              {"value", to_string(b.value)},
                              {"method", to_string(b.method)}});
  }
  json staff = json::array();
  for (const auto& l : s.investment.staff) {
    staff.push_back({{"role", l.role},
                     {"headcount", l.headcount},
                     {"hourly_wage", l.hourly_wage.to_string()},
                     {"hours_per_day", l.hours_per_day.to_string()},
                     {"working_days", l.working_days}});
  }
  json roles = json::array();
  for (const auto& r : s.productivity.roles) {
    roles.push_back({{"role", r.role}, {"utilization_before", r.before.to_string()}, {"utilization_after", r.after.to_string()}});
  }
  json productivity = {{"loss_before", s.productivity.loss_before.to_string()},
                       {"loss_after", s.productivity.loss_after.to_string()},
                       {"growth", s.productivity.growth.to_string()},
                       {"roles", roles}};
  if (s.productivity.benefit_id) productivity["benefit_id"] = *s.productivity.benefit_id;

  const auto& e = s.enrollment;
  json history = json::object();
  for (const auto& y : e.history.years) {
    json counts = json::object();
    for (std::size_t p = 0; p < e.history.programs.size(); ++p) counts[e.history.programs[p]] = y.counts[p];
    history[std::to_string(y.year)] = counts;
  }
  json fee_items = json::array();
  for (const auto& i : e.fee.first_semester_items) fee_items.push_back({{"name", i.name}, {"amount", i.amount.to_string()}});
  json donations = json::array();
  for (const auto& d : e.fee.donation_grades) donations.push_back(d.to_string());
  json schedule = json::array();
  for (const auto& entry : e.schedule.entries) {
    schedule.push_back({{"age", entry.age}, {"semesters", entry.semesters}, {"multiplier", entry.multiplier.to_string()}});
  }
  json enrollment = {{"programs", e.history.programs},
                     {"history", history},
                     {"growth", e.growth.to_string()},
                     {"fee",
                      {{"first_semester_items", fee_items},
                       {"donation_grades", donations},
                       {"earmarked", e.fee.earmarked},
                       {"overhead_fraction", e.fee.overhead_fraction.to_string()},
                       {"escalation", e.fee.escalation.to_string()}}},
                     {"schedule", schedule}};
  if (e.benefit_id) enrollment["benefit_id"] = *e.benefit_id;
  if (e.baseline_intake) {
    json intake = json::object();
    for (std::size_t p = 0; p < e.history.programs.size() && p < e.baseline_intake->size(); ++p) {
      intake[e.history.programs[p]] = (*e.baseline_intake)[p];
    }
    enrollment["baseline_intake"] = intake;
  }

  json options = {{"rounding", to_string(s.options.rounding)},
                  {"table15_compat", s.options.table15_compat},
                  {"tax_rate", s.options.tax_rate.to_string()}};
  if (s.options.discount_rate) options["discount_rate"] = s.options.discount_rate->to_string();

  return json{{"schema_version", s.schema_version},
              {"meta", {{"name", s.meta.name}, {"currency", s.meta.currency}, {"description", s.meta.description}}},
              {"horizon", s.horizon},
              {"benefits", {{"items", benefits_items}, {"exclusions", s.benefits.exclusions}}},
              {"investment",
               {{"staff", staff},
                {"hardware", detail::items_json(s.investment.hardware)},
                {"network", detail::items_json(s.investment.network)},
                {"support", detail::items_json(s.investment.support)}}},
              {"running_costs", detail::cost_lines_json(s.running_costs)},
              {"operational_costs", detail::cost_lines_json(s.operational_costs)},
              {"productivity", productivity},
              {"enrollment", enrollment},
              {"options", options}};
}

/// Canonical text: two-space indent, sorted keys, trailing newline.
inline std::string emit_scenario(const Scenario& s) { return scenario_to_json(s).dump(2) + "\n"; }

}  // namespace roi_forge
