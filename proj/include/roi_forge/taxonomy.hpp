#pragma once

// Benefit classification on the tangible/intangible x measurable/immeasurable
// matrix, and selection of the benefits that enter the financial appraisal.

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "roi_forge/diagnostics.hpp"

namespace roi_forge {

enum class Tangibility { Tangible, Intangible };
enum class Measurability { Measurable, Immeasurable };
enum class DomainClass { Technology, Business };
enum class ValueClass { Financial, NonFinancial };
enum class MeasurementMethod { SimpleRoi, None };

inline std::string_view to_string(Tangibility v) { return v == Tangibility::Tangible ? "tangible" : "intangible"; }
inline std::string_view to_string(Measurability v) {
  return v == Measurability::Measurable ? "measurable" : "immeasurable";
}
inline std::string_view to_string(DomainClass v) { return v == DomainClass::Technology ? "technology" : "business"; }
inline std::string_view to_string(ValueClass v) { return v == ValueClass::Financial ? "financial" : "non_financial"; }
inline std::string_view to_string(MeasurementMethod v) { return v == MeasurementMethod::SimpleRoi ? "simple_roi" : "none"; }

template <typename E>
std::optional<E> parse_enum(std::string_view s);

template <>
inline std::optional<Tangibility> parse_enum<Tangibility>(std::string_view s) {
  if (s == "tangible") return Tangibility::Tangible;
  if (s == "intangible") return Tangibility::Intangible;
  return std::nullopt;
}
template <>
inline std::optional<Measurability> parse_enum<Measurability>(std::string_view s) {
  if (s == "measurable") return Measurability::Measurable;
  if (s == "immeasurable") return Measurability::Immeasurable;
  return std::nullopt;
}
template <>
inline std::optional<DomainClass> parse_enum<DomainClass>(std::string_view s) {
  if (s == "technology") return DomainClass::Technology;
  if (s == "business") return DomainClass::Business;
  return std::nullopt;
}
template <>
inline std::optional<ValueClass> parse_enum<ValueClass>(std::string_view s) {
  if (s == "financial") return ValueClass::Financial;
  if (s == "non_financial") return ValueClass::NonFinancial;
  return std::nullopt;
}
template <>
inline std::optional<MeasurementMethod> parse_enum<MeasurementMethod>(std::string_view s) {
  if (s == "simple_roi") return MeasurementMethod::SimpleRoi;
  if (s == "none") return MeasurementMethod::None;
  return std::nullopt;
}

struct BenefitItem {
  int id = 0;
  std::string name;
  Tangibility tangibility = Tangibility::Tangible;
  Measurability measurability = Measurability::Measurable;
  DomainClass domain = DomainClass::Technology;
  ValueClass value = ValueClass::Financial;
  MeasurementMethod method = MeasurementMethod::SimpleRoi;

  friend bool operator==(const BenefitItem&, const BenefitItem&) = default;
};

/// An item is consistent when SimpleRoi, Measurable and Financial all agree.
inline bool is_consistent(const BenefitItem& item) {
  bool roi = item.method == MeasurementMethod::SimpleRoi;
  bool measurable = item.measurability == Measurability::Measurable;
  bool financial = item.value == ValueClass::Financial;
  return roi == measurable && measurable == financial;
}

/// Benefit ids grouped per matrix cell, in input order within a cell.
struct BenefitMatrix {
  // Indexed [tangibility][measurability], Tangible/Measurable first.
  std::array<std::array<std::vector<int>, 2>, 2> cells;

  const std::vector<int>& cell(Tangibility t, Measurability m) const {
    return cells[static_cast<std::size_t>(t)][static_cast<std::size_t>(m)];
  }
  std::vector<int>& cell(Tangibility t, Measurability m) {
    return cells[static_cast<std::size_t>(t)][static_cast<std::size_t>(m)];
  }
};

inline void check_unique_ids(const std::vector<BenefitItem>& items) {
  std::set<int> seen;
  for (const auto& item : items) {
    if (!seen.insert(item.id).second) {
      throw ValidationError("duplicate benefit id " + std::to_string(item.id), "benefits");
    }
  }
}

inline BenefitMatrix classify_matrix(const std::vector<BenefitItem>& items) {
  check_unique_ids(items);
  BenefitMatrix m;
  for (const auto& item : items) m.cell(item.tangibility, item.measurability).push_back(item.id);
  return m;
}

/// Items measured by Simple ROI, minus explicit exclusions, in input order.
/// Exclusions that name no item produce a warning.
inline std::vector<BenefitItem> financial_benefits(const std::vector<BenefitItem>& items, const std::set<int>& exclusions,
                                                   DiagnosticScope diag = {}) {
  for (int id : exclusions) {
    bool present = std::any_of(items.begin(), items.end(), [id](const BenefitItem& b) { return b.id == id; });
    if (!present) diag.warning("exclusions", "excluded benefit id " + std::to_string(id) + " is not defined");
  }
  std::vector<BenefitItem> out;
  for (const auto& item : items) {
    if (item.method == MeasurementMethod::SimpleRoi && !exclusions.contains(item.id)) out.push_back(item);
  }
  return out;
}

}  // namespace roi_forge
