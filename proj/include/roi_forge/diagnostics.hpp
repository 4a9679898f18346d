#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace roi_forge {

enum class Severity { Error, Warning };

inline std::string_view to_string(Severity s) { return s == Severity::Error ? "error" : "warning"; }

/// A finding located by a dotted path into the scenario document,
/// e.g. "operational_costs[2].saving_fraction".
struct Diagnostic {
  Severity severity = Severity::Error;
  std::string path;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Raised by operations whose preconditions are violated.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::string message, std::string path = {})
      : std::invalid_argument(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class Diagnostics {
 public:
  void error(std::string path, std::string message) {
    items_.push_back({Severity::Error, std::move(path), std::move(message)});
  }
  void warning(std::string path, std::string message) {
    items_.push_back({Severity::Warning, std::move(path), std::move(message)});
  }
  void append(const Diagnostics& other) { items_.insert(items_.end(), other.items_.begin(), other.items_.end()); }

  bool has_errors() const {
    return std::any_of(items_.begin(), items_.end(), [](const Diagnostic& d) { return d.severity == Severity::Error; });
  }
  bool empty() const { return items_.empty(); }
  const std::vector<Diagnostic>& items() const { return items_; }

 private:
  std::vector<Diagnostic> items_;
};

inline std::string join_path(std::string_view base, std::string_view rel) {
  if (base.empty()) return std::string(rel);
  if (rel.empty()) return std::string(base);
  if (rel.front() == '[') return std::string(base) + std::string(rel);
  return std::string(base) + "." + std::string(rel);
}

/// Sink bound to a location; operations report relative to it. A default
/// scope discards everything.
class DiagnosticScope {
 public:
  DiagnosticScope() = default;
  DiagnosticScope(Diagnostics& sink, std::string base = {}) : sink_(&sink), base_(std::move(base)) {}

  void warning(std::string_view rel, std::string message) const {
    if (sink_) sink_->warning(join_path(base_, rel), std::move(message));
  }
  void error(std::string_view rel, std::string message) const {
    if (sink_) sink_->error(join_path(base_, rel), std::move(message));
  }
  DiagnosticScope child(std::string_view rel) const {
    DiagnosticScope s;
    s.sink_ = sink_;
    s.base_ = join_path(base_, rel);
    return s;
  }
  const std::string& base() const { return base_; }

 private:
  Diagnostics* sink_ = nullptr;
  std::string base_;
};

}  // namespace roi_forge
