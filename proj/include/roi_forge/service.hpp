#pragma once

// Command-line front end and the stateless HTTP facade. Both go through
// appraise_text, so a scenario yields the same report bytes either way.
//
// Exit codes: 0 success, 1 I/O failure, 2 validation error.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include "roi_forge/baseline.hpp"
#include "roi_forge/evaluate.hpp"
#include "roi_forge/report.hpp"
#include "roi_forge/scenario.hpp"

namespace roi_forge {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitInvalid = 2;

inline constexpr const char* kBaselineEnv = "ROI_FORGE_BASELINE";

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::optional<std::string> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw IoError("cannot write " + path.string());
}

/// Baseline scenario text: the file named by ROI_FORGE_BASELINE if set,
/// else the built-in baseline.
inline std::string baseline_text() {
  if (const char* path = std::getenv(kBaselineEnv); path && *path) {
    auto text = read_file(path);
    if (!text) throw IoError(std::string("cannot read baseline file ") + path);
    return *text;
  }
  return emit_scenario(baseline_scenario());
}

/// Sidecar files resolve relative to the scenario's directory.
inline SidecarReader sidecar_reader(std::filesystem::path base_dir) {
  return [base_dir = std::move(base_dir)](const std::string& path) {
    std::filesystem::path p(path);
    return read_file(p.is_absolute() ? p : base_dir / p);
  };
}

/// Single evaluation path shared by CLI and HTTP.
inline EvaluationOutcome appraise_text(std::string_view text, const ParseOptions& opts = {}) {
  ParseResult parsed = parse_scenario(text, opts);
  if (!parsed.scenario) return {parsed.diagnostics, std::nullopt};
  EvaluationOutcome o = evaluate(*parsed.scenario);
  Diagnostics all = parsed.diagnostics;
  all.append(o.diagnostics);
  o.diagnostics = all;
  return o;
}

// ---------------------------------------------------------------------------
// HTTP

struct HttpReply {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

inline HttpReply diagnostics_reply(int status, const Diagnostics& d) {
  nlohmann::json j = {{"ok", false}, {"diagnostics", diagnostics_json(d)}};
  return {status, "application/json", j.dump(2) + "\n"};
}

inline HttpReply handle_healthz() { return {200, "text/plain", "ok"}; }

inline HttpReply handle_baseline() {
  try {
    return {200, "application/json", baseline_text()};
  } catch (const IoError& e) {
    Diagnostics d;
    d.error("", e.what());
    return diagnostics_reply(500, d);
  }
}

inline HttpReply handle_appraise(std::string_view body) {
  EvaluationOutcome o = appraise_text(body);
  return {o.ok() ? 200 : 422, "application/json", report_text(o)};
}

/// Body: {"scenario": {...}, "param": "enrollment.growth", "values": [0, "0.1", 0.2]}.
/// A missing scenario means the baseline.
inline HttpReply handle_sweep(std::string_view body) {
  Diagnostics d;
  detail::ojson doc;
  detail::ExactSaxBuilder builder(doc);
  bool parsed = false;
  try {
    parsed = detail::ojson::sax_parse(body.begin(), body.end(), &builder);
  } catch (const std::exception&) {
  }
  if (!parsed || !doc.is_object()) {
    d.error("", "request body must be a JSON object");
    return diagnostics_reply(422, d);
  }
  detail::Reader r(d);
  std::string param = r.text_field(doc, "", "param");
  std::vector<Decimal> values;
  if (auto* v = r.field(doc, "", "values", true); v && r.array(*v, "values")) {
    for (std::size_t i = 0; i < v->size(); ++i) {
      if (auto x = r.decimal((*v)[i], detail::idx("values", i))) values.push_back(*x);
    }
  }
  std::string scenario_text;
  if (auto it = doc.find("scenario"); it != doc.end() && !it->is_null()) {
    scenario_text = it->dump();
  } else {
    try {
      scenario_text = baseline_text();
    } catch (const IoError& e) {
      d.error("scenario", e.what());
      return diagnostics_reply(500, d);
    }
  }
  if (d.has_errors()) return diagnostics_reply(422, d);
  ParseResult scenario = parse_scenario(scenario_text);
  if (!scenario.scenario) return diagnostics_reply(422, scenario.diagnostics);
  try {
    auto points = sweep(*scenario.scenario, param, values);
    return {200, "application/json", sweep_json(param, points).dump(2) + "\n"};
  } catch (const ValidationError& e) {
    d.error(e.path(), e.what());
    return diagnostics_reply(422, d);
  }
}

inline void install_routes(httplib::Server& server) {
  auto send = [](httplib::Response& res, const HttpReply& reply) {
    res.status = reply.status;
    res.set_content(reply.body, reply.content_type);
  };
  server.Get("/healthz", [send](const httplib::Request&, httplib::Response& res) { send(res, handle_healthz()); });
  server.Get("/api/v1/baseline", [send](const httplib::Request&, httplib::Response& res) { send(res, handle_baseline()); });
  server.Post("/api/v1/appraise",
              [send](const httplib::Request& req, httplib::Response& res) { send(res, handle_appraise(req.body)); });
  server.Post("/api/v1/sweep", [send](const httplib::Request& req, httplib::Response& res) { send(res, handle_sweep(req.body)); });
}

// ---------------------------------------------------------------------------
// CLI

namespace detail {

inline void print_diagnostics(const Diagnostics& d, std::ostream& err) {
  for (const auto& item : d.items()) {
    err << to_string(item.severity) << ": " << (item.path.empty() ? "<document>" : item.path) << ": " << item.message << "\n";
  }
}

struct ScenarioSource {
  std::string path;
  bool baseline = false;
};

struct SourceText {
  std::string text;
  ParseOptions options;
};

// Reads the selected scenario text. Returns an exit code on failure.
inline std::variant<SourceText, int> read_source(const ScenarioSource& src, std::ostream& err) {
  SourceText st;
  if (src.baseline) {
    try {
      st.text = baseline_text();
    } catch (const IoError& e) {
      err << "error: " << e.what() << "\n";
      return kExitIo;
    }
  } else if (!src.path.empty()) {
    auto content = read_file(src.path);
    if (!content) {
      err << "error: cannot read scenario file " << src.path << "\n";
      return kExitIo;
    }
    st.text = std::move(*content);
    st.options.read_sidecar = sidecar_reader(std::filesystem::path(src.path).parent_path());
  } else {
    err << "error: give --scenario PATH or --baseline\n";
    return kExitInvalid;
  }
  return st;
}

// Reads and parses the selected scenario; parse diagnostics go to `sink`.
inline std::variant<Scenario, int> load_source(const ScenarioSource& src, std::ostream& err, Diagnostics& sink) {
  auto read = read_source(src, err);
  if (auto* code = std::get_if<int>(&read)) return *code;
  const auto& st = std::get<SourceText>(read);
  ParseResult r = parse_scenario(st.text, st.options);
  sink.append(r.diagnostics);
  if (!r.scenario) return kExitInvalid;
  return std::move(*r.scenario);
}

inline int write_documents(const std::map<std::string, std::string>& docs, ExportFormat format, const std::string& out_dir,
                           std::ostream& out, std::ostream& err) {
  if (out_dir.empty()) {
    bool first = true;
    for (const auto& [name, content] : docs) {
      if (!first) out << "\n";
      first = false;
      if (format != ExportFormat::Markdown) out << "# " << name << "\n";
      out << content;
    }
    return kExitOk;
  }
  try {
    std::filesystem::create_directories(out_dir);
    for (const auto& [name, content] : docs) {
      write_file(std::filesystem::path(out_dir) / (name + "." + std::string(file_extension(format))), content);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

inline std::optional<std::vector<Decimal>> parse_value_list(const std::string& list, std::ostream& err) {
  std::vector<Decimal> values;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    try {
      values.push_back(Decimal::parse(item));
    } catch (const DecimalParseError& e) {
      err << "error: --values: " << e.what() << "\n";
      return std::nullopt;
    }
  }
  if (values.empty()) {
    err << "error: --values is empty\n";
    return std::nullopt;
  }
  return values;
}

}  // namespace detail

/// Runs one CLI invocation. `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simple ROI appraisal engine"};
  app.name("roi_forge");
  app.require_subcommand(1);

  detail::ScenarioSource source;
  auto add_source = [&](CLI::App* cmd) {
    auto* scenario = cmd->add_option("--scenario", source.path, "Scenario JSON file");
    auto* baseline = cmd->add_flag("--baseline", source.baseline, "Use the bundled baseline scenario");
    scenario->excludes(baseline);
  };

  std::string format = "json";
  std::string out_dir;
  bool exact = false;

  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario and print diagnostics");
  add_source(validate_cmd);

  auto* appraise_cmd = app.add_subcommand("appraise", "Evaluate a scenario and write the report");
  add_source(appraise_cmd);
  appraise_cmd->add_option("--format", format, "json, csv or md")->check(CLI::IsMember({"json", "csv", "md"}));
  appraise_cmd->add_option("--out", out_dir, "Output directory");

  auto* tables_cmd = app.add_subcommand("tables", "Export the intermediate tables");
  add_source(tables_cmd);
  std::string only;
  tables_cmd->add_option("--format", format, "json, csv or md")->check(CLI::IsMember({"json", "csv", "md"}));
  tables_cmd->add_option("--out", out_dir, "Output directory");
  tables_cmd->add_option("--only", only, "Export a single table (table9, ..., matrix)");
  tables_cmd->add_flag("--exact", exact, "Exact decimal values instead of rounded display values");

  auto* sweep_cmd = app.add_subcommand("sweep", "Re-evaluate over values of one numeric parameter");
  add_source(sweep_cmd);
  std::string param, values_list, from, to, step;
  sweep_cmd->add_option("--param", param, "Dotted path, e.g. enrollment.growth")->required();
  auto* values_opt = sweep_cmd->add_option("--values", values_list, "Comma-separated values");
  auto* from_opt = sweep_cmd->add_option("--from", from, "Range start");
  auto* to_opt = sweep_cmd->add_option("--to", to, "Range end (inclusive)");
  auto* step_opt = sweep_cmd->add_option("--step", step, "Range step");
  from_opt->needs(to_opt)->needs(step_opt)->excludes(values_opt);
  sweep_cmd->add_option("--format", format, "json, csv or md")->check(CLI::IsMember({"json", "csv", "md"}));

  auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API");
  int port = 8080;
  std::string bind = "127.0.0.1";
  std::string static_dir;
  serve_cmd->add_option("--port", port, "Port")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--bind", bind, "Bind address");
  serve_cmd->add_option("--static", static_dir, "Directory of static UI assets to serve at /");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  if (validate_cmd->parsed()) {
    Diagnostics d;
    auto loaded = detail::load_source(source, err, d);
    if (auto* s = std::get_if<Scenario>(&loaded)) d.append(validate(*s));
    detail::print_diagnostics(d, err);
    if (auto* code = std::get_if<int>(&loaded)) return *code;
    if (d.has_errors()) return kExitInvalid;
    out << "ok\n";
    return kExitOk;
  }

  if (appraise_cmd->parsed() || tables_cmd->parsed()) {
    auto read = detail::read_source(source, err);
    if (auto* code = std::get_if<int>(&read)) return *code;
    const auto& [text, opts] = std::get<detail::SourceText>(read);
    EvaluationOutcome outcome = appraise_text(text, opts);
    detail::print_diagnostics(outcome.diagnostics, err);
    if (!outcome.ok()) return kExitInvalid;
    ExportFormat fmt = *parse_export_format(format);
    if (appraise_cmd->parsed() && fmt == ExportFormat::Json) {
      std::string report = report_text(outcome);
      if (out_dir.empty()) {
        out << report;
        return kExitOk;
      }
      return detail::write_documents({{"report", report}}, fmt, out_dir, out, err);
    }
    auto docs = export_tables(*outcome.evaluation, fmt, exact ? ValueView::Exact : ValueView::Display);
    if (!only.empty()) {
      auto it = docs.find(only);
      if (it == docs.end()) {
        err << "error: no table named '" << only << "'\n";
        return kExitInvalid;
      }
      docs = {{it->first, it->second}};
    }
    return detail::write_documents(docs, fmt, out_dir, out, err);
  }

  if (sweep_cmd->parsed()) {
    std::vector<Decimal> values;
    if (!values_list.empty()) {
      auto v = detail::parse_value_list(values_list, err);
      if (!v) return kExitInvalid;
      values = std::move(*v);
    } else if (!from.empty()) {
      try {
        values = decimal_range(Decimal::parse(from), Decimal::parse(to), Decimal::parse(step));
      } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
      }
    } else {
      err << "error: give --values or --from/--to/--step\n";
      return kExitInvalid;
    }
    Diagnostics d;
    auto loaded = detail::load_source(source, err, d);
    detail::print_diagnostics(d, err);
    if (auto* code = std::get_if<int>(&loaded)) return *code;
    std::vector<SweepPoint> points;
    try {
      points = sweep(std::get<Scenario>(loaded), param, values);
    } catch (const ValidationError& e) {
      err << "error: " << e.what() << "\n";
      return kExitInvalid;
    }
    ExportFormat fmt = *parse_export_format(format);
    if (fmt == ExportFormat::Json) {
      out << sweep_json(param, points).dump(2) << "\n";
    } else {
      Table t = sweep_table(param, points);
      out << (fmt == ExportFormat::Csv ? to_csv(t, ValueView::Display, RoundingMode::HalfUp)
                                       : to_markdown(t, ValueView::Display, RoundingMode::HalfUp));
    }
    return kExitOk;
  }

  if (serve_cmd->parsed()) {
    httplib::Server server;
    // Address reuse only: a port held by another process must fail to bind.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
    });
    install_routes(server);
    if (!static_dir.empty() && !server.set_mount_point("/", static_dir)) {
      err << "error: cannot serve static directory " << static_dir << "\n";
      return kExitIo;
    }
    if (!server.bind_to_port(bind, port)) {
      err << "error: cannot bind " << bind << ":" << port << "\n";
      return kExitIo;
    }
    err << "listening on http://" << bind << ":" << port << "\n";
    server.listen_after_bind();
    return kExitOk;
  }
  return kExitInvalid;
}

}  // namespace roi_forge
