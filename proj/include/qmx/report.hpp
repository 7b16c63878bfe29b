#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qmx/errors.hpp"
#include "qmx/version.hpp"

namespace qmx {

// nlohmann::json with the default (lexicographically ordered) object map, so
// serialization is a pure function of the inserted values.  Every number that
// is not an exact integer travels as a rational string; doubles never enter a
// report.
using Json = nlohmann::json;

struct TaskResult {
  std::string name;
  std::string status;  // "ok" | "error"
  std::string error;   // what() text when status == "error"
  Json data = Json::object();
  std::string csv;     // per-task table, written as a side file in csv mode
};

struct Report {
  Json scenario_echo = Json::object();
  std::vector<TaskResult> tasks;
};

inline Json report_json(const Report& rep) {
  Json out = Json::object();
  out["scenario"] = rep.scenario_echo;
  Json tasks = Json::array();
  for (const TaskResult& t : rep.tasks) {
    Json jt = Json::object();
    jt["name"] = t.name;
    jt["status"] = t.status;
    if (t.status != "ok") jt["error"] = t.error;
    jt["data"] = t.data;
    tasks.push_back(std::move(jt));
  }
  out["tasks"] = std::move(tasks);
  out["versions"] = Json{{"format", 1}, {"qmx", version_string}};
  // Wall-clock timings go to stderr only; the report must not depend on load
  // or scheduling, so the embedded block is a constant.
  out["timing"] = Json{{"elapsed_ms", 0}, {"note", "deterministic report; see stderr for wall-clock timings"}};
  return out;
}

// RFC-4180 quoting for fields that may carry commas (witness labels etc.)
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  q += '"';
  return q;
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  if (!os) fail(Errc::io_error, "cannot open " + p.string() + " for writing");
  os << text;
  os.flush();
  if (!os) fail(Errc::io_error, "short write to " + p.string());
}

// Writes report.json into out_dir (always; the JSON document is the report of
// record) plus one "<index>_<task>.csv" per task when format == "csv".
inline void emit(const Report& rep, const std::string& format, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) fail(Errc::io_error, "cannot create " + out_dir.string() + ": " + ec.message());
  write_file(out_dir / "report.json", report_json(rep).dump(2) + "\n");
  if (format == "csv") {
    for (std::size_t i = 0; i < rep.tasks.size(); ++i) {
      const TaskResult& t = rep.tasks[i];
      std::string fname = std::to_string(i) + "_" + t.name + ".csv";
      for (char& c : fname)
        if (c == '/' || c == ' ') c = '-';
      write_file(out_dir / fname, t.csv);
    }
  }
}

}  // namespace qmx
