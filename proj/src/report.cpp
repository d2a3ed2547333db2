#include "henon/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "henon/errors.hpp"

namespace henon::report {

Json scalar(double value, double tol) {
  Json j;
  j["value"] = std::isfinite(value) ? Json(value) : Json(nullptr);
  j["tol"] = tol;
  return j;
}

Json makeRecord(const std::string& command, Json input) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  j["input"] = std::move(input);
  j["results"] = Json::object();
  j["diagnostics"] = Json::object();
  j["files"] = Json::object();
  return j;
}

Json withMetadata(Json payload, double wallSeconds) {
  Json j;
  j["payload"] = std::move(payload);
  j["metadata"] = {{"wall_time_s", wallSeconds}};
  return j;
}

Json errorRecord(const std::string& command, Json input, const std::string& kind,
                 const std::string& message, double radius) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  j["input"] = std::move(input);
  j["error"] = {{"kind", kind}, {"message", message}};
  if (std::isfinite(radius)) j["error"]["radius"] = radius;
  return j;
}

void writeCsv(const std::string& path, const Table& table) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open " + path + " for writing");
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    out << (i ? "," : "") << table.header[i];
  }
  out << '\n';
  char buf[40];
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      const int d = i < table.decimals.size() ? table.decimals[i] : -1;
      if (d >= 0) {
        std::snprintf(buf, sizeof buf, "%.*f", d, row[i]);
      } else {
        std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      }
      out << (i ? "," : "") << buf;
    }
    out << '\n';
  }
  if (!out) throw SolverError("write to " + path + " failed");
}

Table readCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw InputError(path + " is empty");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.header.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw InputError("bad number '" + cell + "' in " + path);
      }
    }
    if (row.size() != t.header.size()) throw InputError("ragged row in " + path);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table profileTable(const RadialFunction& f, const std::vector<double>& flux) {
  Table t;
  t.header = {"r", "v", "dv"};
  if (!flux.empty()) t.header.push_back("flux");
  const auto nodes = f.grid->nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::vector<double> row{nodes[i], f.values[i], f.derivatives[i]};
    if (!flux.empty()) row.push_back(flux[i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace henon::report
