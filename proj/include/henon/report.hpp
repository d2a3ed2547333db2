#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "henon/radial_function.hpp"

namespace henon::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "henon-lab/1";

/// {"value": v, "tol": tol}. Non-finite values are stored as null.
Json scalar(double value, double tol);

/// Self-describing record skeleton: schema, command, input echo and empty
/// results/diagnostics/files objects.
Json makeRecord(const std::string& command, Json input);

/// Wraps a payload with the run metadata kept outside it:
///   {"payload": ..., "metadata": {"wall_time_s": ...}}
Json withMetadata(Json payload, double wallSeconds);

/// Failure record: schema, command, input, and {"error": {"kind", "message", "radius"?}}.
Json errorRecord(const std::string& command, Json input, const std::string& kind,
                 const std::string& message, double radius);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  /// Fixed decimals per column for display tables; empty or -1 means 17
  /// significant digits.
  std::vector<int> decimals;
};

/// CSV with a header row.
void writeCsv(const std::string& path, const Table& table);
Table readCsv(const std::string& path);

/// r, v, dv columns (plus flux when given) at the grid nodes.
Table profileTable(const RadialFunction& f, const std::vector<double>& flux = {});

}  // namespace henon::report
