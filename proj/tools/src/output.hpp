#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "gtank/rational.hpp"

namespace gtank::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

enum class ExitCode : int { ok = 0, usage = 2, check_failed = 3, resource_cap = 4 };

enum class Format { json, csv };
Format parse_format(const std::string& text);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct CommandOutput {
  Json record;
  CsvTable table;
  ExitCode exit_code = ExitCode::ok;
};

/// {"schema_version", "command", "inputs", "results", "provenance"}; the
/// last two start empty.
Json envelope(const std::string& command, Json inputs);

/// {"num": "...", "den": "..."}.
Json to_json(const Rational& r);

/// 17 significant digits so the value parses back exactly.
std::string csv_number(double v);
std::string csv_field(const std::string& text);
std::string csv_bool(bool v);

void write_output(const CommandOutput& out, Format format, std::ostream& os);

}  // namespace gtank::cli
