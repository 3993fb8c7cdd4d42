#include "output.hpp"

#include <cstdio>
#include <ostream>

#include "gtank/errors.hpp"

namespace gtank::cli {

Format parse_format(const std::string& text) {
  if (text == "json") return Format::json;
  if (text == "csv") return Format::csv;
  throw DomainError("unknown format '" + text + "'");
}

Json envelope(const std::string& command, Json inputs) {
  Json record;
  record["schema_version"] = kSchemaVersion;
  record["command"] = command;
  record["inputs"] = std::move(inputs);
  record["results"] = Json::object();
  record["provenance"] = Json::array();
  return record;
}

Json to_json(const Rational& r) {
  return Json{{"num", r.numerator().get_str()}, {"den", r.denominator().get_str()}};
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

std::string csv_bool(bool v) { return v ? "true" : "false"; }

void write_output(const CommandOutput& out, Format format, std::ostream& os) {
  if (format == Format::json) {
    os << out.record.dump(2) << '\n';
    return;
  }
  const auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_field(cells[i]);
    os << '\n';
  };
  line(out.table.header);
  for (const auto& row : out.table.rows) line(row);
}

}  // namespace gtank::cli
