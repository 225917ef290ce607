#include "swarm/csv.h"

#include <fmt/format.h>

namespace swarm::csv {

std::string FormatDouble(double value) { return fmt::format("{:.9g}", value); }

std::string QuoteField(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void WriteRow(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << QuoteField(fields[i]);
  }
  out << "\r\n";
}

}  // namespace swarm::csv
