#include "frackell_cli/envelope.hpp"

namespace frackell::cli {

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

namespace {

std::string scalar_text(const Json& value) {
  if (value.is_string()) return value.get<std::string>();
  return value.dump();
}

void write_row(std::ostream& out, const std::vector<std::optional<std::string>>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i > 0) out << ',';
    if (row[i]) out << csv_field(*row[i]);
  }
  out << '\n';
}

}  // namespace

void render(const Envelope& envelope, Format format, std::ostream& out) {
  if (format == Format::json) {
    Json doc = Json::object();
    doc["metadata"] = envelope.metadata;
    doc["payload"] = envelope.payload;
    out << doc.dump(2) << '\n';
    return;
  }
  for (const auto& [key, value] : envelope.metadata.items()) {
    out << "# " << key << ": " << scalar_text(value) << '\n';
  }
  for (const auto& [key, value] : envelope.notes) out << "# " << key << ": " << value << '\n';
  std::vector<std::optional<std::string>> header(envelope.table.header.begin(), envelope.table.header.end());
  write_row(out, header);
  for (const auto& row : envelope.table.rows) write_row(out, row);
}

}  // namespace frackell::cli
