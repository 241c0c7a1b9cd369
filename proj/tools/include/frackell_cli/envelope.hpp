#pragma once

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace frackell::cli {

enum class Format { csv, json };

using Json = nlohmann::ordered_json;

/// A CSV body. Missing cells print as empty fields.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::optional<std::string>>> rows;
};

/// What every command produces. JSON prints {"metadata", "payload"}; CSV
/// prints metadata and notes as leading "# key: value" lines, then `table`.
struct Envelope {
  Json metadata = Json::object();
  Json payload = Json::object();
  Table table;
  std::vector<std::pair<std::string, std::string>> notes;
};

void render(const Envelope& envelope, Format format, std::ostream& out);

/// Quotes a CSV field when it contains a separator, quote or line break.
std::string csv_field(const std::string& text);

}  // namespace frackell::cli
