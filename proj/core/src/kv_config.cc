#include "manohog/kv_config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "manohog/error.h"

namespace manohog {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

[[noreturn]] void Bad(std::string_view text, std::string_view what,
                      std::string_view expected) {
  throw Error(ErrorCode::kInvalidArgument, std::string(what) + ": '" +
                                               std::string(text) + "' is not " +
                                               std::string(expected));
}

template <typename T>
T ParseNumber(std::string_view text, std::string_view what, std::string_view expected) {
  text = Trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    Bad(text, what, expected);
  }
  return value;
}

}  // namespace

KeyValues ParseKeyValues(std::string_view text) {
  KeyValues out;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = Trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_number;
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos || Trim(line.substr(0, eq)).empty()) {
      throw Error(ErrorCode::kMalformedLine,
                  "line " + std::to_string(line_number) + ": expected key=value");
    }
    out.emplace_back(std::string(Trim(line.substr(0, eq))),
                     std::string(Trim(line.substr(eq + 1))));
  }
  return out;
}

KeyValues ReadKeyValues(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseKeyValues(buffer.str());
}

int ParseIntValue(std::string_view text, std::string_view what) {
  return ParseNumber<int>(text, what, "an integer");
}

unsigned long long ParseUnsignedValue(std::string_view text, std::string_view what) {
  return ParseNumber<unsigned long long>(text, what, "an unsigned integer");
}

double ParseDoubleValue(std::string_view text, std::string_view what) {
  const double value = ParseNumber<double>(text, what, "a number");
  if (!std::isfinite(value)) Bad(text, what, "a finite number");
  return value;
}

bool ParseBoolValue(std::string_view text, std::string_view what) {
  text = Trim(text);
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  Bad(text, what, "a boolean");
}

std::vector<double> ParseDoubleList(std::string_view text, std::string_view what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(ParseDoubleValue(text.substr(start, comma - start), what));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string FormatDouble(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

}  // namespace manohog
