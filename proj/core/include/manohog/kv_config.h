#ifndef MANOHOG_KV_CONFIG_H_
#define MANOHOG_KV_CONFIG_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace manohog {

// Flat `key=value` text: one pair per line, surrounding whitespace trimmed,
// `#` lines and blank lines skipped. Order is preserved; later duplicates
// override earlier ones when applied in sequence.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Errors: MalformedLine for a non-blank line without '=' or with an empty key.
KeyValues ParseKeyValues(std::string_view text);
KeyValues ReadKeyValues(const std::filesystem::path& path);

// Strict scalar parsers; the whole string must be consumed. Errors:
// InvalidArgument mentioning `what`.
int ParseIntValue(std::string_view text, std::string_view what);
unsigned long long ParseUnsignedValue(std::string_view text, std::string_view what);
double ParseDoubleValue(std::string_view text, std::string_view what);
bool ParseBoolValue(std::string_view text, std::string_view what);
std::vector<double> ParseDoubleList(std::string_view text, std::string_view what);

// Shortest text that parses back to exactly the same double.
std::string FormatDouble(double value);

}  // namespace manohog

#endif  // MANOHOG_KV_CONFIG_H_
