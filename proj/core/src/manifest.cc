#include "manohog/manifest.h"

#include <fstream>
#include <sstream>

#include "manohog/error.h"

namespace manohog {
namespace {

std::string_view TrimLineEnd(std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                           line.back() == '\t')) {
    line.remove_suffix(1);
  }
  return line;
}

}  // namespace

std::string_view VigorName(Vigor vigor) {
  return kVigorNames.at(static_cast<std::size_t>(vigor));
}

std::optional<Vigor> ParseVigor(std::string_view token) {
  for (std::size_t i = 0; i < kVigorNames.size(); ++i) {
    if (token == kVigorNames[i]) return static_cast<Vigor>(i);
  }
  return std::nullopt;
}

std::vector<LabeledSample> ParseManifest(std::string_view text) {
  std::vector<LabeledSample> samples;
  std::size_t line_number = 0;
  bool saw_header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = TrimLineEnd(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_number;

    if (line_number == 1) {
      // Tolerate a UTF-8 byte order mark in front of the header.
      if (line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
      if (line != "path,label") {
        throw Error(ErrorCode::kMalformedLine,
                    "line 1: expected header 'path,label'");
      }
      saw_header = true;
      continue;
    }
    if (line.empty() || line.front() == '#') continue;

    const std::size_t comma = line.rfind(',');
    if (comma == std::string_view::npos || comma == 0) {
      throw Error(ErrorCode::kMalformedLine,
                  "line " + std::to_string(line_number) + ": expected 'path,label'");
    }
    const std::string_view label = line.substr(comma + 1);
    const std::optional<Vigor> vigor = ParseVigor(label);
    if (!vigor) {
      throw Error(ErrorCode::kUnknownLabel, std::string(label));
    }
    samples.push_back({std::filesystem::path(std::string(line.substr(0, comma))), *vigor});
  }
  if (!saw_header) {
    throw Error(ErrorCode::kMalformedLine, "line 1: missing header 'path,label'");
  }
  return samples;
}

std::vector<LabeledSample> ReadManifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseManifest(buffer.str());
}

std::string FormatManifest(const std::vector<LabeledSample>& samples) {
  std::string out = "path,label\n";
  for (const LabeledSample& s : samples) {
    out += s.image_path.generic_string();
    out += ',';
    out += VigorName(s.label);
    out += '\n';
  }
  return out;
}

void WriteManifest(const std::filesystem::path& path,
                   const std::vector<LabeledSample>& samples) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot create " + path.string());
  out << FormatManifest(samples);
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path.string());
}

std::filesystem::path ResolveSamplePath(const std::filesystem::path& manifest,
                                        const LabeledSample& sample) {
  if (sample.image_path.is_absolute()) return sample.image_path;
  return manifest.parent_path() / sample.image_path;
}

}  // namespace manohog
