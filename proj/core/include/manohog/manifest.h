#ifndef MANOHOG_MANIFEST_H_
#define MANOHOG_MANIFEST_H_

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace manohog {

// Contraction vigor classes. The numeric value is the class id used by the
// classifier and in model files.
enum class Vigor : int { kNormal = 0, kWeak = 1, kFailed = 2 };

inline constexpr int kVigorClassCount = 3;
inline constexpr std::array<std::string_view, kVigorClassCount> kVigorNames = {
    "normal", "weak", "failed"};

std::string_view VigorName(Vigor vigor);
std::optional<Vigor> ParseVigor(std::string_view token);

struct LabeledSample {
  std::filesystem::path image_path;
  Vigor label = Vigor::kNormal;

  friend bool operator==(const LabeledSample&, const LabeledSample&) = default;
};

// Manifest text format:
//
//   path,label
//   img/a.png,normal
//   # comment lines and blank lines are skipped
//   img/b.png,failed
//
// The header must be exactly `path,label`. The label is split off at the
// last comma, so paths may contain commas. Paths are returned as written;
// use ResolveSamplePath to anchor relative paths at the manifest directory.
//
// Errors: FileNotFound; MalformedLine (message names the 1-based line);
// UnknownLabel (message names the token).
std::vector<LabeledSample> ReadManifest(const std::filesystem::path& path);
std::vector<LabeledSample> ParseManifest(std::string_view text);

std::string FormatManifest(const std::vector<LabeledSample>& samples);
void WriteManifest(const std::filesystem::path& path,
                   const std::vector<LabeledSample>& samples);

std::filesystem::path ResolveSamplePath(const std::filesystem::path& manifest,
                                        const LabeledSample& sample);

}  // namespace manohog

#endif  // MANOHOG_MANIFEST_H_
