#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "labelnoise/calibrate.hpp"
#include "labelnoise/dice.hpp"
#include "labelnoise/mask.hpp"

namespace labelnoise {

inline constexpr int kManifestFormatVersion = 1;
inline constexpr const char* kManifestName = "manifest.json";

/**
 * @brief Contents of `manifest.json` in a dataset directory.
 *
 * `slice_ids` is optional on disk; when absent the ids are the file stems.
 */
struct DatasetManifest {
    int format_version = kManifestFormatVersion;
    int width = 0;
    int height = 0;
    std::size_t slice_count = 0;
    std::vector<std::string> slice_files;
    std::vector<std::string> slice_ids;
    std::optional<std::string> provenance;
};

/// Reads an 8-bit PNG (any colour type is converted to grey); values > 127 are foreground.
Mask read_mask_png(const std::filesystem::path& file);

/// Writes a single-channel 8-bit PNG: 0 background, 255 foreground.
void write_mask_png(const Mask& mask, const std::filesystem::path& file);

DatasetManifest read_manifest(const std::filesystem::path& dir);

VolumeDataset load_dataset(const std::filesystem::path& dir);

/// Writes slice_0000.png ... then manifest.json. Creates `dir` if needed.
void save_dataset(const VolumeDataset& dataset, const std::filesystem::path& dir,
                  const std::optional<std::string>& provenance = std::nullopt);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Canonical JSON text of a calibration result (2-space indent, trailing newline).
std::string calibration_json(const CalibrationResult& result);

void write_calibration(const CalibrationResult& result, const std::filesystem::path& file);

/// CSV text: header `slice_id,dice`, one row per slice, then `# mean,<value>` if non-empty.
std::string report_csv(std::span<const SliceDice> rows);

void write_report(std::span<const SliceDice> rows, const std::filesystem::path& file);

/// Writes `text` to `file`, creating parent directories. Throws IoError.
void write_text_file(const std::filesystem::path& file, const std::string& text);

}  // namespace labelnoise
