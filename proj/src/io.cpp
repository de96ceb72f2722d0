#include "labelnoise/io.hpp"

#include <png.h>

#include <charconv>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "labelnoise/error.hpp"

namespace labelnoise {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

Mask read_mask_png(const fs::path& file) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, file.c_str())) {
        throw DecodeError("cannot decode '" + file.string() + "': " + image.message);
    }
    image.format = PNG_FORMAT_GRAY;
    std::vector<std::uint8_t> gray(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, gray.data(), 0, nullptr)) {
        const std::string message = image.message;
        png_image_free(&image);
        throw DecodeError("cannot decode '" + file.string() + "': " + message);
    }
    for (auto& v : gray) {
        v = v > 127 ? 1 : 0;
    }
    return Mask(static_cast<int>(image.width), static_cast<int>(image.height), std::move(gray));
}

void write_mask_png(const Mask& mask, const fs::path& file) {
    std::vector<std::uint8_t> gray(mask.data().begin(), mask.data().end());
    for (auto& v : gray) {
        v = v ? 255 : 0;
    }
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(mask.width());
    image.height = static_cast<png_uint_32>(mask.height());
    image.format = PNG_FORMAT_GRAY;
    if (!png_image_write_to_file(&image, file.c_str(), 0, gray.data(), 0, nullptr)) {
        throw IoError("cannot write '" + file.string() + "': " + image.message);
    }
}

void write_text_file(const fs::path& file, const std::string& text) {
    if (file.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(file.parent_path(), ec);
        if (ec) {
            throw IoError("cannot create directory '" + file.parent_path().string() + "': " + ec.message());
        }
    }
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out << text;
    out.close();
    if (!out) {
        throw IoError("cannot write '" + file.string() + "'");
    }
}

namespace {

std::string read_text_file(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open '" + file.string() + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

template <typename T>
T required(const json& doc, const char* key, const fs::path& where) {
    if (!doc.contains(key)) {
        throw FormatError("manifest '" + where.string() + "' lacks field '" + key + "'");
    }
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception& e) {
        throw FormatError("manifest '" + where.string() + "' field '" + key + "': " + e.what());
    }
}

}  // namespace

DatasetManifest read_manifest(const fs::path& dir) {
    const fs::path file = dir / kManifestName;
    if (!fs::is_regular_file(file)) {
        throw FormatError("no " + std::string(kManifestName) + " in '" + dir.string() + "'");
    }
    json doc;
    try {
        doc = json::parse(read_text_file(file));
    } catch (const json::parse_error& e) {
        throw FormatError("manifest '" + file.string() + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) {
        throw FormatError("manifest '" + file.string() + "' is not a JSON object");
    }

    DatasetManifest m;
    m.format_version = required<int>(doc, "format_version", file);
    if (m.format_version != kManifestFormatVersion) {
        throw FormatError("manifest '" + file.string() + "' has unsupported format_version " +
                          std::to_string(m.format_version));
    }
    m.width = required<int>(doc, "width", file);
    m.height = required<int>(doc, "height", file);
    m.slice_count = required<std::size_t>(doc, "slice_count", file);
    m.slice_files = required<std::vector<std::string>>(doc, "slice_files", file);
    if (doc.contains("slice_ids")) {
        m.slice_ids = required<std::vector<std::string>>(doc, "slice_ids", file);
    }
    if (doc.contains("provenance") && !doc.at("provenance").is_null()) {
        m.provenance = required<std::string>(doc, "provenance", file);
    }
    if (m.slice_files.size() != m.slice_count) {
        throw IntegrityError("manifest '" + file.string() + "' lists " + std::to_string(m.slice_files.size()) +
                             " files but slice_count is " + std::to_string(m.slice_count));
    }
    if (!m.slice_ids.empty() && m.slice_ids.size() != m.slice_count) {
        throw IntegrityError("manifest '" + file.string() + "' lists " + std::to_string(m.slice_ids.size()) +
                             " ids but slice_count is " + std::to_string(m.slice_count));
    }
    if (m.slice_ids.empty()) {
        for (const auto& name : m.slice_files) {
            m.slice_ids.push_back(fs::path(name).stem().string());
        }
    }
    return m;
}

VolumeDataset load_dataset(const fs::path& dir) {
    const DatasetManifest m = read_manifest(dir);
    std::vector<Mask> slices;
    slices.reserve(m.slice_count);
    for (const auto& name : m.slice_files) {
        const fs::path file = dir / name;
        if (!fs::is_regular_file(file)) {
            throw IntegrityError("manifest references missing slice file '" + file.string() + "'");
        }
        Mask mask = read_mask_png(file);
        if (mask.width() != m.width || mask.height() != m.height) {
            throw IntegrityError("slice '" + file.string() + "' is " + std::to_string(mask.width()) + "x" +
                                 std::to_string(mask.height()) + ", manifest says " + std::to_string(m.width) +
                                 "x" + std::to_string(m.height));
        }
        slices.push_back(std::move(mask));
    }
    try {
        return VolumeDataset(std::move(slices), m.slice_ids);
    } catch (const InvalidArgument& e) {
        throw IntegrityError("dataset '" + dir.string() + "': " + e.what());
    }
}

void save_dataset(const VolumeDataset& dataset, const fs::path& dir, const std::optional<std::string>& provenance) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create dataset directory '" + dir.string() + "': " + ec.message());
    }
    // A stale manifest must not describe a half-written directory.
    fs::remove(dir / kManifestName, ec);

    std::vector<std::string> files;
    files.reserve(dataset.size());
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        files.push_back(canonical_slice_id(i) + ".png");
        write_mask_png(dataset.slice(i), dir / files.back());
    }

    json doc;
    doc["format_version"] = kManifestFormatVersion;
    doc["width"] = dataset.width();
    doc["height"] = dataset.height();
    doc["slice_count"] = dataset.size();
    doc["slice_files"] = files;
    doc["slice_ids"] = dataset.slice_ids();
    doc["provenance"] = provenance ? json(*provenance) : json(nullptr);
    const fs::path tmp = dir / (std::string(kManifestName) + ".tmp");
    write_text_file(tmp, doc.dump(2) + "\n");
    fs::rename(tmp, dir / kManifestName, ec);
    if (ec) {
        throw IoError("cannot finalise manifest in '" + dir.string() + "': " + ec.message());
    }
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

namespace {

json bracket_end_json(const BracketEnd& e) {
    json doc;
    doc["parameter"] = e.parameter;
    doc["dice"] = e.dice;
    return doc;
}

}  // namespace

std::string calibration_json(const CalibrationResult& r) {
    json doc;
    doc["mode"] = std::string(to_string(r.mode));
    doc["solved_parameter"] = r.solved_parameter;
    doc["target"] = r.target;
    doc["achieved"] = r.achieved;
    doc["tolerance"] = r.tolerance;
    doc["converged"] = r.converged;
    doc["pooled_achieved"] = r.pooled_achieved;
    doc["lower_bound"] = bracket_end_json(r.lower);
    doc["upper_bound"] = bracket_end_json(r.upper);
    doc["iterations"] = r.iterations;
    doc["expansions"] = r.expansions;
    if (r.mode == Mode::natural) {
        doc["spacing"] = r.spacing;
    }
    doc["seed"] = r.seed.global_seed;
    doc["sample_slice_ids"] = r.sample_slice_ids;
    json history = json::array();
    for (const auto& b : r.history) {
        json entry;
        entry["lower"] = bracket_end_json(b.lower);
        entry["upper"] = bracket_end_json(b.upper);
        history.push_back(std::move(entry));
    }
    doc["bounds_history"] = std::move(history);
    return doc.dump(2) + "\n";
}

void write_calibration(const CalibrationResult& result, const fs::path& file) {
    write_text_file(file, calibration_json(result));
}

std::string report_csv(std::span<const SliceDice> rows) {
    std::string out = "slice_id,dice\n";
    double sum = 0.0;
    for (const auto& row : rows) {
        out += row.slice_id + "," + format_double(row.dice) + "\n";
        sum += row.dice;
    }
    if (!rows.empty()) {
        out += "# mean," + format_double(sum / static_cast<double>(rows.size())) + "\n";
    }
    return out;
}

void write_report(std::span<const SliceDice> rows, const fs::path& file) {
    write_text_file(file, report_csv(rows));
}

}  // namespace labelnoise
