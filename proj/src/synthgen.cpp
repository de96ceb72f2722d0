#include "labelnoise/synthgen.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "labelnoise/error.hpp"

namespace labelnoise {

namespace {

constexpr int kFirstHarmonic = 2;
constexpr int kLastHarmonic = 5;

PointF image_center(int size) {
    const double c = size / 2;
    return {c, c};
}

}  // namespace

ShapeKind parse_shape_kind(std::string_view name) {
    if (name == "circle") {
        return ShapeKind::circle;
    }
    if (name == "blob") {
        return ShapeKind::blob;
    }
    throw InvalidArgument("unknown shape kind '" + std::string(name) + "' (expected circle or blob)");
}

void ShapeSpec::validate() const {
    if (size < 1) {
        throw BoundsError("image size must be >= 1");
    }
    if (!(radius >= 0.0) || !(radius < size / 2.0)) {
        throw BoundsError("radius " + std::to_string(radius) + " must be >= 0 and < size/2 = " +
                          std::to_string(size / 2.0));
    }
    if (!(irregularity >= 0.0 && irregularity < 1.0)) {
        throw InvalidArgument("blob irregularity must lie in [0, 1)");
    }
    if (count < 1) {
        throw InvalidArgument("slice count must be >= 1");
    }
}

Mask make_circle(int size, double radius, PointF center) {
    if (size < 1 || !(radius >= 0.0) || center.row - radius < 0.0 || center.col - radius < 0.0 ||
        center.row + radius > size - 1 || center.col + radius > size - 1) {
        throw BoundsError("circle of radius " + std::to_string(radius) + " at (" + std::to_string(center.row) +
                          ", " + std::to_string(center.col) + ") does not fit in a " + std::to_string(size) +
                          "x" + std::to_string(size) + " image");
    }
    Mask mask(size, size);
    const double r2 = radius * radius;
    for (int r = 0; r < size; ++r) {
        const double dr = r - center.row;
        for (int c = 0; c < size; ++c) {
            const double dc = c - center.col;
            if (dr * dr + dc * dc <= r2) {
                mask.set(r, c, true);
            }
        }
    }
    return mask;
}

Mask make_blob(const ShapeSpec& spec, std::size_t slice_index) {
    spec.validate();
    Stream stream(stream_seed(spec.seed, slice_index, OpTag::synth_blob));
    constexpr std::size_t n_harmonics = kLastHarmonic - kFirstHarmonic + 1;
    std::array<double, n_harmonics> amplitude{};
    std::array<double, n_harmonics> phase{};
    double norm = 0.0;
    for (std::size_t i = 0; i < n_harmonics; ++i) {
        const double k = static_cast<double>(kFirstHarmonic + static_cast<int>(i));
        amplitude[i] = (2.0 * stream.uniform() - 1.0) / k;
        phase[i] = 2.0 * std::numbers::pi * stream.uniform();
        norm += 1.0 / k;
    }

    const PointF center = image_center(spec.size);
    if (spec.irregularity == 0.0) {
        return make_circle(spec.size, spec.radius, center);
    }
    // Keep at least one pixel of margin so the blob never touches the image edge.
    const double max_radius = std::min(spec.radius * (1.0 + spec.irregularity),
                                       std::min(center.row, spec.size - 1 - center.row) - 1.0);
    Mask mask(spec.size, spec.size);
    const int lo = std::max(0, static_cast<int>(std::floor(center.row - max_radius)));
    const int hi = std::min(spec.size - 1, static_cast<int>(std::ceil(center.row + max_radius)));
    for (int r = lo; r <= hi; ++r) {
        const double dr = r - center.row;
        for (int c = lo; c <= hi; ++c) {
            const double dc = c - center.col;
            const double theta = std::atan2(dr, dc);
            double wobble = 0.0;
            for (std::size_t i = 0; i < n_harmonics; ++i) {
                const double k = static_cast<double>(kFirstHarmonic + static_cast<int>(i));
                wobble += amplitude[i] * std::cos(k * theta + phase[i]);
            }
            const double boundary =
                std::min(spec.radius * (1.0 + spec.irregularity * wobble / norm), max_radius);
            if (dr * dr + dc * dc <= boundary * boundary) {
                mask.set(r, c, true);
            }
        }
    }
    return mask;
}

VolumeDataset make_dataset(const ShapeSpec& spec) {
    spec.validate();
    std::vector<Mask> slices;
    std::vector<std::string> ids;
    slices.reserve(spec.count);
    for (std::size_t i = 0; i < spec.count; ++i) {
        if (spec.kind == ShapeKind::circle) {
            slices.push_back(make_circle(spec.size, spec.radius, image_center(spec.size)));
        } else {
            slices.push_back(make_blob(spec, i));
        }
        ids.push_back(canonical_slice_id(i));
    }
    return VolumeDataset(std::move(slices), std::move(ids));
}

}  // namespace labelnoise
