#include "labelnoise/mask.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_set>

#include "labelnoise/error.hpp"

namespace labelnoise {

namespace {

void check_dimensions(int width, int height) {
    if (width < 1 || height < 1) {
        throw InvalidArgument("mask dimensions must be positive, got " + std::to_string(width) + "x" +
                              std::to_string(height));
    }
}

}  // namespace

Mask::Mask(int width, int height) : width_(width), height_(height) {
    check_dimensions(width, height);
    pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
}

Mask::Mask(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    check_dimensions(width, height);
    if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw InvalidArgument("pixel buffer holds " + std::to_string(pixels_.size()) +
                              " values, expected " + std::to_string(width) + "x" + std::to_string(height));
    }
    if (std::any_of(pixels_.begin(), pixels_.end(), [](std::uint8_t v) { return v > 1; })) {
        throw InvalidArgument("mask pixels must be 0 or 1");
    }
}

std::size_t Mask::foreground_count() const noexcept {
    return static_cast<std::size_t>(std::count(pixels_.begin(), pixels_.end(), std::uint8_t{1}));
}

void Mask::merge(const Mask& other) {
    if (other.width_ != width_ || other.height_ != height_) {
        throw ShapeError("cannot merge " + std::to_string(other.width_) + "x" + std::to_string(other.height_) +
                         " mask into " + std::to_string(width_) + "x" + std::to_string(height_));
    }
    for (std::size_t i = 0; i < pixels_.size(); ++i) {
        pixels_[i] |= other.pixels_[i];
    }
}

Mask Mask::complement() const {
    Mask out = *this;
    for (auto& p : out.pixels_) {
        p ^= 1;
    }
    return out;
}

VolumeDataset::VolumeDataset(std::vector<Mask> slices, std::vector<std::string> slice_ids)
    : slices_(std::move(slices)), ids_(std::move(slice_ids)) {
    if (slices_.size() != ids_.size()) {
        throw InvalidArgument("dataset has " + std::to_string(slices_.size()) + " slices but " +
                              std::to_string(ids_.size()) + " ids");
    }
    std::unordered_set<std::string> seen;
    for (const auto& id : ids_) {
        if (!seen.insert(id).second) {
            throw InvalidArgument("duplicate slice id '" + id + "'");
        }
    }
    if (!slices_.empty()) {
        width_ = slices_.front().width();
        height_ = slices_.front().height();
        for (std::size_t i = 0; i < slices_.size(); ++i) {
            if (slices_[i].width() != width_ || slices_[i].height() != height_) {
                throw ShapeError("slice '" + ids_[i] + "' is " + std::to_string(slices_[i].width()) + "x" +
                                 std::to_string(slices_[i].height()) + ", dataset is " +
                                 std::to_string(width_) + "x" + std::to_string(height_));
            }
        }
    }
}

std::size_t VolumeDataset::index_of(const std::string& id) const {
    const auto it = std::find(ids_.begin(), ids_.end(), id);
    if (it == ids_.end()) {
        throw AlignmentError("slice id '" + id + "' not present in dataset");
    }
    return static_cast<std::size_t>(it - ids_.begin());
}

bool VolumeDataset::aligned_with(const VolumeDataset& other) const noexcept {
    return ids_ == other.ids_ && width_ == other.width_ && height_ == other.height_;
}

std::string canonical_slice_id(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "slice_%04zu", index);
    return buf;
}

}  // namespace labelnoise
