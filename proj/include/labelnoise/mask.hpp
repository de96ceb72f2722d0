#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace labelnoise {

/// Integer pixel coordinate. Rows grow downwards.
struct Pixel {
    int row = 0;
    int col = 0;

    friend bool operator==(const Pixel&, const Pixel&) = default;
};

/**
 * @brief Binary label image for one slice.
 *
 * Storage is row-major with one byte per pixel holding 0 (background) or
 * 1 (foreground). The setters accept bool only, so no third value can be
 * stored after construction.
 */
class Mask {
public:
    Mask(int width, int height);

    /// Builds a mask from row-major 0/1 bytes. Any other byte value is rejected.
    Mask(int width, int height, std::vector<std::uint8_t> pixels);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return pixels_.size(); }

    bool at(int row, int col) const { return pixels_[index(row, col)] != 0; }
    void set(int row, int col, bool foreground) { pixels_[index(row, col)] = foreground ? 1 : 0; }

    /// Out-of-bounds coordinates read as background.
    bool at_or_background(int row, int col) const noexcept {
        return contains(row, col) && pixels_[index(row, col)] != 0;
    }

    bool contains(int row, int col) const noexcept {
        return row >= 0 && col >= 0 && row < height_ && col < width_;
    }

    std::size_t index(int row, int col) const noexcept {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(col);
    }

    bool flat(std::size_t i) const { return pixels_[i] != 0; }
    void set_flat(std::size_t i, bool foreground) { pixels_[i] = foreground ? 1 : 0; }
    void flip_flat(std::size_t i) { pixels_[i] ^= 1; }

    std::span<const std::uint8_t> data() const noexcept { return pixels_; }

    std::size_t foreground_count() const noexcept;
    bool empty() const noexcept { return foreground_count() == 0; }

    /// In-place union with a mask of identical dimensions.
    void merge(const Mask& other);

    Mask complement() const;

    friend bool operator==(const Mask&, const Mask&) = default;

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> pixels_;
};

/// Ordered, dimension-homogeneous collection of masks.
class VolumeDataset {
public:
    VolumeDataset() = default;
    VolumeDataset(std::vector<Mask> slices, std::vector<std::string> slice_ids);

    std::size_t size() const noexcept { return slices_.size(); }
    bool empty() const noexcept { return slices_.empty(); }
    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }

    const Mask& slice(std::size_t i) const { return slices_.at(i); }
    const std::vector<Mask>& slices() const noexcept { return slices_; }
    const std::vector<std::string>& slice_ids() const noexcept { return ids_; }

    /// Position of the slice with the given id; throws AlignmentError if absent.
    std::size_t index_of(const std::string& id) const;

    /// Same ids in the same order and same dimensions.
    bool aligned_with(const VolumeDataset& other) const noexcept;

    friend bool operator==(const VolumeDataset&, const VolumeDataset&) = default;

private:
    std::vector<Mask> slices_;
    std::vector<std::string> ids_;
    int width_ = 0;
    int height_ = 0;
};

/// Canonical identifier for slice `index`: "slice_0000", "slice_0001", ...
std::string canonical_slice_id(std::size_t index);

}  // namespace labelnoise
