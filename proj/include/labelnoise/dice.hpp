#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "labelnoise/mask.hpp"

namespace labelnoise {

/// Dice-Sorensen agreement between two masks together with its raw counts.
struct DiceScore {
    double value = 1.0;
    std::size_t intersection = 0;
    std::size_t size_a = 0;
    std::size_t size_b = 0;
};

/// 2|A∩B| / (|A|+|B|); 1.0 when both masks are empty. Throws ShapeError on mismatch.
DiceScore dice(const Mask& a, const Mask& b);

/// Mean of per-slice dice over `slice_filter` (ids). Throws EmptySampleError / AlignmentError.
double mean_slice_dice(const VolumeDataset& a, const VolumeDataset& b,
                       std::span<const std::string> slice_filter);

/// Mean of per-slice dice over slice positions.
double mean_slice_dice_at(const VolumeDataset& a, const VolumeDataset& b,
                          std::span<const std::size_t> positions);

/// Every slice.
double mean_slice_dice(const VolumeDataset& a, const VolumeDataset& b);

/// Dice of the union of all voxels across the selected positions. Report-only statistic.
double pooled_dice_at(const VolumeDataset& a, const VolumeDataset& b,
                      std::span<const std::size_t> positions);

struct SliceDice {
    std::string slice_id;
    double dice = 1.0;
};

/// Per-slice records for every slice of two aligned datasets.
std::vector<SliceDice> per_slice_dice(const VolumeDataset& a, const VolumeDataset& b);

}  // namespace labelnoise
