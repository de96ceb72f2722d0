#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "labelnoise/mask.hpp"
#include "labelnoise/rng.hpp"

namespace labelnoise {

enum class Mode { natural, choppy, random };

std::string_view to_string(Mode mode) noexcept;

/// Parses "natural" / "choppy" / "random"; throws InvalidArgument otherwise.
Mode parse_mode(std::string_view name);

inline constexpr std::size_t kDefaultSpacing = 10;

/**
 * @brief Fully determines a perturbation of a dataset.
 *
 * `parameter` is the standard deviation in pixels for natural and choppy
 * modes and the per-class flip fraction for random mode.
 */
struct PerturbSpec {
    Mode mode = Mode::natural;
    double parameter = 0.0;
    std::size_t spacing = kDefaultSpacing;
    SeedSpec seed;

    /// Throws InvalidArgument if any field is out of range.
    void validate() const;

    /// One-line description stored as dataset provenance.
    std::string describe() const;
};

/**
 * Boundary displacement. Every contour with at least three points gets
 * Gaussian offsets N(0, sigma^2) at its sampled anchor points (every
 * `spacing`-th contour point). The offsets are interpolated linearly along
 * the contour, each point is moved by its offset along the ray from the
 * contour centroid (positive = outwards) and rounded to the nearest pixel,
 * and the displaced contour is filled. Per-contour fills are combined by union; holes are not kept.
 */
Mask perturb_natural(const Mask& mask, double sigma, std::size_t spacing, Stream& stream);

/// Shifts both ends of every horizontal foreground run by round(N(0, sigma^2)).
Mask perturb_choppy(const Mask& mask, double sigma, Stream& stream);

/// Flips round(p*P) foreground and round(p*N) background pixels chosen uniformly.
Mask perturb_random(const Mask& mask, double fraction, Stream& stream);

/// Perturbs one slice using the stream owned by (spec.seed, slice_index, mode).
Mask perturb_slice(const Mask& mask, const PerturbSpec& spec, std::size_t slice_index);

/// Perturbs every slice; ids and dimensions are preserved.
VolumeDataset perturb_dataset(const VolumeDataset& dataset, const PerturbSpec& spec,
                              std::size_t workers = 0);

/// Inclusive column range of one foreground run.
struct RowRun {
    int start = 0;
    int end = 0;

    friend bool operator==(const RowRun&, const RowRun&) = default;
};

/// Maximal foreground runs of row `row`, left to right.
std::vector<RowRun> find_runs(const Mask& mask, int row);

/**
 * Applies (start shift, end shift) pairs to runs of a row of `width` pixels.
 * Runs with start > end after shifting vanish; the rest are clipped to the
 * row and merged where they overlap. Output is sorted and disjoint.
 */
std::vector<RowRun> shift_runs(std::span<const RowRun> runs, std::span<const std::pair<int, int>> shifts,
                            int width);

/// Rounds half away from zero to the nearest integer shift.
int round_shift(double value) noexcept;

}  // namespace labelnoise
