#pragma once

#include <cstddef>
#include <string_view>

#include "labelnoise/geometry.hpp"
#include "labelnoise/mask.hpp"
#include "labelnoise/rng.hpp"

namespace labelnoise {

enum class ShapeKind { circle, blob };

/// Parses "circle" / "blob"; throws InvalidArgument otherwise.
ShapeKind parse_shape_kind(std::string_view name);

struct ShapeSpec {
    ShapeKind kind = ShapeKind::circle;
    int size = 512;
    double radius = 100.0;
    /// Maximum relative deviation of the blob radius from `radius`, in [0, 1).
    double irregularity = 0.2;
    SeedSpec seed;
    std::size_t count = 1;

    /// Throws BoundsError for geometry that does not fit, InvalidArgument otherwise.
    void validate() const;
};

/// Closed disk: (r - cr)^2 + (c - cc)^2 <= radius^2. Throws BoundsError if it leaves the image.
Mask make_circle(int size, double radius, PointF center);

/**
 * Star-convex blob centred in the image. The boundary radius is
 *   radius * (1 + irregularity * sum_k a_k cos(k*theta + phi_k) / sum_k 1/k)
 * over harmonics k = 2..5 with |a_k| <= 1/k, so it never deviates from
 * `radius` by more than irregularity * radius. With irregularity 0 the
 * result equals make_circle at the image centre.
 */
Mask make_blob(const ShapeSpec& spec, std::size_t slice_index);

/// `count` slices with ids slice_0000, slice_0001, ...
VolumeDataset make_dataset(const ShapeSpec& spec);

}  // namespace labelnoise
