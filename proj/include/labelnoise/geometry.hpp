#pragma once

#include <cstddef>
#include <vector>

#include "labelnoise/mask.hpp"

namespace labelnoise {

struct PointF {
    double row = 0.0;
    double col = 0.0;

    friend bool operator==(const PointF&, const PointF&) = default;
};

/**
 * @brief Closed outer boundary of one 8-connected foreground component.
 *
 * Points are in clockwise visiting order (rows grow downwards) and start at
 * the component's topmost-leftmost pixel. Consecutive points, including the
 * last-to-first pair, are 8-neighbours. Thin parts of a component are
 * visited twice, once in each direction.
 */
struct Contour {
    std::vector<Pixel> points;
};

/// Closed loop of real-valued vertices in (row, col) order.
struct Polygon {
    std::vector<PointF> vertices;
};

/**
 * Traces the outer boundary of every 8-connected foreground component with
 * Moore-neighbour tracing. Holes are not reported. Contours are returned in
 * raster order of each component's topmost-leftmost pixel.
 */
std::vector<Contour> extract_contours(const Mask& mask);

/// Arithmetic mean of the contour points. Contour must be non-empty.
PointF centroid(const Contour& contour);

/**
 * Indices kept when sampling `n` contour points every `spacing` points.
 *
 * Always starts at 0. When the plain stride would give fewer than three
 * vertices but n >= 3, the indices 0, n/3, 2n/3 are used instead.
 */
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t spacing);

Polygon sample_contour(const Contour& contour, std::size_t spacing);

/**
 * Scanline even-odd fill of `polygon`, sampled at pixel centres.
 *
 * A pixel is set when its centre lies strictly inside the polygon under the
 * even-odd rule or exactly on one of its edges. Vertices may lie outside the
 * image; the result is clipped.
 */
Mask fill_polygon(const Polygon& polygon, int width, int height);

/// Same as fill_polygon but ORs the result into `target`.
void fill_polygon_into(const Polygon& polygon, Mask& target);

}  // namespace labelnoise
