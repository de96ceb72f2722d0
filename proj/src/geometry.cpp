#include "labelnoise/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "labelnoise/error.hpp"

namespace labelnoise {

namespace {

// Clockwise as seen on screen, starting west.
constexpr std::array<Pixel, 8> kNeighbours{{
    {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}, {0, 1}, {1, 1}, {1, 0}, {1, -1},
}};

int direction_of(int drow, int dcol) {
    for (int d = 0; d < 8; ++d) {
        if (kNeighbours[d].row == drow && kNeighbours[d].col == dcol) {
            return d;
        }
    }
    throw std::logic_error("backtrack pixel is not an 8-neighbour");
}

Pixel step(Pixel p, int d) { return {p.row + kNeighbours[d].row, p.col + kNeighbours[d].col}; }

struct Move {
    Pixel next;
    int backtrack;  // direction of the backtrack pixel as seen from `next`
};

// One Moore-neighbour step: scan clockwise around `p` starting after the backtrack.
bool moore_step(const Mask& mask, Pixel p, int backtrack, Move& move) {
    for (int k = 1; k <= 8; ++k) {
        const int d = (backtrack + k) % 8;
        const Pixel q = step(p, d);
        if (mask.at_or_background(q.row, q.col)) {
            const Pixel prev = step(p, (d + 7) % 8);
            move.next = q;
            move.backtrack = direction_of(prev.row - q.row, prev.col - q.col);
            return true;
        }
    }
    return false;
}

Contour trace_from(const Mask& mask, Pixel start) {
    Contour contour;
    contour.points.push_back(start);

    Move first;
    if (!moore_step(mask, start, 0, first)) {
        return contour;
    }
    const Pixel start_backtrack = step(start, 0);

    // Every boundary pixel is visited at most 4 times.
    const std::size_t limit = 4 * mask.size() + 8;
    Pixel p = first.next;
    int backtrack = first.backtrack;
    contour.points.push_back(p);
    for (std::size_t steps = 0; steps < limit; ++steps) {
        Move move;
        moore_step(mask, p, backtrack, move);
        // Jacob's criterion: start re-entered from its initial backtrack.
        const Pixel prev = step(move.next, move.backtrack);
        if (move.next == start && prev == start_backtrack) {
            return contour;
        }
        // The walk out of the start pixel is about to repeat.
        if (p == start && move.next == first.next && move.backtrack == first.backtrack) {
            contour.points.pop_back();
            return contour;
        }
        p = move.next;
        backtrack = move.backtrack;
        contour.points.push_back(p);
    }
    throw std::logic_error("contour tracing did not terminate");
}

}  // namespace

std::vector<Contour> extract_contours(const Mask& mask) {
    std::vector<Contour> contours;
    std::vector<std::uint8_t> labelled(mask.size(), 0);
    std::vector<Pixel> frontier;
    const int w = mask.width();
    const int h = mask.height();

    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const std::size_t i = mask.index(r, c);
            if (!mask.flat(i) || labelled[i]) {
                continue;
            }
            labelled[i] = 1;
            frontier.assign(1, Pixel{r, c});
            while (!frontier.empty()) {
                const Pixel p = frontier.back();
                frontier.pop_back();
                for (int d = 0; d < 8; ++d) {
                    const Pixel q = step(p, d);
                    if (mask.at_or_background(q.row, q.col)) {
                        const std::size_t j = mask.index(q.row, q.col);
                        if (!labelled[j]) {
                            labelled[j] = 1;
                            frontier.push_back(q);
                        }
                    }
                }
            }
            contours.push_back(trace_from(mask, Pixel{r, c}));
        }
    }
    return contours;
}

PointF centroid(const Contour& contour) {
    if (contour.points.empty()) {
        throw InvalidArgument("centroid of an empty contour");
    }
    double rows = 0.0;
    double cols = 0.0;
    for (const auto& p : contour.points) {
        rows += p.row;
        cols += p.col;
    }
    const auto n = static_cast<double>(contour.points.size());
    return {rows / n, cols / n};
}

std::vector<std::size_t> sample_indices(std::size_t n, std::size_t spacing) {
    if (spacing < 1) {
        throw InvalidArgument("contour sampling spacing must be >= 1");
    }
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < n; i += spacing) {
        indices.push_back(i);
    }
    if (n >= 3 && indices.size() < 3) {
        indices = {0, n / 3, 2 * n / 3};
    }
    return indices;
}

Polygon sample_contour(const Contour& contour, std::size_t spacing) {
    Polygon polygon;
    for (const auto i : sample_indices(contour.points.size(), spacing)) {
        const auto& p = contour.points[i];
        polygon.vertices.push_back({static_cast<double>(p.row), static_cast<double>(p.col)});
    }
    return polygon;
}

namespace {

bool is_integral(double v) { return std::floor(v) == v; }

void mark(Mask& target, double row, double col) {
    if (is_integral(row) && is_integral(col) && row >= 0 && col >= 0 && row < target.height() &&
        col < target.width()) {
        target.set(static_cast<int>(row), static_cast<int>(col), true);
    }
}

void mark_span(Mask& target, int row, double from, double to) {
    if (row < 0 || row >= target.height()) {
        return;
    }
    const double lo = std::max(std::ceil(from), 0.0);
    const double hi = std::min(std::floor(to), static_cast<double>(target.width() - 1));
    for (auto c = static_cast<int>(lo); c <= static_cast<int>(hi) && lo <= hi; ++c) {
        target.set(row, c, true);
    }
}

// Pixel centres lying exactly on segment a-b.
void mark_edge(Mask& target, PointF a, PointF b) {
    if (a == b) {
        mark(target, a.row, a.col);
        return;
    }
    if (a.row == b.row) {
        if (is_integral(a.row)) {
            mark_span(target, static_cast<int>(a.row), std::min(a.col, b.col), std::max(a.col, b.col));
        }
        return;
    }
    const double r_lo = std::max(std::ceil(std::min(a.row, b.row)), 0.0);
    const double r_hi = std::min(std::floor(std::max(a.row, b.row)), static_cast<double>(target.height() - 1));
    for (double r = r_lo; r <= r_hi; r += 1.0) {
        const double c = a.col + (r - a.row) * (b.col - a.col) / (b.row - a.row);
        mark(target, r, c);
    }
}

}  // namespace

void fill_polygon_into(const Polygon& polygon, Mask& target) {
    const auto& v = polygon.vertices;
    if (v.empty()) {
        return;
    }
    const double max_row = target.height() - 1;

    // (row, col) crossings of every pixel-centre row with the polygon edges,
    // using the half-open rule ymin <= y < ymax.
    std::vector<std::pair<int, double>> crossings;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const PointF a = v[i];
        const PointF b = v[(i + 1) % v.size()];
        mark_edge(target, a, b);
        if (a.row == b.row) {
            continue;
        }
        const PointF& lo = a.row < b.row ? a : b;
        const PointF& hi = a.row < b.row ? b : a;
        const double first = std::max(std::ceil(lo.row), 0.0);
        // Rows below the image still matter for parity only within the image; clip.
        for (double r = first; r < hi.row && r <= max_row; r += 1.0) {
            const double c = a.col + (r - a.row) * (b.col - a.col) / (b.row - a.row);
            crossings.emplace_back(static_cast<int>(r), c);
        }
    }
    std::sort(crossings.begin(), crossings.end());
    for (std::size_t i = 0; i + 1 < crossings.size(); i += 2) {
        // The half-open rule gives an even number of crossings on each row.
        mark_span(target, crossings[i].first, crossings[i].second, crossings[i + 1].second);
    }
}

Mask fill_polygon(const Polygon& polygon, int width, int height) {
    Mask out(width, height);
    fill_polygon_into(polygon, out);
    return out;
}

}  // namespace labelnoise
