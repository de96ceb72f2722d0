#include "labelnoise/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "labelnoise/error.hpp"
#include "labelnoise/geometry.hpp"
#include "labelnoise/parallel.hpp"

namespace labelnoise {

std::string_view to_string(Mode mode) noexcept {
    switch (mode) {
        case Mode::natural:
            return "natural";
        case Mode::choppy:
            return "choppy";
        case Mode::random:
            return "random";
    }
    return "unknown";
}

Mode parse_mode(std::string_view name) {
    if (name == "natural") {
        return Mode::natural;
    }
    if (name == "choppy") {
        return Mode::choppy;
    }
    if (name == "random") {
        return Mode::random;
    }
    throw InvalidArgument("unknown perturbation mode '" + std::string(name) +
                          "' (expected natural, choppy or random)");
}

void PerturbSpec::validate() const {
    if (!std::isfinite(parameter) || parameter < 0.0) {
        throw InvalidArgument("perturbation parameter must be finite and >= 0");
    }
    if (mode == Mode::random && parameter > 1.0) {
        throw InvalidArgument("random-mode flip fraction must be <= 1");
    }
    if (spacing < 1) {
        throw InvalidArgument("contour spacing must be >= 1");
    }
}

std::string PerturbSpec::describe() const {
    std::ostringstream out;
    out.precision(17);
    out << "mode=" << to_string(mode) << " parameter=" << parameter;
    if (mode == Mode::natural) {
        out << " spacing=" << spacing;
    }
    out << " seed=" << seed.global_seed;
    return out.str();
}

int round_shift(double value) noexcept { return static_cast<int>(std::round(value)); }

namespace {

OpTag tag_for(Mode mode) {
    switch (mode) {
        case Mode::natural:
            return OpTag::perturb_natural;
        case Mode::choppy:
            return OpTag::perturb_choppy;
        case Mode::random:
            return OpTag::perturb_random;
    }
    return OpTag::perturb_natural;
}

Polygon displace(const Contour& contour, double sigma, std::size_t spacing, Stream& stream) {
    const auto& points = contour.points;
    const std::size_t n = points.size();
    const auto anchors = sample_indices(n, spacing);
    std::vector<double> anchor_offsets(anchors.size());
    for (auto& o : anchor_offsets) {
        o = sigma * stream.normal();
    }

    const PointF center = centroid(contour);
    Polygon polygon;
    polygon.vertices.reserve(n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k + 1 < anchors.size() && anchors[k + 1] <= i) {
            ++k;
        }
        const std::size_t from = anchors[k];
        const std::size_t to = k + 1 < anchors.size() ? anchors[k + 1] : n;
        const double next_offset = k + 1 < anchors.size() ? anchor_offsets[k + 1] : anchor_offsets[0];
        const double t = static_cast<double>(i - from) / static_cast<double>(to - from);
        const double offset = (1.0 - t) * anchor_offsets[k] + t * next_offset;

        const double row = points[i].row;
        const double col = points[i].col;
        const double dr = row - center.row;
        const double dc = col - center.col;
        const double dist = std::hypot(dr, dc);
        // Displaced points are snapped to the pixel lattice.
        if (dist == 0.0) {
            polygon.vertices.push_back({row, col});
        } else {
            polygon.vertices.push_back({std::round(row + offset * dr / dist), std::round(col + offset * dc / dist)});
        }
    }
    return polygon;
}

// Partial Fisher-Yates: the first `k` entries become a uniform draw without replacement.
void choose_prefix(std::vector<std::size_t>& items, std::size_t k, Stream& stream) {
    const std::size_t n = items.size();
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(stream.below(n - i));
        std::swap(items[i], items[j]);
    }
}

std::size_t round_count(double fraction, std::size_t count) {
    return static_cast<std::size_t>(std::llround(fraction * static_cast<double>(count)));
}

}  // namespace

Mask perturb_natural(const Mask& mask, double sigma, std::size_t spacing, Stream& stream) {
    if (!(sigma >= 0.0) || spacing < 1) {
        throw InvalidArgument("natural perturbation needs sigma >= 0 and spacing >= 1");
    }
    Mask out(mask.width(), mask.height());
    for (const auto& contour : extract_contours(mask)) {
        if (contour.points.size() < 3) {
            for (const auto& p : contour.points) {
                out.set(p.row, p.col, true);
            }
            continue;
        }
        fill_polygon_into(displace(contour, sigma, spacing, stream), out);
    }
    return out;
}

std::vector<RowRun> find_runs(const Mask& mask, int row) {
    std::vector<RowRun> runs;
    const int w = mask.width();
    int c = 0;
    while (c < w) {
        if (!mask.at(row, c)) {
            ++c;
            continue;
        }
        const int start = c;
        while (c < w && mask.at(row, c)) {
            ++c;
        }
        runs.push_back({start, c - 1});
    }
    return runs;
}

std::vector<RowRun> shift_runs(std::span<const RowRun> runs, std::span<const std::pair<int, int>> shifts,
                            int width) {
    if (runs.size() != shifts.size()) {
        throw InvalidArgument("shift_runs needs one shift pair per run");
    }
    std::vector<RowRun> shifted;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        RowRun r{runs[i].start + shifts[i].first, runs[i].end + shifts[i].second};
        r.start = std::max(r.start, 0);
        r.end = std::min(r.end, width - 1);
        if (r.start <= r.end) {
            shifted.push_back(r);
        }
    }
    std::sort(shifted.begin(), shifted.end(), [](const RowRun& a, const RowRun& b) { return a.start < b.start; });
    std::vector<RowRun> merged;
    for (const auto& r : shifted) {
        if (!merged.empty() && r.start <= merged.back().end + 1) {
            merged.back().end = std::max(merged.back().end, r.end);
        } else {
            merged.push_back(r);
        }
    }
    return merged;
}

Mask perturb_choppy(const Mask& mask, double sigma, Stream& stream) {
    if (!(sigma >= 0.0)) {
        throw InvalidArgument("choppy perturbation needs sigma >= 0");
    }
    Mask out(mask.width(), mask.height());
    std::vector<std::pair<int, int>> shifts;
    for (int row = 0; row < mask.height(); ++row) {
        const auto runs = find_runs(mask, row);
        shifts.clear();
        for (std::size_t i = 0; i < runs.size(); ++i) {
            const int start_shift = round_shift(sigma * stream.normal());
            const int end_shift = round_shift(sigma * stream.normal());
            shifts.emplace_back(start_shift, end_shift);
        }
        for (const auto& r : shift_runs(runs, shifts, mask.width())) {
            for (int c = r.start; c <= r.end; ++c) {
                out.set(row, c, true);
            }
        }
    }
    return out;
}

Mask perturb_random(const Mask& mask, double fraction, Stream& stream) {
    if (!(fraction >= 0.0 && fraction <= 1.0)) {
        throw InvalidArgument("random perturbation fraction must lie in [0, 1]");
    }
    std::vector<std::size_t> foreground;
    std::vector<std::size_t> background;
    foreground.reserve(mask.foreground_count());
    background.reserve(mask.size() - foreground.capacity());
    for (std::size_t i = 0; i < mask.size(); ++i) {
        (mask.flat(i) ? foreground : background).push_back(i);
    }
    const std::size_t flip_fg = round_count(fraction, foreground.size());
    const std::size_t flip_bg = round_count(fraction, background.size());
    choose_prefix(foreground, flip_fg, stream);
    choose_prefix(background, flip_bg, stream);

    Mask out = mask;
    for (std::size_t i = 0; i < flip_fg; ++i) {
        out.flip_flat(foreground[i]);
    }
    for (std::size_t i = 0; i < flip_bg; ++i) {
        out.flip_flat(background[i]);
    }
    return out;
}

Mask perturb_slice(const Mask& mask, const PerturbSpec& spec, std::size_t slice_index) {
    spec.validate();
    Stream stream(stream_seed(spec.seed, slice_index, tag_for(spec.mode)));
    switch (spec.mode) {
        case Mode::natural:
            return perturb_natural(mask, spec.parameter, spec.spacing, stream);
        case Mode::choppy:
            return perturb_choppy(mask, spec.parameter, stream);
        case Mode::random:
            return perturb_random(mask, spec.parameter, stream);
    }
    return mask;
}

VolumeDataset perturb_dataset(const VolumeDataset& dataset, const PerturbSpec& spec, std::size_t workers) {
    spec.validate();
    std::vector<Mask> out(dataset.size(), Mask(std::max(dataset.width(), 1), std::max(dataset.height(), 1)));
    parallel_for(
        dataset.size(), [&](std::size_t i) { out[i] = perturb_slice(dataset.slice(i), spec, i); }, workers);
    return VolumeDataset(std::move(out), dataset.slice_ids());
}

}  // namespace labelnoise
