#include "labelnoise/report.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "labelnoise/calibrate.hpp"
#include "labelnoise/error.hpp"
#include "labelnoise/io.hpp"

namespace labelnoise {

std::vector<SweepRow> run_sweep(const VolumeDataset& dataset, Mode mode, std::span<const double> parameters,
                                std::size_t seeds, SeedSpec base, std::size_t spacing, std::size_t workers) {
    if (dataset.empty()) {
        throw EmptySampleError("sweep over an empty dataset");
    }
    std::vector<std::size_t> all(dataset.size());
    std::iota(all.begin(), all.end(), std::size_t{0});

    std::vector<SweepRow> rows;
    rows.reserve(parameters.size() * seeds);
    for (const double parameter : parameters) {
        for (std::size_t s = 0; s < seeds; ++s) {
            PerturbSpec spec;
            spec.mode = mode;
            spec.parameter = parameter;
            spec.spacing = spacing;
            spec.seed = {base.global_seed + s};
            rows.push_back({mode, parameter, spec.seed.global_seed, objective(dataset, spec, all, workers)});
        }
    }
    return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
    std::string out = "mode,parameter,seed,mean_dice\n";
    for (const auto& row : rows) {
        out += std::string(to_string(row.mode)) + "," + format_double(row.parameter) + "," +
               std::to_string(row.seed) + "," + format_double(row.mean_dice) + "\n";
    }
    return out;
}

namespace {

std::string fmt(const char* pattern, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, value);
    return buf;
}

}  // namespace

std::string sweep_svg(std::span<const SweepRow> rows) {
    constexpr double width = 640;
    constexpr double height = 480;
    constexpr double margin = 60;

    double x_max = 0.0;
    double y_min = 1.0;
    for (const auto& r : rows) {
        x_max = std::max(x_max, r.parameter);
        y_min = std::min(y_min, r.mean_dice);
    }
    if (x_max <= 0.0) {
        x_max = 1.0;
    }
    y_min = std::max(0.0, std::min(y_min - 0.01, 0.99));
    const double y_max = 1.0;
    auto px = [&](double x) { return margin + x / x_max * (width - 2 * margin); };
    auto py = [&](double y) { return height - margin - (y - y_min) / (y_max - y_min) * (height - 2 * margin); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n";
    svg += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    svg += "<line x1=\"60\" y1=\"420\" x2=\"580\" y2=\"420\" stroke=\"black\"/>\n";
    svg += "<line x1=\"60\" y1=\"60\" x2=\"60\" y2=\"420\" stroke=\"black\"/>\n";
    const std::string mode = rows.empty() ? "" : std::string(to_string(rows.front().mode));
    svg += "<text x=\"320\" y=\"460\" text-anchor=\"middle\" font-size=\"14\">" + mode + " parameter</text>\n";
    svg += "<text x=\"20\" y=\"240\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 20 240)\">"
           "mean dice</text>\n";
    for (int t = 0; t <= 4; ++t) {
        const double x = x_max * t / 4.0;
        const double y = y_min + (y_max - y_min) * t / 4.0;
        svg += "<text x=\"" + fmt("%.1f", px(x)) + "\" y=\"436\" text-anchor=\"middle\" font-size=\"11\">" +
               fmt("%g", x) + "</text>\n";
        svg += "<text x=\"54\" y=\"" + fmt("%.1f", py(y) + 4) + "\" text-anchor=\"end\" font-size=\"11\">" +
               fmt("%.3f", y) + "</text>\n";
    }
    for (const auto& r : rows) {
        svg += "<circle cx=\"" + fmt("%.2f", px(r.parameter)) + "\" cy=\"" + fmt("%.2f", py(r.mean_dice)) +
               "\" r=\"3\" fill=\"steelblue\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace labelnoise
