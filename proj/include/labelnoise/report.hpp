#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "labelnoise/mask.hpp"
#include "labelnoise/perturb.hpp"

namespace labelnoise {

struct SweepRow {
    Mode mode = Mode::natural;
    double parameter = 0.0;
    std::uint64_t seed = 0;
    double mean_dice = 1.0;
};

/// Dataset mean dice for every parameter x seed; seeds are base, base+1, ..., base+seeds-1.
std::vector<SweepRow> run_sweep(const VolumeDataset& dataset, Mode mode, std::span<const double> parameters,
                                std::size_t seeds, SeedSpec base, std::size_t spacing = kDefaultSpacing,
                                std::size_t workers = 0);

/// Columns mode,parameter,seed,mean_dice.
std::string sweep_csv(std::span<const SweepRow> rows);

/// Self-contained SVG scatter of mean dice (y) against parameter (x).
std::string sweep_svg(std::span<const SweepRow> rows);

}  // namespace labelnoise
