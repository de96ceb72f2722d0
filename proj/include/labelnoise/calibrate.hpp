#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "labelnoise/error.hpp"
#include "labelnoise/mask.hpp"
#include "labelnoise/perturb.hpp"
#include "labelnoise/rng.hpp"

namespace labelnoise {

struct CalibrationConfig {
    Mode mode = Mode::natural;
    double target = 0.9;
    double tolerance = 0.005;
    std::size_t sample_size = 1000;
    SeedSpec seed;
    /// Defaults to default_initial_upper(mode) when unset.
    std::optional<double> initial_upper;
    std::size_t max_iterations = 60;
    std::size_t max_expansions = 8;
    std::size_t spacing = kDefaultSpacing;
    std::size_t workers = 0;

    void validate() const;
    double upper_start() const;
};

/// 16 px for natural/choppy sigma, 0.5 for the random flip fraction.
double default_initial_upper(Mode mode) noexcept;

/// Largest admissible parameter for the mode (1 for random, unbounded otherwise).
double parameter_ceiling(Mode mode) noexcept;

struct BracketEnd {
    double parameter = 0.0;
    double dice = 1.0;
};

struct Bracket {
    BracketEnd lower;
    BracketEnd upper;
};

struct CalibrationResult {
    Mode mode = Mode::natural;
    double solved_parameter = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
    double achieved = 1.0;
    /// Voxel-pooled dice at the solved parameter; reported, never optimised.
    double pooled_achieved = 1.0;
    BracketEnd lower;
    BracketEnd upper;
    std::size_t iterations = 0;
    std::size_t expansions = 0;
    std::vector<std::string> sample_slice_ids;
    SeedSpec seed;
    std::size_t spacing = kDefaultSpacing;
    bool converged = false;
    /// Bracket after expansion and after every bisection step.
    std::vector<Bracket> history;
};

/// Raised when calibration stops without meeting the terminal condition.
class CalibrationError : public Error {
public:
    CalibrationError(const std::string& what, CalibrationResult partial)
        : Error(what), partial_(std::move(partial)) {}

    /// Best bracket found, with converged == false.
    const CalibrationResult& partial() const noexcept { return partial_; }

private:
    CalibrationResult partial_;
};

/// The objective never fell below target - tolerance within the expansion budget.
class UnreachableTargetError : public CalibrationError {
public:
    using CalibrationError::CalibrationError;
};

/// max_iterations elapsed before both bracket ends were within tolerance.
class NonConvergenceError : public CalibrationError {
public:
    using CalibrationError::CalibrationError;
};

/// Ids of slices containing at least one foreground pixel.
std::vector<std::string> eligible_slices(const VolumeDataset& dataset);

/// Sorted positions of up to `sample_size` eligible slices, drawn without replacement.
std::vector<std::size_t> choose_sample(const VolumeDataset& dataset, std::size_t sample_size, SeedSpec seed);

struct ObjectiveValue {
    double mean = 1.0;
    double pooled = 1.0;
};

/// Per-slice mean and voxel-pooled dice of the sample under `spec`.
ObjectiveValue objective_stats(const VolumeDataset& dataset, const PerturbSpec& spec,
                               std::span<const std::size_t> sample, std::size_t workers = 0);

/**
 * Mean per-slice dice between the sampled originals and their perturbation
 * under `spec`. Slice streams are keyed by dataset position, so the value
 * matches perturb_dataset restricted to the sample.
 */
double objective(const VolumeDataset& dataset, const PerturbSpec& spec, std::span<const std::size_t> sample,
                 std::size_t workers = 0);

struct BisectionSettings {
    double target = 0.9;
    double tolerance = 0.005;
    double initial_upper = 1.0;
    double ceiling = 0.0;  // 0 = no ceiling
    std::size_t max_iterations = 60;
    std::size_t max_expansions = 8;
};

struct BisectionOutcome {
    Bracket bracket;
    std::size_t iterations = 0;
    std::size_t expansions = 0;
    bool converged = false;
    bool reachable = true;
    std::vector<Bracket> history;
};

/**
 * Brackets and bisects a non-increasing objective f(parameter), f(0) ~ 1.
 *
 * The upper bound doubles (up to max_expansions times, never past the
 * ceiling) until f(upper) < target - tolerance. Bisection then runs until
 * both bracket ends score within tolerance of the target.
 */
BisectionOutcome bisect_to_target(const std::function<double(double)>& f, const BisectionSettings& settings);

/// Solves for the parameter that brings the sampled mean dice to cfg.target.
CalibrationResult calibrate(const VolumeDataset& dataset, const CalibrationConfig& cfg);

}  // namespace labelnoise
