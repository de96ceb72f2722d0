#include "labelnoise/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "labelnoise/dice.hpp"
#include "labelnoise/parallel.hpp"

namespace labelnoise {

double default_initial_upper(Mode mode) noexcept { return mode == Mode::random ? 0.5 : 16.0; }

double parameter_ceiling(Mode mode) noexcept {
    return mode == Mode::random ? 1.0 : std::numeric_limits<double>::infinity();
}

void CalibrationConfig::validate() const {
    if (!(target > 0.0 && target < 1.0)) {
        throw InvalidArgument("calibration target must lie strictly between 0 and 1");
    }
    if (!(tolerance > 0.0)) {
        throw InvalidArgument("calibration tolerance must be > 0");
    }
    if (sample_size < 1) {
        throw InvalidArgument("calibration sample size must be >= 1");
    }
    if (initial_upper && !(*initial_upper > 0.0 && std::isfinite(*initial_upper))) {
        throw InvalidArgument("initial upper bound must be finite and > 0");
    }
    if (mode == Mode::random && initial_upper && *initial_upper > 1.0) {
        throw InvalidArgument("random-mode initial upper bound must be <= 1");
    }
    if (spacing < 1) {
        throw InvalidArgument("contour spacing must be >= 1");
    }
}

double CalibrationConfig::upper_start() const { return initial_upper.value_or(default_initial_upper(mode)); }

std::vector<std::string> eligible_slices(const VolumeDataset& dataset) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        if (!dataset.slice(i).empty()) {
            ids.push_back(dataset.slice_ids()[i]);
        }
    }
    return ids;
}

std::vector<std::size_t> choose_sample(const VolumeDataset& dataset, std::size_t sample_size, SeedSpec seed) {
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        if (!dataset.slice(i).empty()) {
            eligible.push_back(i);
        }
    }
    if (sample_size < eligible.size()) {
        Stream stream(stream_seed(seed, 0, OpTag::calibration_sample));
        for (std::size_t i = 0; i < sample_size; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(stream.below(eligible.size() - i));
            std::swap(eligible[i], eligible[j]);
        }
        eligible.resize(sample_size);
        std::sort(eligible.begin(), eligible.end());
    }
    return eligible;
}

ObjectiveValue objective_stats(const VolumeDataset& dataset, const PerturbSpec& spec,
                               std::span<const std::size_t> sample, std::size_t workers) {
    if (sample.empty()) {
        throw EmptySampleError("calibration objective over an empty sample");
    }
    spec.validate();
    std::vector<DiceScore> scores(sample.size());
    parallel_for(
        sample.size(),
        [&](std::size_t k) {
            const Mask& original = dataset.slice(sample[k]);
            scores[k] = dice(original, perturb_slice(original, spec, sample[k]));
        },
        workers);
    double sum = 0.0;
    std::size_t intersection = 0;
    std::size_t total = 0;
    for (const auto& s : scores) {
        sum += s.value;
        intersection += s.intersection;
        total += s.size_a + s.size_b;
    }
    ObjectiveValue value;
    value.mean = sum / static_cast<double>(scores.size());
    value.pooled = total == 0 ? 1.0 : 2.0 * static_cast<double>(intersection) / static_cast<double>(total);
    return value;
}

double objective(const VolumeDataset& dataset, const PerturbSpec& spec, std::span<const std::size_t> sample,
                 std::size_t workers) {
    return objective_stats(dataset, spec, sample, workers).mean;
}

BisectionOutcome bisect_to_target(const std::function<double(double)>& f, const BisectionSettings& s) {
    auto within = [&](const BracketEnd& e) { return std::abs(e.dice - s.target) <= s.tolerance; };
    const double ceiling = s.ceiling > 0.0 ? s.ceiling : std::numeric_limits<double>::infinity();

    BisectionOutcome out;
    Bracket& b = out.bracket;
    b.lower = {0.0, f(0.0)};
    b.upper.parameter = std::min(s.initial_upper, ceiling);
    b.upper.dice = f(b.upper.parameter);
    while (b.upper.dice >= s.target - s.tolerance) {
        if (out.expansions == s.max_expansions || b.upper.parameter >= ceiling) {
            out.reachable = false;
            out.history.push_back(b);
            return out;
        }
        if (b.upper.dice > s.target) {
            b.lower = b.upper;
        }
        b.upper.parameter = std::min(2.0 * b.upper.parameter, ceiling);
        b.upper.dice = f(b.upper.parameter);
        ++out.expansions;
    }
    out.history.push_back(b);

    while (!(within(b.lower) && within(b.upper))) {
        if (out.iterations == s.max_iterations) {
            return out;
        }
        const double mid = 0.5 * (b.lower.parameter + b.upper.parameter);
        const BracketEnd probe{mid, f(mid)};
        if (probe.dice > s.target) {
            b.lower = probe;
        } else {
            b.upper = probe;
        }
        ++out.iterations;
        out.history.push_back(b);
    }
    out.converged = true;
    return out;
}

CalibrationResult calibrate(const VolumeDataset& dataset, const CalibrationConfig& cfg) {
    cfg.validate();
    const auto sample = choose_sample(dataset, cfg.sample_size, cfg.seed);
    if (sample.empty()) {
        throw EmptySampleError("dataset has no slice with foreground to calibrate on");
    }

    auto spec_at = [&](double parameter) {
        PerturbSpec spec;
        spec.mode = cfg.mode;
        spec.parameter = parameter;
        spec.spacing = cfg.spacing;
        spec.seed = cfg.seed;
        return spec;
    };
    auto f = [&](double parameter) { return objective(dataset, spec_at(parameter), sample, cfg.workers); };

    BisectionSettings settings;
    settings.target = cfg.target;
    settings.tolerance = cfg.tolerance;
    settings.initial_upper = cfg.upper_start();
    settings.ceiling = cfg.mode == Mode::random ? 1.0 : 0.0;
    settings.max_iterations = cfg.max_iterations;
    settings.max_expansions = cfg.max_expansions;
    BisectionOutcome outcome = bisect_to_target(f, settings);

    CalibrationResult result;
    result.mode = cfg.mode;
    result.target = cfg.target;
    result.tolerance = cfg.tolerance;
    result.lower = outcome.bracket.lower;
    result.upper = outcome.bracket.upper;
    result.iterations = outcome.iterations;
    result.expansions = outcome.expansions;
    result.seed = cfg.seed;
    result.spacing = cfg.spacing;
    result.converged = outcome.converged;
    result.history = std::move(outcome.history);
    for (const auto i : sample) {
        result.sample_slice_ids.push_back(dataset.slice_ids()[i]);
    }

    result.solved_parameter = 0.5 * (result.lower.parameter + result.upper.parameter);
    if (!outcome.reachable) {
        result.solved_parameter = result.upper.parameter;
    }
    const ObjectiveValue at_solution = objective_stats(dataset, spec_at(result.solved_parameter), sample, cfg.workers);
    result.achieved = at_solution.mean;
    result.pooled_achieved = at_solution.pooled;

    std::ostringstream msg;
    msg.precision(6);
    if (!outcome.reachable) {
        msg << to_string(cfg.mode) << " calibration: dice at parameter " << result.upper.parameter << " is "
            << result.upper.dice << ", never below target " << cfg.target << " - " << cfg.tolerance
            << " after " << outcome.expansions << " expansions";
        throw UnreachableTargetError(msg.str(), std::move(result));
    }
    if (!outcome.converged) {
        msg << to_string(cfg.mode) << " calibration did not converge in " << cfg.max_iterations
            << " iterations; bracket [" << result.lower.parameter << " (dice " << result.lower.dice << "), "
            << result.upper.parameter << " (dice " << result.upper.dice << ")]";
        throw NonConvergenceError(msg.str(), std::move(result));
    }
    return result;
}

}  // namespace labelnoise
