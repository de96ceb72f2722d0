#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "labelnoise/calibrate.hpp"
#include "labelnoise/dice.hpp"
#include "labelnoise/synthgen.hpp"
#include "oracles.hpp"

namespace labelnoise {
namespace {

VolumeDataset small_blobs(std::size_t count, std::uint64_t seed = 4) {
    ShapeSpec spec;
    spec.kind = ShapeKind::blob;
    spec.size = 128;
    spec.radius = 30;
    spec.irregularity = 0.2;
    spec.count = count;
    spec.seed = {seed};
    return make_dataset(spec);
}

VolumeDataset small_circles(std::size_t count) {
    ShapeSpec spec;
    spec.kind = ShapeKind::circle;
    spec.size = 128;
    spec.radius = 30;
    spec.count = count;
    return make_dataset(spec);
}

std::vector<std::size_t> all_positions(const VolumeDataset& ds) {
    std::vector<std::size_t> p(ds.size());
    std::iota(p.begin(), p.end(), std::size_t{0});
    return p;
}

TEST(EligibleSlicesTest, Cases) {
    const VolumeDataset empty({Mask(8, 8), Mask(8, 8)}, {"a", "b"});
    EXPECT_TRUE(eligible_slices(empty).empty());

    Mask dot(8, 8);
    dot.set(1, 1, true);
    const VolumeDataset mixed({dot, Mask(8, 8), dot, Mask(8, 8), dot}, {"0", "1", "2", "3", "4"});
    EXPECT_EQ(eligible_slices(mixed), (std::vector<std::string>{"0", "2", "4"}));

    ShapeSpec spec;
    spec.kind = ShapeKind::blob;
    spec.size = 32;
    spec.radius = 8;
    spec.count = 1000;
    spec.seed = {1};
    EXPECT_EQ(eligible_slices(make_dataset(spec)).size(), 1000u);
}

TEST(ChooseSampleTest, CappedSortedUniqueAndDeterministic) {
    const auto ds = small_blobs(30);
    EXPECT_EQ(choose_sample(ds, 1000, {1}).size(), 30u);
    const auto a = choose_sample(ds, 10, {1});
    ASSERT_EQ(a.size(), 10u);
    EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
    EXPECT_EQ(std::set<std::size_t>(a.begin(), a.end()).size(), 10u);
    EXPECT_EQ(a, choose_sample(ds, 10, {1}));
    EXPECT_NE(a, choose_sample(ds, 10, {2}));
}

TEST(ObjectiveTest, ZeroParameterAndEmptySample) {
    const auto ds = small_blobs(5);
    const auto all = all_positions(ds);
    for (Mode mode : {Mode::natural, Mode::choppy, Mode::random}) {
        PerturbSpec spec;
        spec.mode = mode;
        EXPECT_EQ(objective(ds, spec, all), 1.0);
    }
    EXPECT_THROW(objective(ds, PerturbSpec{}, std::vector<std::size_t>{}), EmptySampleError);
}

TEST(ObjectiveTest, RandomModeMatchesClosedForm) {
    const auto ds = small_blobs(6);
    PerturbSpec spec;
    spec.mode = Mode::random;
    spec.parameter = 0.05;
    spec.seed = {9};
    double expected = 0.0;
    for (const auto& m : ds.slices()) {
        const std::size_t P = m.foreground_count();
        const std::size_t N = m.size() - P;
        expected += oracle::random_flip_dice(P, static_cast<std::size_t>(std::llround(0.05 * P)),
                                             static_cast<std::size_t>(std::llround(0.05 * N)));
    }
    EXPECT_DOUBLE_EQ(objective(ds, spec, all_positions(ds)), expected / 6.0);
}

TEST(ObjectiveTest, AgreesWithPerturbDatasetOnSample) {
    const auto ds = small_blobs(12);
    const std::vector<std::size_t> sample{1, 4, 7, 11};
    PerturbSpec spec;
    spec.mode = Mode::natural;
    spec.parameter = 2.5;
    spec.seed = {31};
    const auto perturbed = perturb_dataset(ds, spec);
    EXPECT_DOUBLE_EQ(objective(ds, spec, sample), mean_slice_dice_at(ds, perturbed, sample));
    const ObjectiveValue both = objective_stats(ds, spec, sample);
    EXPECT_DOUBLE_EQ(both.pooled, pooled_dice_at(ds, perturbed, sample));
}

TEST(ObjectiveTest, LargerSigmaLowersObjectiveOnAverage) {
    const auto ds = small_circles(3);
    const auto all = all_positions(ds);
    for (Mode mode : {Mode::natural, Mode::choppy}) {
        double low = 0.0;
        double high = 0.0;
        for (std::uint64_t s = 0; s < 40; ++s) {
            PerturbSpec spec;
            spec.mode = mode;
            spec.seed = {s};
            spec.parameter = 2.0;
            low += objective(ds, spec, all);
            spec.parameter = 3.0;
            high += objective(ds, spec, all);
        }
        EXPECT_LT(high, low) << to_string(mode);
    }
}

// ---- bisection on analytic objectives ----

TEST(BisectTest, ConvergesWithTerminalConditionAndHalvingBrackets) {
    BisectionSettings s;
    s.target = 0.9;
    s.tolerance = 0.005;
    s.initial_upper = 0.25;
    int calls = 0;
    const auto f = [&](double x) {
        ++calls;
        return std::exp(-x);
    };
    const BisectionOutcome out = bisect_to_target(f, s);
    ASSERT_TRUE(out.converged);
    EXPECT_LE(std::abs(out.bracket.lower.dice - 0.9), 0.005);
    EXPECT_LE(std::abs(out.bracket.upper.dice - 0.9), 0.005);
    const double root = -std::log(0.9);
    EXPECT_LE(out.bracket.lower.parameter, root);
    EXPECT_GE(out.bracket.upper.parameter, root);
    EXPECT_EQ(out.expansions, 0u);  // exp(-0.25) = 0.78 is already below the band
    for (std::size_t i = 1; i < out.history.size(); ++i) {
        const double prev = out.history[i - 1].upper.parameter - out.history[i - 1].lower.parameter;
        const double now = out.history[i].upper.parameter - out.history[i].lower.parameter;
        EXPECT_DOUBLE_EQ(now, prev / 2.0);
    }
    EXPECT_EQ(static_cast<std::size_t>(calls), 2 + out.iterations);
}

TEST(BisectTest, ExpandsGeometrically) {
    BisectionSettings s;
    s.target = 0.5;
    s.initial_upper = 1.0;
    const BisectionOutcome out = bisect_to_target([](double x) { return 1.0 / (1.0 + 0.01 * x); }, s);
    ASSERT_TRUE(out.converged);
    // 1/(1+0.01x) < 0.495 first at x = 128 = 2^7.
    EXPECT_EQ(out.expansions, 7u);
}

TEST(BisectTest, UnreachableAndNonConvergent) {
    BisectionSettings s;
    s.target = 0.9;
    s.initial_upper = 1.0;
    s.max_expansions = 3;
    const BisectionOutcome flat = bisect_to_target([](double) { return 1.0; }, s);
    EXPECT_FALSE(flat.reachable);
    EXPECT_FALSE(flat.converged);
    EXPECT_EQ(flat.expansions, 3u);

    // A jump straddling the whole band can never satisfy the terminal condition.
    const BisectionOutcome step = bisect_to_target([](double x) { return x < 0.3 ? 0.99 : 0.5; }, s);
    EXPECT_TRUE(step.reachable);
    EXPECT_FALSE(step.converged);
    EXPECT_EQ(step.iterations, s.max_iterations);

    s.ceiling = 1.0;
    s.max_expansions = 8;
    const BisectionOutcome capped = bisect_to_target([](double) { return 0.95; }, s);
    EXPECT_FALSE(capped.reachable);
    EXPECT_EQ(capped.bracket.upper.parameter, 1.0);
}

// ---- calibrate ----

TEST(CalibrateTest, RandomModeMatchesAnalyticInversion) {
    const auto ds = small_circles(10);
    CalibrationConfig cfg;
    cfg.mode = Mode::random;
    cfg.target = 0.90;
    cfg.seed = {5};
    const CalibrationResult r = calibrate(ds, cfg);
    ASSERT_TRUE(r.converged);

    const double P = static_cast<double>(ds.slice(0).foreground_count());
    const double N = static_cast<double>(ds.slice(0).size()) - P;
    const auto closed = [&](double p) { return 2.0 * P * (1.0 - p) / (P + P * (1.0 - p) + p * N); };
    const double analytic = 2.0 * P * (1.0 - 0.9) / (2.0 * P + 0.9 * (N - P));
    const double slope = std::abs(closed(analytic + 1e-6) - closed(analytic - 1e-6)) / 2e-6;
    EXPECT_NEAR(r.solved_parameter, analytic, 0.005 / slope);
    EXPECT_NEAR(r.achieved, 0.90, 0.005);
    EXPECT_LE(r.lower.parameter, r.solved_parameter);
    EXPECT_GE(r.upper.parameter, r.solved_parameter);
}

TEST(CalibrateTest, AllModesHitTargetsOnSmallBlobs) {
    const auto ds = small_blobs(16);
    for (Mode mode : {Mode::natural, Mode::choppy, Mode::random}) {
        for (double target : {0.95, 0.90}) {
            CalibrationConfig cfg;
            cfg.mode = mode;
            cfg.target = target;
            cfg.seed = {17};
            const CalibrationResult r = calibrate(ds, cfg);
            EXPECT_TRUE(r.converged);
            EXPECT_LE(std::abs(r.lower.dice - target), cfg.tolerance) << to_string(mode) << " " << target;
            EXPECT_LE(std::abs(r.upper.dice - target), cfg.tolerance) << to_string(mode) << " " << target;
            EXPECT_NEAR(r.achieved, target, 0.0075) << to_string(mode);
        }
    }
}

TEST(CalibrateTest, RecordedBracketReproducesWithSameSeedAndSample) {
    const auto ds = small_blobs(20);
    CalibrationConfig cfg;
    cfg.mode = Mode::choppy;
    cfg.target = 0.92;
    cfg.sample_size = 8;
    cfg.seed = {99};
    const CalibrationResult r = calibrate(ds, cfg);
    ASSERT_EQ(r.sample_slice_ids.size(), 8u);

    std::vector<std::size_t> sample;
    for (const auto& id : r.sample_slice_ids) {
        sample.push_back(ds.index_of(id));
    }
    PerturbSpec spec;
    spec.mode = Mode::choppy;
    spec.seed = cfg.seed;
    for (const auto& b : r.history) {
        spec.parameter = b.lower.parameter;
        EXPECT_EQ(objective(ds, spec, sample), b.lower.dice);
        spec.parameter = b.upper.parameter;
        EXPECT_EQ(objective(ds, spec, sample), b.upper.dice);
    }
    spec.parameter = r.solved_parameter;
    EXPECT_EQ(objective(ds, spec, sample), r.achieved);
}

TEST(CalibrateTest, BitReproducibleAcrossRunsAndWorkerCounts) {
    const auto ds = small_blobs(10);
    CalibrationConfig cfg;
    cfg.mode = Mode::natural;
    cfg.target = 0.93;
    cfg.seed = {3};
    cfg.workers = 1;
    const CalibrationResult a = calibrate(ds, cfg);
    cfg.workers = 3;
    const CalibrationResult b = calibrate(ds, cfg);
    EXPECT_EQ(a.solved_parameter, b.solved_parameter);
    EXPECT_EQ(a.achieved, b.achieved);
    EXPECT_EQ(a.iterations, b.iterations);
}

TEST(CalibrateTest, TargetNearOneConvergesQuicklyNearZero) {
    const auto ds = small_blobs(6);
    CalibrationConfig cfg;
    cfg.mode = Mode::natural;
    cfg.target = 0.999;
    cfg.seed = {1};
    const CalibrationResult r = calibrate(ds, cfg);
    EXPECT_TRUE(r.converged);
    EXPECT_LT(r.solved_parameter, 1.0);
    EXPECT_LE(r.iterations, 10u);
}

TEST(CalibrateTest, ErrorPaths) {
    const auto ds = small_blobs(4);
    CalibrationConfig cfg;
    cfg.mode = Mode::natural;
    cfg.target = 0.10;
    cfg.initial_upper = 0.01;
    cfg.max_expansions = 2;
    cfg.seed = {1};
    try {
        calibrate(ds, cfg);
        FAIL() << "expected UnreachableTargetError";
    } catch (const UnreachableTargetError& e) {
        EXPECT_FALSE(e.partial().converged);
        EXPECT_EQ(e.partial().expansions, 2u);
    }

    cfg.target = 0.9;
    cfg.initial_upper.reset();
    cfg.max_iterations = 1;
    try {
        calibrate(ds, cfg);
        FAIL() << "expected NonConvergenceError";
    } catch (const NonConvergenceError& e) {
        EXPECT_FALSE(e.partial().converged);
        EXPECT_EQ(e.partial().iterations, 1u);
        EXPECT_LT(e.partial().lower.parameter, e.partial().upper.parameter);
    }

    const VolumeDataset blank({Mask(8, 8)}, {"a"});
    cfg.max_iterations = 60;
    EXPECT_THROW(calibrate(blank, cfg), EmptySampleError);

    cfg.target = 1.0;
    EXPECT_THROW(calibrate(ds, cfg), InvalidArgument);
    cfg.target = 0.9;
    cfg.tolerance = 0.0;
    EXPECT_THROW(calibrate(ds, cfg), InvalidArgument);
    cfg.tolerance = 0.005;
    cfg.mode = Mode::random;
    cfg.initial_upper = 2.0;
    EXPECT_THROW(calibrate(ds, cfg), InvalidArgument);
}

}  // namespace
}  // namespace labelnoise
