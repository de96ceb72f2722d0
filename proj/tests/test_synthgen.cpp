#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "labelnoise/error.hpp"
#include "labelnoise/synthgen.hpp"
#include "oracles.hpp"

namespace labelnoise {
namespace {

ShapeSpec blob_spec(std::uint64_t seed, double irregularity = 0.25) {
    ShapeSpec spec;
    spec.kind = ShapeKind::blob;
    spec.size = 128;
    spec.radius = 35;
    spec.irregularity = irregularity;
    spec.seed = {seed};
    return spec;
}

TEST(MakeCircleTest, RadiusZeroIsOnePixel) {
    const Mask m = make_circle(9, 0, {4, 4});
    EXPECT_EQ(m.foreground_count(), 1u);
    EXPECT_TRUE(m.at(4, 4));
}

TEST(MakeCircleTest, AreaCloseToAnalytic) {
    const Mask m = make_circle(512, 100, {256, 256});
    const double area = std::numbers::pi * 100.0 * 100.0;
    std::size_t brute = 0;
    for (int r = 0; r < 512; ++r) {
        for (int c = 0; c < 512; ++c) {
            brute += (r - 256) * (r - 256) + (c - 256) * (c - 256) <= 10000;
        }
    }
    EXPECT_EQ(m.foreground_count(), brute);
    EXPECT_NEAR(static_cast<double>(brute), area, 0.01 * area);
}

TEST(MakeCircleTest, RotationSymmetric) {
    const Mask m = make_circle(65, 20.5, {32, 32});
    for (int r = 0; r < 65; ++r) {
        for (int c = 0; c < 65; ++c) {
            // 90 degrees about (32, 32): (r, c) -> (c, 64 - r)
            EXPECT_EQ(m.at(r, c), m.at(c, 64 - r));
        }
    }
}

TEST(MakeCircleTest, OutOfBounds) {
    EXPECT_THROW(make_circle(100, 60, {50, 50}), BoundsError);
    EXPECT_THROW(make_circle(100, 10, {5, 50}), BoundsError);
    EXPECT_NO_THROW(make_circle(100, 10, {10, 89}));
}

TEST(MakeBlobTest, ZeroIrregularityIsCircle) {
    EXPECT_EQ(make_blob(blob_spec(3, 0.0), 0), make_circle(128, 35, {64, 64}));
}

TEST(MakeBlobTest, DeterministicPerSeedAndIndex) {
    const auto spec = blob_spec(11);
    EXPECT_EQ(make_blob(spec, 4), make_blob(spec, 4));
    EXPECT_NE(make_blob(spec, 4), make_blob(spec, 5));
    EXPECT_NE(make_blob(spec, 4), make_blob(blob_spec(12), 4));
}

TEST(MakeBlobTest, HundredBlobsSimplyConnected) {
    for (std::uint64_t i = 0; i < 100; ++i) {
        const Mask m = make_blob(blob_spec(i, 0.1 + 0.005 * static_cast<double>(i)), i);
        ASSERT_FALSE(m.empty());
        ASSERT_EQ(oracle::count_components(m, true, true), 1) << i;
        ASSERT_EQ(oracle::count_holes(m), 0) << i;
    }
}

TEST(MakeBlobTest, RadiusStaysWithinIrregularityBand) {
    const auto spec = blob_spec(5, 0.2);
    const Mask m = make_blob(spec, 0);
    for (int r = 0; r < 128; ++r) {
        for (int c = 0; c < 128; ++c) {
            const double d = std::hypot(r - 64.0, c - 64.0);
            if (d <= 35 * 0.8 - 1) {
                EXPECT_TRUE(m.at(r, c));
            }
            if (d > 35 * 1.2 + 1) {
                EXPECT_FALSE(m.at(r, c));
            }
        }
    }
}

TEST(ShapeSpecTest, Validation) {
    ShapeSpec spec;
    spec.size = 100;
    spec.radius = 50;
    EXPECT_THROW(spec.validate(), BoundsError);
    spec.radius = 10;
    spec.count = 0;
    EXPECT_THROW(spec.validate(), InvalidArgument);
    spec.count = 1;
    spec.irregularity = 1.0;
    EXPECT_THROW(spec.validate(), InvalidArgument);
    EXPECT_EQ(parse_shape_kind("blob"), ShapeKind::blob);
    EXPECT_THROW(parse_shape_kind("square"), InvalidArgument);
}

TEST(MakeDatasetTest, IdsAndShape) {
    ShapeSpec spec;
    spec.size = 64;
    spec.radius = 10;
    const auto one = make_dataset(spec);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one.slice_ids(), std::vector<std::string>{"slice_0000"});
    EXPECT_EQ(one.width(), 64);
}

TEST(MakeDatasetTest, FiftyBlobsStableContentHash) {
    ShapeSpec spec = blob_spec(2024);
    spec.count = 50;
    const auto ds = make_dataset(spec);
    ASSERT_EQ(ds.size(), 50u);
    EXPECT_EQ(ds.slice_ids().back(), "slice_0049");
    for (const auto& s : ds.slices()) {
        EXPECT_FALSE(s.empty());
    }
    // Recorded from the first verified run.
    EXPECT_EQ(oracle::content_hash(ds), 15927789174832041303ULL);
}

}  // namespace
}  // namespace labelnoise
