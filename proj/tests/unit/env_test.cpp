#include "curiosity/env.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "curiosity/nn.hpp"

using namespace curiosity;

TEST(EnvNew, SameSeedGivesIdenticalPatterns) {
    auto a = env_new(17);
    auto b = env_new(17);
    for (int r = 0; r < kGridSize; ++r)
        for (int c = 0; c < kDetCols; ++c)
            EXPECT_EQ(a.deterministic_pattern({r, c}), b.deterministic_pattern({r, c}));
}

TEST(EnvNew, DeterministicRegionHas450Cells) {
    auto env = env_new(1);
    int count = 0;
    for (int r = 0; r < kGridSize; ++r)
        for (int c = 0; c < kGridSize; ++c)
            if (!NoisyTvEnv::is_stochastic({r, c})) {
                EXPECT_EQ(env.deterministic_pattern({r, c}).size(),
                          static_cast<std::size_t>(kObsDim));
                ++count;
            }
    EXPECT_EQ(count, 450);
    EXPECT_EQ(count, kDetCellCount);
}

TEST(EnvNew, PatternsAreRotationsOfBase) {
    auto env = env_new(23);
    Observation sorted_base = env.base_pattern();
    std::sort(sorted_base.begin(), sorted_base.end());
    for (int r = 0; r < kGridSize; ++r) {
        for (int c = 0; c < kDetCols; ++c) {
            Observation p = env.deterministic_pattern({r, c});
            std::sort(p.begin(), p.end());
            EXPECT_EQ(p, sorted_base);
        }
    }
}

// Neighbouring cells carry near-identical information: column neighbours are
// rotations by 1, row neighbours rotations by 15, both exact by construction.
TEST(EnvNew, AdjacentPatternsAreSmallExactRotations) {
    auto env = env_new(31);
    auto rotated = [](const Observation& p, int k) {
        Observation r(p.size());
        const int n = static_cast<int>(p.size());
        for (int i = 0; i < n; ++i)
            r[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>((i + k) % n)];
        return r;
    };
    for (int r = 0; r < kGridSize; ++r)
        for (int c = 0; c + 1 < kDetCols; ++c)
            EXPECT_EQ(env.deterministic_pattern({r, c + 1}),
                      rotated(env.deterministic_pattern({r, c}), 1));
    for (int r = 0; r + 1 < kGridSize; ++r)
        for (int c = 0; c < kDetCols; ++c)
            EXPECT_EQ(env.deterministic_pattern({r + 1, c}),
                      rotated(env.deterministic_pattern({r, c}), kDetCols));
}

TEST(IsStochastic, SplitsGridAtColumn15) {
    EXPECT_FALSE(NoisyTvEnv::is_stochastic({0, 0}));
    EXPECT_TRUE(NoisyTvEnv::is_stochastic({15, 15}));
    EXPECT_FALSE(NoisyTvEnv::is_stochastic({29, 14}));
    EXPECT_THROW(NoisyTvEnv::is_stochastic({30, 0}), ContractError);
}

TEST(Observe, DeterministicCellIsStableAcrossCalls) {
    auto env = env_new(5);
    EXPECT_EQ(env.observe({3, 7}), env.observe({3, 7}));
    EXPECT_EQ(env.observe({3, 7}), env.deterministic_pattern({3, 7}));
}

TEST(Observe, StochasticCellMeansNearHalf) {
    auto env = env_new(5);
    std::vector<double> sum(kObsDim, 0.0);
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const Observation obs = env.observe({10, 20});
        for (int d = 0; d < kObsDim; ++d) sum[static_cast<std::size_t>(d)] += obs[static_cast<std::size_t>(d)];
    }
    for (double s : sum) {
        const double mean = s / n;
        EXPECT_GE(mean, 0.48);
        EXPECT_LE(mean, 0.52);
    }
}

TEST(Observe, StochasticCellResamplesEveryVisit) {
    auto env = env_new(5);
    EXPECT_NE(env.observe({0, 29}), env.observe({0, 29}));
}

TEST(Observe, ObservationsAreBinary) {
    auto env = env_new(8);
    for (Cell c : {Cell{2, 3}, Cell{14, 22}}) {
        const Observation obs = env.observe(c);
        ASSERT_EQ(obs.size(), static_cast<std::size_t>(kObsDim));
        for (double bit : obs) EXPECT_TRUE(bit == 0.0 || bit == 1.0);
    }
}

// With the prediction pinned at 0.5 per dimension, every binary observation
// sits at L2 distance exactly sqrt(200 * 0.25).
TEST(Observe, AnalyticNoiseFloorIsExact) {
    auto env = env_new(29);
    const std::vector<double> half(kObsDim, 0.5);
    for (int i = 0; i < 50; ++i) {
        const Observation obs = env.observe({7, 21});
        EXPECT_DOUBLE_EQ(l2_distance(half, obs), kNoiseFloor);
    }
    EXPECT_NEAR(kNoiseFloor, 7.07107, 1e-5);
}

TEST(DeterministicPattern, NeverAdvancesNoiseStream) {
    auto a = env_new(77);
    auto b = env_new(77);
    for (int i = 0; i < 1000; ++i) b.deterministic_pattern({5, 3});
    for (int i = 0; i < 20; ++i) EXPECT_EQ(a.observe({12, 25}), b.observe({12, 25}));
}

TEST(DeterministicPattern, RejectsStochasticCells) {
    auto env = env_new(2);
    EXPECT_THROW(env.deterministic_pattern({0, 15}), ContractError);
}

TEST(ValidActions, ExcludesBoundaryMoves) {
    auto env = env_new(3);
    auto corner = env.valid_actions({0, 0});
    EXPECT_EQ(corner.count, 2);
    EXPECT_TRUE(corner.contains(Action::Down));
    EXPECT_TRUE(corner.contains(Action::Right));

    EXPECT_EQ(env.valid_actions({15, 15}).count, 4);

    auto far = env.valid_actions({29, 29});
    EXPECT_EQ(far.count, 2);
    EXPECT_TRUE(far.contains(Action::Up));
    EXPECT_TRUE(far.contains(Action::Left));
}

TEST(ValidActions, StochasticOnlyVariantFencesOffLeftHalf) {
    auto env = env_new(3, true);
    EXPECT_FALSE(env.valid_actions({10, 15}).contains(Action::Left));
    EXPECT_TRUE(env.valid_actions({10, 16}).contains(Action::Left));
}

TEST(Step, MovesByConvention) {
    auto env = env_new(4);
    EXPECT_EQ(env.step({15, 15}, Action::Left), (Cell{15, 14}));
    EXPECT_EQ(env.step({15, 15}, Action::Up), (Cell{14, 15}));
    EXPECT_THROW(env.step({0, 5}, Action::Up), ContractError);
}

TEST(Step, AlwaysLandsInBounds) {
    auto env = env_new(6);
    for (int r = 0; r < kGridSize; ++r) {
        for (int c = 0; c < kGridSize; ++c) {
            for (Action a : env.valid_actions({r, c})) {
                EXPECT_TRUE(env.step({r, c}, a).in_bounds());
            }
        }
    }
}

TEST(EncodeState, TwoHotRowColumn) {
    auto check = [](Cell c, int i1, int i2) {
        const auto x = encode_state(c);
        double total = 0.0;
        for (double v : x) total += v;
        EXPECT_EQ(total, 2.0);
        EXPECT_EQ(x[static_cast<std::size_t>(i1)], 1.0);
        EXPECT_EQ(x[static_cast<std::size_t>(i2)], 1.0);
    };
    check({0, 0}, 0, 30);
    check({15, 15}, 15, 45);
    check({29, 14}, 29, 44);
}
