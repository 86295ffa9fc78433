#include "nestsim/counter.hpp"
#include "nestsim/error.hpp"

#include <gtest/gtest.h>

using namespace nestsim;

TEST(Counter, StartIsIdle)
{
    for (std::size_t d : {1u, 3u}) {
        const auto s = start({d, {}});
        EXPECT_EQ(s.phase, Phase::Idle);
        EXPECT_EQ(s.tick, 0u);
        EXPECT_TRUE(s.emissions.empty());
        EXPECT_TRUE(s.drive_on);
    }
}

TEST(Counter, ZeroDepthRejected)
{
    try {
        start({0, {}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidDepth);
    }
    EXPECT_THROW(run_counter({0, {}}), Error);
}

TEST(Counter, DepthThreeLifecycle)
{
    const CounterSpec spec{3, "timer"};
    auto s = start(spec);
    for (std::size_t k = 1; k <= 3; ++k) {
        s = tick(s, spec);
        EXPECT_EQ(s.phase, Phase::Cascading);
        EXPECT_EQ(s.level, k);
        ASSERT_EQ(s.emissions.size(), k);
        EXPECT_EQ(s.emissions.back(), (CountEvent{k, k}));
    }
    EXPECT_TRUE(s.off_switch_signalled);
    EXPECT_TRUE(s.drive_on);

    s = tick(s, spec);
    EXPECT_EQ(s.phase, Phase::ShuttingDown);
    EXPECT_FALSE(s.drive_on);
    EXPECT_EQ(s.emissions.size(), 3u);

    s = tick(s, spec);
    EXPECT_EQ(s.phase, Phase::Quiescent);
    EXPECT_EQ(s.tick, 5u);
    EXPECT_EQ(s.emissions.size(), 3u);
}

TEST(Counter, DepthOne)
{
    const CounterSpec spec{1, {}};
    auto s = start(spec);
    s = tick(s, spec);
    EXPECT_TRUE(s.off_switch_signalled);
    s = tick(tick(s, spec), spec);
    EXPECT_EQ(s.phase, Phase::Quiescent);
    EXPECT_EQ(s.tick, 3u);
    EXPECT_EQ(s.emissions.size(), 1u);
}

TEST(Counter, QuiescentIsAbsorbing)
{
    const CounterSpec spec{4, {}};
    const auto done = run_counter(spec).final_state;
    auto s = done;
    for (int k = 0; k < 10; ++k) {
        s = tick(s, spec);
        EXPECT_EQ(s, done);
    }
}

TEST(Counter, RunDepthTen)
{
    const auto result = run_counter({10, {}});
    ASSERT_EQ(result.events.size(), 10u);
    for (std::size_t k = 0; k < 10; ++k) {
        EXPECT_EQ(result.events[k], (CountEvent{k + 1, k + 1}));
    }
    EXPECT_EQ(result.final_state.tick, 12u);
}

// Replays tick() one step at a time and checks the invariants the phase
// machine must hold on every intermediate state.
TEST(CounterProperties, ExhaustiveReplay)
{
    for (std::size_t d = 1; d <= 40; ++d) {
        const CounterSpec spec{d, {}};
        auto s = start(spec);
        std::size_t ticks = 0;
        while (s.phase != Phase::Quiescent) {
            const auto before = s.emissions.size();
            s = tick(s, spec);
            ++ticks;
            if (s.phase == Phase::ShuttingDown || s.phase == Phase::Quiescent) {
                EXPECT_EQ(s.emissions.size(), before);
            }
            for (std::size_t k = 1; k < s.emissions.size(); ++k) {
                EXPECT_LT(s.emissions[k - 1].level, s.emissions[k].level);
                EXPECT_LT(s.emissions[k - 1].tick, s.emissions[k].tick);
            }
            for (const auto& e : s.emissions) {
                EXPECT_GE(e.level, 1u);
                EXPECT_LE(e.level, d);
            }
            ASSERT_LE(ticks, d + 2);
        }
        EXPECT_EQ(ticks, d + 2);
        EXPECT_EQ(s.emissions.size(), d);
    }
}
