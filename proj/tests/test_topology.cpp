#include "nestsim/error.hpp"
#include "nestsim/topology.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace nestsim;

namespace {

bool has_violation(const std::vector<Violation>& vs, ViolationKind kind)
{
    return std::any_of(vs.begin(), vs.end(), [kind](const Violation& v) { return v.kind == kind; });
}

// Random forest: each pattern's parent is absent or an earlier pattern.
EnsembleSpec random_forest(std::mt19937_64& rng, std::size_t count)
{
    EnsembleSpec spec;
    spec.excitatory_unit = 1.0;
    spec.inhibitory_weight = 0.5;
    for (std::size_t p = 0; p < count; ++p) {
        PatternSpec pat;
        pat.id = p;
        pat.size = 1 + rng() % 4;
        if (p > 0 && rng() % 4 != 0) {
            pat.parent = rng() % p;
        }
        spec.patterns.push_back(pat);
    }
    return spec;
}

} // namespace

TEST(BuildLinear, StandardChain)
{
    const auto spec = build_linear(5, 5, 1.0, 0.5);
    EXPECT_EQ(spec.neuron_count(), 25u);
    EXPECT_EQ(spec.pattern_count(), 5u);
    EXPECT_FALSE(spec.patterns[0].parent.has_value());
    for (PatternIndex k = 1; k < 5; ++k) {
        EXPECT_EQ(spec.patterns[k].parent, k - 1);
    }
    EXPECT_TRUE(validate(spec).empty());
}

TEST(BuildLinear, SinglePatternHasNoAncestors)
{
    const auto spec = build_linear(1, 5, 1.0, 0.5);
    EXPECT_EQ(spec.pattern_count(), 1u);
    EXPECT_TRUE(ancestors(spec, 0).empty());
}

TEST(BuildLinear, DepthThree)
{
    const auto spec = build_linear(3, 2, 1.0, 0.5);
    EXPECT_EQ(spec.neuron_count(), 6u);
    EXPECT_EQ(ancestors(spec, 2), (std::vector<PatternIndex>{1, 0}));
    EXPECT_EQ(ancestors(spec, 1), (std::vector<PatternIndex>{0}));
}

TEST(BuildLinear, RejectsZeroDimensions)
{
    try {
        build_linear(0, 5, 1.0, 0.5);
        FAIL() << "expected InvalidDimension";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidDimension);
    }
    EXPECT_THROW(build_linear(5, 0, 1.0, 0.5), Error);
}

TEST(Ancestors, InnermostSeesWholeChain)
{
    const auto spec = build_linear(5, 5, 1.0, 0.5);
    EXPECT_EQ(ancestors(spec, 4), (std::vector<PatternIndex>{3, 2, 1, 0}));
    EXPECT_TRUE(ancestors(spec, 0).empty());
}

TEST(Ancestors, UnknownPattern)
{
    const auto spec = build_linear(3, 1, 1.0, 0.5);
    try {
        ancestors(spec, 3);
        FAIL() << "expected UnknownPattern";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnknownPattern);
    }
}

TEST(Members, StandardBlocks)
{
    const auto spec = build_linear(5, 5, 1.0, 0.5);
    EXPECT_EQ(members(spec, 0), (std::vector<NeuronIndex>{0, 1, 2, 3, 4}));
    EXPECT_EQ(members(spec, 4), (std::vector<NeuronIndex>{20, 21, 22, 23, 24}));
    EXPECT_THROW(members(spec, 5), Error);
}

TEST(Members, SingletonPattern)
{
    const auto spec = build_linear(3, 1, 1.0, 0.5);
    EXPECT_EQ(members(spec, 1), (std::vector<NeuronIndex>{1}));
}

TEST(Members, UnevenSizes)
{
    EnsembleSpec spec;
    spec.patterns = {{0, std::nullopt, 3}, {1, 0, 1}, {2, 0, 2}};
    EXPECT_TRUE(validate(spec).empty());
    EXPECT_EQ(members(spec, 2), (std::vector<NeuronIndex>{4, 5}));
    EXPECT_EQ(spec.pattern_of(3), 1u);
    // Siblings only see their shared parent.
    EXPECT_EQ(ancestors(spec, 2), (std::vector<PatternIndex>{0}));
}

TEST(Validate, SelfParentIsCycle)
{
    EnsembleSpec spec = build_linear(3, 2, 1.0, 0.5);
    spec.patterns[1].parent = 1;
    const auto vs = validate(spec);
    EXPECT_TRUE(has_violation(vs, ViolationKind::NestingCycle));
    EXPECT_NE(vs.front().message().find("nesting cycle"), std::string::npos);
}

TEST(Validate, TwoCycle)
{
    EnsembleSpec spec = build_linear(3, 2, 1.0, 0.5);
    spec.patterns[0].parent = 2;
    const auto vs = validate(spec);
    EXPECT_EQ(std::count_if(vs.begin(), vs.end(),
                            [](const Violation& v) { return v.kind == ViolationKind::NestingCycle; }),
              3);
    EXPECT_THROW(ancestors(spec, 2), Error);
}

TEST(Validate, EmptyPattern)
{
    EnsembleSpec spec = build_linear(3, 2, 1.0, 0.5);
    spec.patterns[2].size = 0;
    const auto vs = validate(spec);
    ASSERT_EQ(vs.size(), 1u);
    EXPECT_EQ(vs[0].kind, ViolationKind::EmptyPattern);
    EXPECT_NE(vs[0].message().find("empty pattern"), std::string::npos);
}

TEST(Validate, ReportsEveryViolation)
{
    EnsembleSpec spec = build_linear(3, 2, 0.0, -0.1);
    spec.patterns[1].size = 0;
    spec.patterns[2].parent = 7;
    const auto vs = validate(spec);
    EXPECT_TRUE(has_violation(vs, ViolationKind::NonPositiveExcitatoryUnit));
    EXPECT_TRUE(has_violation(vs, ViolationKind::NegativeInhibitoryWeight));
    EXPECT_TRUE(has_violation(vs, ViolationKind::EmptyPattern));
    EXPECT_TRUE(has_violation(vs, ViolationKind::UnknownParent));
    EXPECT_EQ(vs.size(), 4u);
}

TEST(Validate, EmptyEnsemble)
{
    EnsembleSpec spec;
    EXPECT_TRUE(has_violation(validate(spec), ViolationKind::NoPatterns));
}

TEST(TopologyProperties, AncestorsAcyclicAndShort)
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto spec = random_forest(rng, 1 + rng() % 12);
        ASSERT_TRUE(validate(spec).empty());
        for (PatternIndex p = 0; p < spec.pattern_count(); ++p) {
            auto chain = ancestors(spec, p);
            EXPECT_LT(chain.size(), spec.pattern_count());
            std::sort(chain.begin(), chain.end());
            EXPECT_EQ(std::adjacent_find(chain.begin(), chain.end()), chain.end());
            EXPECT_EQ(std::find(chain.begin(), chain.end(), p), chain.end());
        }
    }
}

TEST(TopologyProperties, MembershipPartitionsNeurons)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto spec = random_forest(rng, 1 + rng() % 12);
        std::vector<int> seen(spec.neuron_count(), 0);
        for (PatternIndex p = 0; p < spec.pattern_count(); ++p) {
            for (NeuronIndex i : members(spec, p)) {
                ASSERT_LT(i, seen.size());
                ++seen[i];
                EXPECT_EQ(spec.pattern_of(i), p);
            }
        }
        EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
    }
}

TEST(TopologyProperties, LinearAncestorLengthEqualsIndex)
{
    for (std::size_t d = 1; d <= 12; ++d) {
        const auto spec = build_linear(d, 1 + d % 3, 1.0, 0.5);
        for (PatternIndex k = 0; k < d; ++k) {
            EXPECT_EQ(ancestors(spec, k).size(), k);
        }
    }
}
