// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "asymbft/errors.hpp"
#include "asymbft/failprone_dsl.hpp"
#include "asymbft/quorums.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace asymbft;

namespace
{

constexpr std::size_t kN = 7;

SetFamily
fam(std::string const& text, std::size_t n = kN)
{
    return parseFailProne(text, defaultRoster(n));
}

// The seven-process example.
AsymFailProneSystem
example1()
{
    return AsymFailProneSystem({
        fam("theta(2,{p2,p4,p5}) * {p6} * {p7}"),
        fam("theta(2,{p3,p4,p5}) * {p6} * {p7}"),
        fam("theta(2,{p1,p4,p5}) * {p6} * {p7}"),
        fam("theta(1,{p1,p2,p3,p5}) * {p6} * {p7}"),
        fam("theta(1,{p1,p2,p3,p4}) * {p6} * {p7}"),
        fam("theta(3,{p1,p3,p7})"),
        fam("theta(3,{p3,p4,p5})"),
    });
}

// Quorum table of the seven-process example.
std::vector<SetFamily>
example1Quorums()
{
    return {
        fam("[{p1,p3,p5},{p1,p3,p4},{p1,p2,p3}]"),
        fam("[{p1,p2,p5},{p1,p2,p4},{p1,p2,p3}]"),
        fam("[{p2,p3,p5},{p2,p3,p4},{p1,p2,p3}]"),
        fam("[{p1,p2,p3,p4},{p1,p2,p4,p5},{p1,p3,p4,p5},{p2,p3,p4,p5}]"),
        fam("[{p1,p2,p3,p5},{p1,p2,p4,p5},{p1,p3,p4,p5},{p2,p3,p4,p5}]"),
        fam("{p2,p4,p5,p6}"),
        fam("{p1,p2,p6,p7}"),
    };
}

ProcessSet
set(std::initializer_list<ProcessId> oneBased, std::size_t n = kN)
{
    ProcessSet s(n);
    for (auto p : oneBased)
    {
        s.insert(p - 1);
    }
    return s;
}

} // namespace

TEST(SetFamily, AddDeduplicatesAndCompares)
{
    SetFamily f(4);
    EXPECT_TRUE(f.add(set({1, 2}, 4)));
    EXPECT_FALSE(f.add(set({1, 2}, 4)));
    EXPECT_TRUE(f.add(set({3}, 4)));
    EXPECT_EQ(f.size(), 2u);
    EXPECT_TRUE(f.isAntichain());
    f.add(set({1}, 4));
    EXPECT_FALSE(f.isAntichain());
    EXPECT_TRUE(f.hasMemberWithin(set({3, 4}, 4)));
    EXPECT_FALSE(f.hasMemberWithin(set({2, 4}, 4)));
    SetFamily g(4, {set({3}, 4), set({1}, 4), set({1, 2}, 4)});
    EXPECT_TRUE(f.sameSetsAs(g));
    EXPECT_NE(f, g);
    EXPECT_EQ(f.sorted(), g.sorted());
    EXPECT_EQ(SetFamily(2, {set({1}, 2), set({2}, 2)}).toString(),
              "[{p1},{p2}]");
}

TEST(FailProne, NormalizationAndEmptyFamily)
{
    SetFamily raw(4, {set({1}, 4), set({1, 2}, 4), set({1, 2}, 4),
                      set({3}, 4)});
    EXPECT_EQ(normalizeAntichain(raw),
              SetFamily(4, {set({3}, 4), set({1, 2}, 4)}).sorted());
    EXPECT_TRUE(normalizeAntichain(SetFamily(4)).empty());
    EXPECT_EQ(effectiveFailProne(SetFamily(4)),
              SetFamily(4, {ProcessSet(4)}));
    // Nothing fails: the only quorum is everybody.
    EXPECT_EQ(canonicalQuorums(SetFamily(4)),
              SetFamily(4, {ProcessSet::full(4)}));
}

TEST(FailProne, MaximalIntersections)
{
    SetFamily a(4, {set({1, 2}, 4), set({3, 4}, 4)});
    SetFamily b(4, {set({2, 3}, 4)});
    EXPECT_TRUE(maximalIntersections(a, b).sameSetsAs(
        SetFamily(4, {set({2}, 4), set({3}, 4)})));
}

TEST(Q3, ThresholdExamples)
{
    EXPECT_TRUE(checkQ3(thresholdSystem(4, 1)[0]));
    EXPECT_FALSE(checkQ3(thresholdSystem(3, 1)[0]));
    EXPECT_TRUE(checkQ3(thresholdSystem(7, 2)[0]));
    EXPECT_FALSE(checkQ3(thresholdSystem(6, 2)[0]));
}

TEST(B3, RunningExampleHolds)
{
    EXPECT_TRUE(checkB3(example1()));
    EXPECT_FALSE(checkB3(thresholdSystem(3, 1)));
    EXPECT_TRUE(checkB3(thresholdSystem(4, 1)));
}

TEST(CanonicalQuorums, RunningExampleTable)
{
    auto aq = asymCanonicalQuorums(example1());
    auto expected = example1Quorums();
    for (ProcessId i = 0; i < kN; ++i)
    {
        EXPECT_TRUE(aq[i].sameSetsAs(expected[i])) << "p" << i + 1;
    }
    EXPECT_TRUE(verifyAsymQuorumSystem(example1(), aq).ok());
}

TEST(CanonicalQuorums, ComplementOfSingleFamily)
{
    EXPECT_TRUE(canonicalQuorums(example1()[6]).sameSetsAs(
        fam("{p1,p2,p6,p7}")));
    EXPECT_THROW(canonicalQuorums(thresholdSystem(3, 1)[0]), ConditionError);
    EXPECT_THROW(asymCanonicalQuorums(thresholdSystem(3, 1)), ConditionError);
}

TEST(Verify, ReportsConsistencyViolations)
{
    auto f = thresholdSystem(3, 1)[0];
    SetFamily twoSubsets(3);
    forEachSubsetOfSize(3, 2, [&](ProcessSet const& s) { twoSubsets.add(s); });
    auto report = verifyQuorumSystem(f, twoSubsets);
    EXPECT_FALSE(report.consistency.empty());
    EXPECT_TRUE(report.availability.empty());
    for (auto const& v : report.consistency)
    {
        EXPECT_TRUE((v.quorumI & v.quorumJ).isSubsetOf(v.commonFailProne));
    }
}

TEST(Verify, ReportsAvailabilityFailures)
{
    // p1 with a single quorum {p1,p2,p3}: fail-prone sets containing p2 or
    // p3 leave no live quorum.
    auto af = example1();
    auto quorums = asymCanonicalQuorums(af).systems();
    quorums[0] = SetFamily(kN, {set({1, 2, 3})});
    auto report = verifyAsymQuorumSystem(af, AsymQuorumSystem(quorums));
    std::vector<ProcessSet> failing;
    for (auto const& a : report.availability)
    {
        EXPECT_EQ(a.i, 0u);
        failing.push_back(a.failProne);
    }
    std::sort(failing.begin(), failing.end());
    std::vector<ProcessSet> expected{set({2, 4, 6, 7}), set({2, 5, 6, 7})};
    std::sort(expected.begin(), expected.end());
    // Not an asymmetric quorum system for p1 any more.
    EXPECT_EQ(failing, expected);
}

TEST(Threshold, SizesOfQuorumsAndKernels)
{
    for (std::size_t f = 1; f <= 3; ++f)
    {
        std::size_t const n = 3 * f + 1;
        auto aq = asymCanonicalQuorums(thresholdSystem(n, f));
        for (auto const& q : aq[0])
        {
            EXPECT_EQ(q.size(), 2 * f + 1);
        }
        for (auto const& k : minimalKernels(aq[0]))
        {
            EXPECT_EQ(k.size(), f + 1);
        }
        EXPECT_EQ(minimalKernels(aq[0]).size(), binomial(n, f + 1));
    }
    EXPECT_THROW(thresholdSystem(3, 4), std::invalid_argument);
}

TEST(Kernels, RunningExample)
{
    auto aq = asymCanonicalQuorums(example1());
    EXPECT_TRUE(isKernel(set({3}), aq[0]));
    EXPECT_FALSE(isKernel(set({2}), aq[0]));
    EXPECT_TRUE(minimalKernels(aq[0]).contains(set({3})));
    EXPECT_EQ(kernelWithinQuorum(set({4, 5}), set({1, 2, 3})), set({1, 2, 3}));
    // Edge cases of the hitting-set search.
    EXPECT_EQ(minimalKernels(SetFamily(3)), SetFamily(3, {ProcessSet(3)}));
    EXPECT_TRUE(minimalKernels(SetFamily(3, {ProcessSet(3)})).empty());
    EXPECT_THROW(minimalKernels(SetFamily(17, {ProcessSet::full(17)})),
                 CapacityError);
}

TEST(Classify, RunningExampleWithP4P5Faulty)
{
    auto af = example1();
    auto aq = asymCanonicalQuorums(af);
    auto c = classify(af, aq, set({4, 5}));
    EXPECT_EQ(c.wise, set({1, 2, 3, 7}));
    EXPECT_EQ(c.naive, set({6}));
    ASSERT_TRUE(c.maximalGuild);
    EXPECT_EQ(*c.maximalGuild, set({1, 2, 3}));
    auto ex = explainGuildExclusions(aq, c);
    ASSERT_EQ(ex.size(), 1u);
    EXPECT_EQ(ex[0].process, 6u);
    ASSERT_EQ(ex[0].reasons.size(), 1u);
    EXPECT_EQ(ex[0].reasons[0], "quorum {p1,p2,p6,p7} contains naive p6");
}

TEST(Classify, GuildEdgeCases)
{
    auto aq = asymCanonicalQuorums(thresholdSystem(4, 1));
    EXPECT_FALSE(maximalGuild(aq, ProcessSet(4)));
    auto c = classify(thresholdSystem(4, 1), aq, set({4}, 4));
    EXPECT_EQ(c.wise, set({1, 2, 3}, 4));
    EXPECT_EQ(*c.maximalGuild, set({1, 2, 3}, 4));
    auto none = classify(thresholdSystem(4, 1), aq, set({3, 4}, 4));
    EXPECT_TRUE(none.wise.empty());
    EXPECT_FALSE(none.hasGuild());
}

TEST(Classify, ThresholdWiseIffFewFaults)
{
    for (std::size_t n = 4; n <= 7; ++n)
    {
        std::size_t const f = (n - 1) / 3;
        auto af = thresholdSystem(n, f);
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits)
        {
            auto faulty = ProcessSet::fromBits(n, bits);
            auto c = classify(af, faulty);
            EXPECT_EQ(c.wise, faulty.size() <= f ? faulty.complement()
                                                 : ProcessSet(n));
        }
    }
}

////////////////////////////////////////////////////////////////////////////////
// Properties against brute-force oracles
////////////////////////////////////////////////////////////////////////////////

TEST(QuorumProperties, Q3MatchesOracleAndCanonicalIffQ3)
{
    std::mt19937_64 rng(11);
    std::size_t holds = 0;
    std::size_t fails = 0;
    for (int trial = 0; trial < 600; ++trial)
    {
        std::size_t const n = 3 + trial % 8;
        auto sets = oracle::randomAntichain(rng, n, 1 + trial % 5,
                                            0.15 + 0.05 * (trial % 4));
        SetFamily f(n, sets);
        bool const q3 = oracle::q3(sets, n);
        ASSERT_EQ(checkQ3(f), q3) << f.toString();
        auto canonical = bijectiveComplement(effectiveFailProne(f));
        EXPECT_EQ(verifyQuorumSystem(f, canonical).ok(), q3) << f.toString();
        (q3 ? holds : fails) += 1;
    }
    EXPECT_GT(holds, 50u);
    EXPECT_GT(fails, 20u);
}

TEST(QuorumProperties, B3MatchesOracleAndAsymCanonicalIffB3)
{
    std::mt19937_64 rng(12);
    std::size_t holds = 0;
    for (int trial = 0; trial < 300; ++trial)
    {
        std::size_t const n = 3 + trial % 5;
        std::vector<SetFamily> fams;
        std::vector<oracle::Sets> sets;
        for (std::size_t i = 0; i < n; ++i)
        {
            sets.push_back(oracle::randomAntichain(rng, n, 1 + (trial + i) % 3,
                                                   0.2));
            fams.emplace_back(n, sets.back());
        }
        AsymFailProneSystem af(fams);
        bool const b3 = oracle::b3(sets, n);
        ASSERT_EQ(checkB3(af), b3);
        std::vector<SetFamily> complements;
        for (auto const& f : fams)
        {
            complements.push_back(bijectiveComplement(effectiveFailProne(f)));
        }
        AsymQuorumSystem aq(complements);
        EXPECT_EQ(verifyAsymQuorumSystem(af, aq).ok(), b3);
        EXPECT_EQ(oracle::isAsymQuorumSystem(sets, oracle::toSets(complements),
                                             n),
                  b3);
        holds += b3 ? 1 : 0;
    }
    EXPECT_GT(holds, 30u);
}

TEST(QuorumProperties, MinimalKernelsMatchOracle)
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 300; ++trial)
    {
        std::size_t const n = 2 + trial % 6;
        auto quorums = oracle::randomAntichain(rng, n, 1 + trial % 4, 0.5);
        SetFamily q(n, quorums);
        auto expected = oracle::minimalKernels(quorums, n);
        EXPECT_EQ(minimalKernels(q).members(), expected) << q.toString();
        for (auto const& k : expected)
        {
            EXPECT_TRUE(isKernel(k, q));
        }
    }
}

// Random B3 systems with canonical quorums and random faulty sets.
class GuildProperties : public ::testing::Test
{
  protected:
    struct Case
    {
        AsymFailProneSystem af;
        AsymQuorumSystem aq;
        ProcessSet faulty;
    };

    static std::vector<Case>
    cases(std::size_t count, std::uint64_t seed)
    {
        std::mt19937_64 rng(seed);
        std::vector<Case> out;
        while (out.size() < count)
        {
            std::size_t const n = 4 + out.size() % 4;
            auto sets = oracle::randomB3System(rng, n);
            if (!sets)
            {
                continue;
            }
            std::vector<SetFamily> fams;
            for (auto const& s : *sets)
            {
                fams.emplace_back(n, s);
            }
            AsymFailProneSystem af(fams);
            std::bernoulli_distribution fails(0.2);
            ProcessSet faulty(n);
            for (ProcessId p = 0; p < n; ++p)
            {
                if (fails(rng))
                {
                    faulty.insert(p);
                }
            }
            out.push_back({af, asymCanonicalQuorums(af), faulty});
        }
        return out;
    }
};

TEST_F(GuildProperties, QuorumMinusFailProneIsKernel)
{
    for (auto const& c : cases(200, 21))
    {
        for (ProcessId i = 0; i < c.af.universeSize(); ++i)
        {
            for (auto const& q : c.aq[i])
            {
                for (auto const& f : effectiveFailProne(c.af[i]))
                {
                    EXPECT_TRUE(isKernel(kernelWithinQuorum(f, q), c.aq[i]));
                }
            }
        }
    }
}

TEST_F(GuildProperties, GuildsIntersectAndUnionIsMaximal)
{
    std::size_t withGuild = 0;
    for (auto const& c : cases(200, 22))
    {
        auto cl = classify(c.af, c.aq, c.faulty);
        auto all = oracle::guilds(oracle::toSets(c.aq.systems()), cl.wise);
        for (auto const& a : all)
        {
            for (auto const& b : all)
            {
                EXPECT_TRUE(a.intersects(b));
            }
        }
        if (all.empty())
        {
            EXPECT_FALSE(cl.maximalGuild);
            continue;
        }
        ++withGuild;
        ProcessSet u(c.faulty.universeSize());
        for (auto const& g : all)
        {
            u |= g;
        }
        ASSERT_TRUE(cl.maximalGuild);
        EXPECT_EQ(*cl.maximalGuild, u);
    }
    EXPECT_GT(withGuild, 30u);
}

TEST_F(GuildProperties, NoFullyFaultyQuorumWithGuild)
{
    for (auto const& c : cases(200, 23))
    {
        auto cl = classify(c.af, c.aq, c.faulty);
        if (!cl.hasGuild())
        {
            continue;
        }
        EXPECT_FALSE(hasFullyFaultyQuorum(c.aq, c.faulty));
        for (ProcessId j = 0; j < c.af.universeSize(); ++j)
        {
            for (auto const& q : c.aq[j])
            {
                EXPECT_FALSE(q.isSubsetOf(c.faulty));
            }
        }
    }
}

TEST_F(GuildProperties, EveryCorrectQuorumMeetsTheGuild)
{
    for (auto const& c : cases(200, 24))
    {
        auto cl = classify(c.af, c.aq, c.faulty);
        if (!cl.hasGuild())
        {
            continue;
        }
        for (auto p : c.faulty.complement().members())
        {
            EXPECT_TRUE(isKernel(*cl.maximalGuild, c.aq[p]));
        }
    }
}
