// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "asymbft/attack.hpp"
#include "asymbft/checks.hpp"
#include "asymbft/config.hpp"
#include "asymbft/consensus.hpp"

#include <gtest/gtest.h>

using namespace asymbft;

namespace
{

std::string const kExample1 = R"(
[processes]
p1 p2 p3 p4 p5 p6 p7
[failprone]
p1: theta(2,{p2,p4,p5}) * {p6} * {p7}
p2: theta(2,{p3,p4,p5}) * {p6} * {p7}
p3: theta(2,{p1,p4,p5}) * {p6} * {p7}
p4: theta(1,{p1,p2,p3,p5}) * {p6} * {p7}
p5: theta(1,{p1,p2,p3,p4}) * {p6} * {p7}
p6: theta(3,{p1,p3,p7})
p7: theta(3,{p3,p4,p5})
)";

ConsensusScenario
thresholdScenario(std::size_t n, std::size_t f, ProcessSet faulty,
                  std::vector<int> inputs, std::uint64_t seed)
{
    ConsensusScenario s;
    s.failProne = thresholdSystem(n, f);
    s.quorums = asymCanonicalQuorums(s.failProne);
    s.faulty = faulty;
    s.inputs = std::move(inputs);
    s.seed = seed;
    return s;
}

ConsensusScenario
example1Scenario(std::vector<int> inputs, std::uint64_t seed,
                 AdversaryKind adversary)
{
    auto cfg = parseConfig(kExample1);
    ConsensusScenario s;
    s.failProne = cfg.failProne;
    s.quorums = quorumsOf(cfg);
    s.faulty = ProcessSet(7, {3, 4});
    s.inputs = std::move(inputs);
    s.seed = seed;
    s.adversary = adversary;
    return s;
}

// A lone machine fed by hand.
struct Harness
{
    Harness(AsymQuorumSystem aq, ProcessId self, Variant v, int input)
        : system(std::make_shared<AsymQuorumSystem const>(std::move(aq)))
        , deal(std::make_shared<CoinDeal const>(
              CoinDeal::deal(*system, 10, 1)))
        , machine(self, system, deal, VariantFlags::forVariant(v), input)
        , fx(system->universeSize())
    {
        machine.start(fx);
    }

    std::size_t
    decideSends(int bit) const
    {
        std::size_t k = 0;
        for (auto const& [to, p] : fx.sends())
        {
            auto const* d = std::get_if<DecideMsg>(&p);
            k += d && d->bit == bit ? 1 : 0;
        }
        return k;
    }

    std::shared_ptr<AsymQuorumSystem const> system;
    std::shared_ptr<CoinDeal const> deal;
    ConsensusMachine machine;
    Effects fx;
};

} // namespace

TEST(Variant, FlagsAndNames)
{
    auto fixed = VariantFlags::forVariant(Variant::Fixed);
    auto podc = VariantFlags::forVariant(Variant::Podc14);
    EXPECT_TRUE(fixed.fifoLinks && fixed.dynamicB && fixed.decideAmplification);
    EXPECT_FALSE(podc.fifoLinks || podc.dynamicB || podc.decideAmplification);
    EXPECT_EQ(parseVariant("podc14"), Variant::Podc14);
    EXPECT_STREQ(toString(Variant::Fixed), "fixed");
    EXPECT_THROW(parseVariant("jacm15"), std::invalid_argument);
    EXPECT_EQ(parseAdversaryKind("coin_peeking"), AdversaryKind::CoinPeeking);
}

TEST(ConsensusMachine, BuffersFutureAndDropsPastMessages)
{
    Harness h(asymCanonicalQuorums(thresholdSystem(4, 1)), 0, Variant::Fixed,
              1);
    h.machine.deliver(1, ValueMsg{1, 0}, h.fx);
    h.machine.deliver(2, ValueMsg{1, 0}, h.fx);
    h.machine.deliver(3, ValueMsg{1, 0}, h.fx);
    EXPECT_EQ(h.machine.round(), 0u);
    EXPECT_TRUE(h.machine.values().empty());
    h.machine.deliver(0, ValueMsg{0, 1}, h.fx);
    h.machine.deliver(1, ValueMsg{0, 1}, h.fx);
    h.machine.deliver(2, ValueMsg{0, 1}, h.fx);
    EXPECT_EQ(h.machine.values(), BinValues::of(1));
}

TEST(ConsensusMachine, DecideRelayOnKernelAndDecisionOnQuorum)
{
    Harness h(asymCanonicalQuorums(thresholdSystem(4, 1)), 0, Variant::Fixed,
              1);
    h.machine.deliver(1, DecideMsg{0}, h.fx);
    EXPECT_FALSE(h.machine.sentDecide());
    // Only the first DECIDE per sender counts.
    h.machine.deliver(1, DecideMsg{1}, h.fx);
    h.machine.deliver(2, DecideMsg{0}, h.fx);
    EXPECT_TRUE(h.machine.sentDecide());
    EXPECT_EQ(h.decideSends(0), 4u);
    EXPECT_FALSE(h.machine.decision());
    h.machine.deliver(3, DecideMsg{0}, h.fx);
    EXPECT_EQ(h.machine.decision(), 0);
    EXPECT_TRUE(h.machine.halted());
}

TEST(ConsensusMachine, Podc14IgnoresDecideMessages)
{
    Harness h(asymCanonicalQuorums(thresholdSystem(4, 1)), 0, Variant::Podc14,
              1);
    for (ProcessId p = 1; p < 4; ++p)
    {
        h.machine.deliver(p, DecideMsg{0}, h.fx);
    }
    EXPECT_FALSE(h.machine.decision());
    EXPECT_EQ(h.decideSends(0), 0u);
}

// With p4, p5 faulty, a single faulty DECIDE is a kernel for naive p6, so
// p6 relays the wrong bit and the only quorum of wise p7, {p1,p2,p6,p7},
// can never be unanimous.
TEST(ConsensusMachine, NaiveRelayCanStrandWiseProcessOutsideGuild)
{
    auto cfg = parseConfig(kExample1);
    auto aq = quorumsOf(cfg);

    Harness p6(aq, 5, Variant::Fixed, 1);
    p6.machine.deliver(3, DecideMsg{0}, p6.fx);
    EXPECT_TRUE(p6.machine.sentDecide());
    EXPECT_EQ(p6.decideSends(0), 7u);

    Harness p7(aq, 6, Variant::Fixed, 1);
    p7.machine.deliver(5, DecideMsg{0}, p7.fx);
    // {p6} is a kernel for p7 as well, so p7 relays 0 too.
    EXPECT_TRUE(p7.machine.sentDecide());
    for (ProcessId p : {0, 1, 6})
    {
        p7.machine.deliver(p, DecideMsg{1}, p7.fx);
    }
    EXPECT_FALSE(p7.machine.decision());
    EXPECT_FALSE(p7.machine.halted());
}

// Seed 19 of the acceptance batch. p1's COIN reaches p3 before p1's second
// AUX, so p3 ends round 0 with B = {1} while p1 and p2 later hold {0,1}.
// p1's only quorum with matching aux sets then needs the faulty p4 to report
// {0,1}, which it never does, and the run goes quiescent.
TEST(Consensus, ExactAuxMatchCanStallAGuildMember)
{
    auto s = thresholdScenario(4, 1, ProcessSet(4, {3}), {1, 1, 0, 0}, 19);
    s.adversary = AdversaryKind::Equivocating;
    auto out = runConsensus(s);
    auto a = analyzeRun(s, out);
    EXPECT_TRUE(a.safe());
    EXPECT_EQ(out.trace.terminated, Termination::Quiescent);
    EXPECT_EQ(out.trace.progress[0].round, 0u);
    EXPECT_FALSE(out.trace.progress[0].decision);
    EXPECT_FALSE(a.sameBAfterCoin.empty());
}

TEST(Consensus, SingleProcessDecidesItsInput)
{
    for (int input : {0, 1})
    {
        auto s = thresholdScenario(1, 0, ProcessSet(1), {input}, 3);
        auto out = runConsensus(s);
        EXPECT_EQ(out.trace.progress[0].decision, input);
        EXPECT_EQ(out.trace.terminated, Termination::AllHalted);
        EXPECT_TRUE(analyzeRun(s, out).safe());
    }
}

TEST(Consensus, UnanimousInputIsDecided)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        for (int b : {0, 1})
        {
            auto s = thresholdScenario(4, 1, ProcessSet(4, {3}), {b, b, b, 1 - b},
                                       seed);
            s.adversary = static_cast<AdversaryKind>(seed % 3);
            auto out = runConsensus(s);
            auto a = analyzeRun(s, out);
            EXPECT_TRUE(a.safe()) << a.violations.front().detail;
            EXPECT_TRUE(a.allWiseDecided());
            for (ProcessId p = 0; p < 3; ++p)
            {
                EXPECT_EQ(out.trace.progress[p].decision, b);
            }
        }
    }
}

TEST(Consensus, MixedInputsAgreeUnderAllAdversaries)
{
    for (std::uint64_t seed = 0; seed < 30; ++seed)
    {
        auto s = thresholdScenario(7, 2, ProcessSet(7, {5, 6}),
                                   {0, 1, 0, 1, 1, 0, 1}, seed);
        s.adversary = static_cast<AdversaryKind>(seed % 3);
        auto out = runConsensus(s);
        auto a = analyzeRun(s, out);
        EXPECT_TRUE(a.safe()) << "seed " << seed;
        EXPECT_TRUE(a.allWiseDecided()) << "seed " << seed;
        EXPECT_EQ(out.trace.terminated, Termination::AllHalted);
    }
}

TEST(Consensus, DeterministicPerSeed)
{
    auto s = example1Scenario({1, 0, 1, 1, 1, 0, 1}, 42,
                              AdversaryKind::Equivocating);
    auto a = runConsensus(s);
    auto b = runConsensus(s);
    EXPECT_EQ(a.trace.steps, b.trace.steps);
    EXPECT_EQ(a.trace.events.size(), b.trace.events.size());
    EXPECT_EQ(a.trace.messagesPerRound, b.trace.messagesPerRound);
}

TEST(Consensus, RunningExampleGuildAlwaysDecides)
{
    std::size_t stranded = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed)
    {
        auto s = example1Scenario({1, 1, 1, 1, 1, 1, 1}, seed,
                                  static_cast<AdversaryKind>(seed % 3));
        auto out = runConsensus(s);
        auto a = analyzeRun(s, out);
        EXPECT_TRUE(a.safe());
        EXPECT_EQ(a.guildDecided, a.guildTotal) << "seed " << seed;
        for (ProcessId p : {0, 1, 2})
        {
            EXPECT_EQ(out.trace.progress[p].decision, 1);
        }
        stranded += a.allWiseDecided() ? 0 : 1;
    }
    // Some runs strand p7 (see NaiveRelayCanStrandWiseProcessOutsideGuild).
    EXPECT_GT(stranded, 0u);
}

TEST(Consensus, Podc14UsuallyDecidesUnderFairScheduling)
{
    std::size_t decided = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed)
    {
        auto s = thresholdScenario(4, 1, ProcessSet(4, {3}), {0, 1, 1, 0},
                                   seed);
        s.variant = Variant::Podc14;
        auto out = runConsensus(s);
        auto a = analyzeRun(s, out);
        EXPECT_TRUE(a.safe());
        decided += a.allWiseDecided() ? 1 : 0;
    }
    EXPECT_GT(decided, 20u);
}

TEST(Attack, Podc14NeverDecides)
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
    {
        auto out = runAttack(Variant::Podc14, seed, 100);
        EXPECT_FALSE(out.anyDecision);
        EXPECT_EQ(out.minRound, 100u);
        EXPECT_FALSE(out.abandonedAt);
        EXPECT_EQ(out.stalls, 0u);
        // The scripted pattern keeps p1 and p3 at B = {0,1}.
        for (auto const& v : checkSameBAfterCoin(out.trace, ProcessSet(4, {0, 1, 2})))
        {
            EXPECT_EQ(v.property, "same_b_after_coin");
        }
    }
}

TEST(Attack, FixedDecides)
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
    {
        auto out = runAttack(Variant::Fixed, seed, 100);
        EXPECT_TRUE(out.anyDecision);
        EXPECT_EQ(out.roundsAttacked, 0u);
        EXPECT_TRUE(
            checkSameBAfterCoin(out.trace, ProcessSet(4, {0, 1, 2})).empty())
            << "seed " << seed;
        for (ProcessId p = 0; p < 3; ++p)
        {
            EXPECT_TRUE(out.trace.progress[p].halted);
        }
    }
}
