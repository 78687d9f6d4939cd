// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "asymbft/attack.hpp"

#include <algorithm>
#include <array>

namespace asymbft
{

AttackDriver::AttackDriver(std::shared_ptr<CoinDeal const> deal,
                           ScriptedScheduler& scheduler, Round maxRounds)
    : mDeal(std::move(deal)), mScheduler(scheduler), mMaxRounds(maxRounds)
{
    mScheduler.setHoldWhenEmpty(true);
}

void
AttackDriver::script(ProcessId from, ProcessId to, char const* kind, int bit)
{
    mScheduler.append(ScriptEntry{from, to, kind, mRound, bit, 0});
}

std::optional<int>
AttackDriver::estimateOf(Simulator const& sim, ProcessId p) const
{
    auto const* m = dynamic_cast<ConsensusMachine const*>(sim.machine(p));
    if (!m || m->halted() || m->round() != mRound)
    {
        return std::nullopt;
    }
    return m->estimate();
}

void
AttackDriver::abandon(AdversaryContext& ctx, char const* reason)
{
    if (mPhase == Phase::Done)
    {
        return;
    }
    if (!mAbandonedAt)
    {
        mAbandonedAt = mRound;
    }
    ++mRoundsAbandoned;
    mPhase = Phase::Resync;
    mScheduler.clearScript();
    mScheduler.setHoldWhenEmpty(false);
    ctx.note("attack schedule abandoned in round " + std::to_string(mRound) +
             ": " + reason);
}

void
AttackDriver::startRound(Round r, AdversaryContext& ctx)
{
    mRound = r;
    Simulator const& sim = ctx.sim();
    if (r >= mMaxRounds || r >= mDeal->rounds())
    {
        mPhase = Phase::Done;
        mScheduler.setHoldWhenEmpty(false);
        return;
    }

    // Roles: the minority process becomes X; the previous X (if it holds
    // the majority) becomes Y.
    std::array<std::optional<int>, 3> est;
    for (ProcessId p = 0; p < 3; ++p)
    {
        est[p] = estimateOf(sim, p);
        if (!est[p])
        {
            abandon(ctx, "a process left the round");
            return;
        }
    }
    int const ones = *est[0] + *est[1] + *est[2];
    if (ones == 0 || ones == 3)
    {
        abandon(ctx, "estimates agree");
        return;
    }
    int const m = ones == 1 ? 1 : 0;
    int const a = 1 - m;
    ProcessId x = 0;
    while (*est[x] != m)
    {
        ++x;
    }
    ProcessId y;
    ProcessId z;
    if (r == 0 && x == 0)
    {
        y = 2;
        z = 1;
    }
    else if (mX != x && *est[mX] == a)
    {
        y = mX;
        z = 3 - x - y;
    }
    else
    {
        y = x == 0 ? 1 : 0;
        z = 3 - x - y;
    }
    mX = x;
    mY = y;
    mZ = z;
    mMinority = m;

    // Old-round leftovers are dropped by their receivers; deliver them so
    // they do not clog the links.
    for (auto const& env : sim.pending())
    {
        auto const tag = payloadRound(env.payload);
        if (tag && *tag < r)
        {
            mScheduler.append(ScriptEntry{env.sender, env.receiver,
                                          payloadKind(env.payload), tag,
                                          payloadBit(env.payload), 0});
        }
    }

    ProcessId const b = mByz;
    ctx.send(b, x, ValueMsg{r, a});
    ctx.send(b, y, ValueMsg{r, m});
    ctx.send(b, x, ValueMsg{r, m});
    ctx.send(b, y, ValueMsg{r, a});
    for (ProcessId to : {x, y})
    {
        ctx.send(b, to, AuxMsg{r, a});
        ctx.send(b, to, AuxMsg{r, m});
    }

    // X delivers a, then m.
    script(y, x, "VALUE", a);
    script(z, x, "VALUE", a);
    script(b, x, "VALUE", a);
    script(x, y, "VALUE", m);
    script(b, y, "VALUE", m);
    script(y, x, "VALUE", m);
    script(b, x, "VALUE", m);
    script(x, x, "VALUE", m);
    // Y delivers m, then a.
    script(y, y, "VALUE", m);
    script(y, y, "VALUE", a);
    script(b, y, "VALUE", a);
    script(z, y, "VALUE", a);
    // AUX orders that keep B from settling on a singleton.
    script(x, x, "AUX", a);
    script(y, x, "AUX", m);
    script(b, x, "AUX", a);
    script(b, x, "AUX", m);
    script(x, x, "AUX", m);
    script(y, x, "AUX", a);
    script(y, y, "AUX", m);
    script(x, y, "AUX", a);
    script(b, y, "AUX", a);
    script(b, y, "AUX", m);
    script(y, y, "AUX", a);
    script(x, y, "AUX", m);
    mPhase = Phase::AwaitCoin;
}

void
AttackDriver::onStep(AdversaryContext& ctx)
{
    if (mPhase == Phase::Done ||
        (mPhase != Phase::Resync && !mScheduler.scriptEmpty()))
    {
        return;
    }
    Simulator const& sim = ctx.sim();
    ProcessId const b = mByz;
    switch (mPhase)
    {
    case Phase::RoundStart:
        startRound(mRound, ctx);
        return;
    case Phase::AwaitCoin:
    {
        auto const s = ctx.coin(mRound);
        if (!s)
        {
            abandon(ctx, "coin not released");
            return;
        }
        int const ns = 1 - *s;
        if (ns == 1 - mMinority)
        {
            // Z holds not s already: three VALUE and three AUX messages.
            ctx.send(b, mZ, ValueMsg{mRound, ns});
            ctx.send(b, mZ, AuxMsg{mRound, ns});
            script(mY, mZ, "VALUE", ns);
            script(b, mZ, "VALUE", ns);
            script(mZ, mZ, "VALUE", ns);
            script(mX, mZ, "AUX", ns);
            script(b, mZ, "AUX", ns);
            script(mZ, mZ, "AUX", ns);
        }
        else
        {
            // Z must first echo and deliver the minority value.
            ctx.send(b, mZ, ValueMsg{mRound, ns});
            ctx.send(b, mZ, AuxMsg{mRound, ns});
            script(mX, mZ, "VALUE", ns);
            script(b, mZ, "VALUE", ns);
            script(mY, mZ, "VALUE", ns);
            script(mY, mZ, "AUX", ns);
            script(b, mZ, "AUX", ns);
            script(mZ, mZ, "AUX", ns);
        }
        mPhase = Phase::SteerLast;
        return;
    }
    case Phase::SteerLast:
    {
        for (auto const& [owner, msg] : coinShares(*mDeal, b, mRound))
        {
            if (!sim.faulty().contains(owner))
            {
                ctx.send(b, owner, msg);
            }
        }
        for (ProcessId to : {mZ, mX, mY})
        {
            for (auto const& env : sim.pending())
            {
                auto const* c = std::get_if<CoinMsg>(&env.payload);
                if (c && env.receiver == to && c->round == mRound)
                {
                    mScheduler.append(ScriptEntry{env.sender, to, "COIN",
                                                  mRound, c->share, 0});
                }
            }
        }
        mPhase = Phase::DeliverCoins;
        return;
    }
    case Phase::DeliverCoins:
        mPhase = Phase::AwaitNextRound;
        [[fallthrough]];
    case Phase::AwaitNextRound:
    {
        for (ProcessId p = 0; p < 3; ++p)
        {
            if (sim.progress(p).round != mRound + 1)
            {
                abandon(ctx, "a process did not advance");
                return;
            }
        }
        ++mRoundsAttacked;
        startRound(mRound + 1, ctx);
        return;
    }
    case Phase::Resync:
    {
        // Wait, under random scheduling, until the three correct processes
        // share a later round, then try the pattern again.
        Round const r = sim.progress(0).round;
        for (ProcessId p = 0; p < 3; ++p)
        {
            if (sim.progress(p).halted || sim.progress(p).decision)
            {
                mPhase = Phase::Done;
                return;
            }
            if (sim.progress(p).round != r)
            {
                return;
            }
        }
        if (r > mRound)
        {
            mPhase = Phase::RoundStart;
            mScheduler.setHoldWhenEmpty(true);
            startRound(r, ctx);
        }
        return;
    }
    case Phase::Done:
        return;
    }
}

ConsensusScenario
buildAttackScenario(Variant variant, std::uint64_t seed, Round maxRounds)
{
    ConsensusScenario s;
    s.failProne = thresholdSystem(4, 1);
    s.quorums = asymCanonicalQuorums(s.failProne);
    s.variant = variant;
    s.faulty = ProcessSet(4, {3});
    s.inputs = {0, 1, 1, 0};
    s.seed = seed;
    s.maxRounds = maxRounds;
    s.adversary = AdversaryKind::CoinPeeking;
    return s;
}

AttackOutcome
runAttack(Variant variant, std::uint64_t seed, Round maxRounds,
          bool recordEvents)
{
    ConsensusScenario s = buildAttackScenario(variant, seed, maxRounds);
    s.recordEvents = recordEvents;
    auto deal = std::make_shared<CoinDeal const>(
        CoinDeal::deal(s.quorums, maxRounds + 2, deriveSeed(seed, 1)));

    ScriptedScheduler scheduler(deriveSeed(seed, 0));
    AttackDriver driver(deal, scheduler, maxRounds);
    Simulator sim(consensusSimConfig(s, deal),
                  makeConsensusMachines(s, deal), scheduler, driver);

    AttackOutcome out;
    out.trace = sim.run();
    out.deal = deal;
    out.roundsAttacked = driver.roundsAttacked();
    out.abandonedAt = driver.abandonedAt();
    out.roundsAbandoned = driver.roundsAbandoned();
    out.stalls = scheduler.stalls();
    out.minRound = ~Round{0};
    for (ProcessId p = 0; p < 3; ++p)
    {
        auto const& prog = out.trace.progress[p];
        out.anyDecision = out.anyDecision || prog.decision.has_value();
        out.minRound = std::min(out.minRound, prog.round);
    }
    return out;
}

} // namespace asymbft
