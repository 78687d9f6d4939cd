// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "asymbft/adversaries.hpp"

namespace asymbft
{

namespace
{

std::vector<ProcessId>
correctMembers(Simulator const& sim)
{
    return sim.faulty().complement().members();
}

} // namespace

EquivocatingAdversary::EquivocatingAdversary(
    std::shared_ptr<CoinDeal const> deal, std::uint64_t seed)
    : mDeal(std::move(deal)), mRng(seed)
{
}

int
EquivocatingAdversary::flip()
{
    return static_cast<int>(mRng() >> 63);
}

void
EquivocatingAdversary::onStart(AdversaryContext& ctx)
{
    engage(0, ctx);
}

void
EquivocatingAdversary::onReceive(Envelope const& env, AdversaryContext& ctx)
{
    if (ctx.sim().faulty().contains(env.sender))
    {
        return;
    }
    if (auto r = payloadRound(env.payload))
    {
        engage(*r, ctx);
    }
    if (std::holds_alternative<DecideMsg>(env.payload) && !mDecideSent)
    {
        mDecideSent = true;
        for (auto f : ctx.sim().faulty().members())
        {
            for (auto q : correctMembers(ctx.sim()))
            {
                ctx.send(f, q, DecideMsg{flip()});
            }
        }
    }
}

void
EquivocatingAdversary::engage(Round r, AdversaryContext& ctx)
{
    if (r >= mDeal->rounds() || !mEngaged.insert(r).second)
    {
        return;
    }
    for (auto f : ctx.sim().faulty().members())
    {
        for (auto q : correctMembers(ctx.sim()))
        {
            int const v = flip();
            ctx.send(f, q, ValueMsg{r, v});
            if (flip())
            {
                ctx.send(f, q, ValueMsg{r, 1 - v});
            }
            int const a = flip();
            ctx.send(f, q, AuxMsg{r, a});
            if (flip())
            {
                ctx.send(f, q, AuxMsg{r, 1 - a});
            }
        }
        for (auto [owner, msg] : coinShares(*mDeal, f, r))
        {
            if (!ctx.sim().faulty().contains(owner))
            {
                msg.share ^= flip();
                ctx.send(f, owner, msg);
            }
        }
    }
}

CoinPeekingAdversary::CoinPeekingAdversary(
    std::shared_ptr<CoinDeal const> deal)
    : mDeal(std::move(deal))
{
}

void
CoinPeekingAdversary::onStart(AdversaryContext& ctx)
{
    engage(0, ctx);
}

void
CoinPeekingAdversary::onReceive(Envelope const& env, AdversaryContext& ctx)
{
    if (ctx.sim().faulty().contains(env.sender))
    {
        return;
    }
    if (auto r = payloadRound(env.payload))
    {
        engage(*r, ctx);
    }
    if (auto const* d = std::get_if<DecideMsg>(&env.payload);
        d && !mDecideSent)
    {
        mDecideSent = true;
        for (auto f : ctx.sim().faulty().members())
        {
            for (auto q : correctMembers(ctx.sim()))
            {
                ctx.send(f, q, DecideMsg{1 - d->bit});
            }
        }
    }
}

void
CoinPeekingAdversary::onStep(AdversaryContext& ctx)
{
    for (auto r : mEngaged)
    {
        if (mPushed.count(r) != 0)
        {
            continue;
        }
        auto const s = ctx.coin(r);
        if (!s)
        {
            continue;
        }
        mPushed.insert(r);
        for (auto f : ctx.sim().faulty().members())
        {
            for (auto q : correctMembers(ctx.sim()))
            {
                ctx.send(f, q, AuxMsg{r, 1 - *s});
            }
            for (auto const& [owner, msg] : coinShares(*mDeal, f, r))
            {
                if (!ctx.sim().faulty().contains(owner))
                {
                    ctx.send(f, owner, msg);
                }
            }
        }
    }
}

void
CoinPeekingAdversary::engage(Round r, AdversaryContext& ctx)
{
    if (r >= mDeal->rounds() || !mEngaged.insert(r).second)
    {
        return;
    }
    for (auto f : ctx.sim().faulty().members())
    {
        for (auto q : correctMembers(ctx.sim()))
        {
            ctx.send(f, q, ValueMsg{r, 0});
            ctx.send(f, q, ValueMsg{r, 1});
        }
    }
}

std::unique_ptr<Adversary>
makeAdversary(AdversaryKind kind, std::shared_ptr<CoinDeal const> deal,
              std::uint64_t seed)
{
    switch (kind)
    {
    case AdversaryKind::Silent:
        return std::make_unique<SilentAdversary>();
    case AdversaryKind::Equivocating:
        return std::make_unique<EquivocatingAdversary>(std::move(deal), seed);
    case AdversaryKind::CoinPeeking:
        return std::make_unique<CoinPeekingAdversary>(std::move(deal));
    }
    return std::make_unique<SilentAdversary>();
}

} // namespace asymbft
