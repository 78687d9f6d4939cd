// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "asymbft/bvbroadcast.hpp"

namespace asymbft
{

AbvInstance::AbvInstance(SetFamily const& quorums, Round round)
    : mQuorums(&quorums)
    , mRound(round)
    , mHolders{ProcessSet(quorums.universeSize()),
               ProcessSet(quorums.universeSize())}
{
}

void
AbvInstance::broadcast(int b, Effects& fx)
{
    if (mSent[b])
    {
        return;
    }
    mSent[b] = true;
    fx.sendAll(ValueMsg{mRound, b});
}

std::vector<int>
AbvInstance::onValue(ProcessId sender, int b, Effects& fx)
{
    std::vector<int> out;
    if (b != 0 && b != 1)
    {
        return out;
    }
    mHolders[b].insert(sender);
    if (!mSent[b] && isKernel(mHolders[b], *mQuorums))
    {
        broadcast(b, fx);
    }
    if (!mDelivered[b] && mQuorums->hasMemberWithin(mHolders[b]))
    {
        mDelivered[b] = true;
        out.push_back(b);
    }
    return out;
}

AbvMachine::AbvMachine(SetFamily quorums, std::optional<int> input)
    : mQuorums(std::move(quorums)), mInput(input), mInstance(mQuorums, 0)
{
}

void
AbvMachine::start(Effects& fx)
{
    if (mInput)
    {
        mInstance.broadcast(*mInput, fx);
    }
}

void
AbvMachine::deliver(ProcessId from, Payload const& payload, Effects& fx)
{
    auto const* v = std::get_if<ValueMsg>(&payload);
    if (!v || v->round != 0)
    {
        return;
    }
    for (int b : mInstance.onValue(from, v->bit, fx))
    {
        fx.output(AbvDelivered{0, b});
    }
}

} // namespace asymbft
