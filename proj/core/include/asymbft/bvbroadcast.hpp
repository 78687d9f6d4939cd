// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "asymbft/messages.hpp"
#include "asymbft/quorums.hpp"
#include "asymbft/simnet.hpp"

#include <array>
#include <vector>

namespace asymbft
{

// Binary validated broadcast, one instance per (process, round). A bit is
// echoed once its VALUE senders form a kernel for this process and
// delivered once they contain a quorum. With threshold quorums this is the
// usual f+1 / 2f+1 counting.
class AbvInstance
{
  public:
    AbvInstance(SetFamily const& quorums, Round round);

    Round
    round() const
    {
        return mRound;
    }
    bool
    sent(int b) const
    {
        return mSent[b];
    }
    bool
    delivered(int b) const
    {
        return mDelivered[b];
    }
    ProcessSet const&
    holders(int b) const
    {
        return mHolders[b];
    }

    // Sends VALUE(b) to all unless already sent.
    void broadcast(int b, Effects& fx);

    // Records VALUE(b) from sender and applies the echo and delivery rules.
    // Returns the bits delivered by this call (at most one).
    std::vector<int> onValue(ProcessId sender, int b, Effects& fx);

  private:
    SetFamily const* mQuorums;
    Round mRound;
    std::array<bool, 2> mSent{};
    std::array<bool, 2> mDelivered{};
    std::array<ProcessSet, 2> mHolders;
};

// Stand-alone machine running a single instance (round 0): broadcasts its
// input, if any, and reports deliveries as AbvDelivered outputs.
class AbvMachine : public NodeMachine
{
  public:
    AbvMachine(SetFamily quorums, std::optional<int> input);

    void start(Effects& fx) override;
    void deliver(ProcessId from, Payload const& payload,
                 Effects& fx) override;
    bool
    halted() const override
    {
        return false;
    }

  private:
    SetFamily mQuorums;
    std::optional<int> mInput;
    AbvInstance mInstance;
};

} // namespace asymbft
