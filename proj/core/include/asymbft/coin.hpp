// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "asymbft/messages.hpp"
#include "asymbft/quorums.hpp"
#include "asymbft/simnet.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace asymbft
{

// Shares predistributed by a trusted dealer. For every round, every process
// i and every quorum Q_{i,k}, each member of Q_{i,k} holds one share bit and
// the XOR of the shares of Q_{i,k} is the round's coin.
class CoinDeal
{
  public:
    // Rounds 0 .. rounds-1. The generator is seeded per round from (seed,
    // round), so a round's coin does not depend on how many rounds are dealt.
    static CoinDeal deal(AsymQuorumSystem const& aq, Round rounds,
                         std::uint64_t seed);

    Round
    rounds() const
    {
        return mRounds;
    }
    AsymQuorumSystem const&
    quorums() const
    {
        return mQuorums;
    }

    int coinValue(Round r) const;

    // Share of `member` for quorum `position` of `owner`. Throws
    // std::out_of_range unless member belongs to that quorum.
    int share(Round r, ProcessId owner, std::size_t position,
              ProcessId member) const;

  private:
    std::size_t slot(ProcessId owner, std::size_t position) const;

    AsymQuorumSystem mQuorums;
    Round mRounds{0};
    // mOffsets[owner] = index of Q_{owner,0} within a round's slots.
    std::vector<std::size_t> mOffsets;
    std::size_t mSlotsPerRound{0};
    std::vector<std::uint8_t> mCoins;
    // Per (round, slot): members whose share is 1.
    std::vector<std::uint64_t> mOnes;
};

// COIN messages process `sender` owes for round r: one per (owner, quorum)
// pair whose quorum contains the sender, addressed to the owner.
std::vector<std::pair<ProcessId, CoinMsg>>
coinShares(CoinDeal const& deal, ProcessId sender, Round r);

// One process's coin for one round. When given the deal, shares are
// checked against it, which stands in for the dealer's authentication: a
// share whose bit differs from the dealt one is dropped.
class CoinInstance
{
  public:
    CoinInstance(ProcessId self, SetFamily const& quorums, Round round,
                 CoinDeal const* authenticator = nullptr);

    Round
    round() const
    {
        return mRound;
    }
    bool
    released() const
    {
        return mReleased;
    }
    std::optional<int>
    value() const
    {
        return mValue;
    }

    // Sends this process's shares; a second call does nothing.
    void release(CoinDeal const& deal, Effects& fx);

    // Stores the first share per (quorum, sender); ignores shares for other
    // rounds, unknown quorums, senders outside the quorum and shares that
    // fail authentication. Returns the coin the first time some quorum is
    // complete.
    std::optional<int> onShare(ProcessId sender, CoinMsg const& msg);

  private:
    ProcessId mSelf;
    SetFamily const* mQuorums;
    Round mRound;
    CoinDeal const* mAuthenticator;
    bool mReleased{false};
    std::optional<int> mValue;
    std::vector<std::uint64_t> mHave;
    std::vector<std::uint64_t> mOnes;
};

} // namespace asymbft
