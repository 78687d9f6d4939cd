// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "asymbft/coin.hpp"

#include <bit>
#include <random>
#include <stdexcept>

namespace asymbft
{

CoinDeal
CoinDeal::deal(AsymQuorumSystem const& aq, Round rounds, std::uint64_t seed)
{
    if (rounds == 0)
    {
        throw std::invalid_argument("a coin deal needs at least one round");
    }
    CoinDeal d;
    d.mQuorums = aq;
    d.mRounds = rounds;
    std::size_t const n = aq.universeSize();
    d.mOffsets.resize(n);
    for (ProcessId i = 0; i < n; ++i)
    {
        d.mOffsets[i] = d.mSlotsPerRound;
        d.mSlotsPerRound += aq[i].size();
    }
    d.mCoins.resize(rounds);
    d.mOnes.resize(rounds * d.mSlotsPerRound);

    for (Round r = 0; r < rounds; ++r)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed),
                          static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(r),
                          static_cast<std::uint32_t>(r >> 32)};
        std::mt19937_64 rng(seq);
        int const coin = static_cast<int>(rng() >> 63);
        d.mCoins[r] = static_cast<std::uint8_t>(coin);
        std::size_t slot = r * d.mSlotsPerRound;
        for (ProcessId i = 0; i < n; ++i)
        {
            for (auto const& q : aq[i])
            {
                std::vector<ProcessId> const members = q.members();
                std::uint64_t ones = 0;
                int parity = 0;
                for (std::size_t m = 0; m + 1 < members.size(); ++m)
                {
                    int const bit = static_cast<int>(rng() >> 63);
                    parity ^= bit;
                    if (bit)
                    {
                        ones |= std::uint64_t{1} << members[m];
                    }
                }
                // The last share forces the XOR to the coin.
                if (!members.empty() && (parity ^ coin) != 0)
                {
                    ones |= std::uint64_t{1} << members.back();
                }
                d.mOnes[slot++] = ones;
            }
        }
    }
    return d;
}

int
CoinDeal::coinValue(Round r) const
{
    if (r >= mRounds)
    {
        throw std::out_of_range("round " + std::to_string(r) +
                                " was not dealt");
    }
    return mCoins[r];
}

std::size_t
CoinDeal::slot(ProcessId owner, std::size_t position) const
{
    if (owner >= mOffsets.size() || position >= mQuorums[owner].size())
    {
        throw std::out_of_range("no such quorum");
    }
    return mOffsets[owner] + position;
}

int
CoinDeal::share(Round r, ProcessId owner, std::size_t position,
                ProcessId member) const
{
    std::size_t const s = slot(owner, position);
    if (r >= mRounds)
    {
        throw std::out_of_range("round " + std::to_string(r) +
                                " was not dealt");
    }
    if (!mQuorums[owner][position].contains(member))
    {
        throw std::out_of_range("process is not a member of the quorum");
    }
    return static_cast<int>((mOnes[r * mSlotsPerRound + s] >> member) & 1u);
}

std::vector<std::pair<ProcessId, CoinMsg>>
coinShares(CoinDeal const& deal, ProcessId sender, Round r)
{
    std::vector<std::pair<ProcessId, CoinMsg>> out;
    auto const& aq = deal.quorums();
    for (ProcessId owner = 0; owner < aq.universeSize(); ++owner)
    {
        for (std::size_t k = 0; k < aq[owner].size(); ++k)
        {
            if (aq[owner][k].contains(sender))
            {
                out.push_back(
                    {owner,
                     CoinMsg{r, deal.share(r, owner, k, sender), owner, k}});
            }
        }
    }
    return out;
}

CoinInstance::CoinInstance(ProcessId self, SetFamily const& quorums,
                           Round round, CoinDeal const* authenticator)
    : mSelf(self)
    , mQuorums(&quorums)
    , mRound(round)
    , mAuthenticator(authenticator)
    , mHave(quorums.size(), 0)
    , mOnes(quorums.size(), 0)
{
}

void
CoinInstance::release(CoinDeal const& deal, Effects& fx)
{
    if (mReleased)
    {
        return;
    }
    mReleased = true;
    for (auto const& [to, msg] : coinShares(deal, mSelf, mRound))
    {
        fx.send(to, msg);
    }
}

std::optional<int>
CoinInstance::onShare(ProcessId sender, CoinMsg const& msg)
{
    if (msg.round != mRound || msg.owner != mSelf ||
        msg.position >= mQuorums->size())
    {
        return std::nullopt;
    }
    ProcessSet const& q = (*mQuorums)[msg.position];
    if (!q.contains(sender))
    {
        return std::nullopt;
    }
    if (mAuthenticator &&
        (msg.round >= mAuthenticator->rounds() ||
         mAuthenticator->share(msg.round, mSelf, msg.position, sender) !=
             msg.share))
    {
        return std::nullopt;
    }
    std::uint64_t const bit = std::uint64_t{1} << sender;
    if (mHave[msg.position] & bit)
    {
        return std::nullopt;
    }
    mHave[msg.position] |= bit;
    if (msg.share & 1)
    {
        mOnes[msg.position] |= bit;
    }
    if (mValue || mHave[msg.position] != q.bits())
    {
        return std::nullopt;
    }
    mValue = std::popcount(mOnes[msg.position]) & 1;
    return mValue;
}

} // namespace asymbft
