// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "asymbft/schedulers.hpp"

#include <limits>

namespace asymbft
{

std::uint64_t
uniformBelow(std::mt19937_64& rng, std::uint64_t bound)
{
    // Reject the top partial bucket to avoid modulo bias.
    std::uint64_t const limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % bound;
    while (true)
    {
        std::uint64_t const x = rng();
        if (x < limit)
        {
            return x % bound;
        }
    }
}

RandomFairScheduler::RandomFairScheduler(std::uint64_t seed,
                                         std::uint64_t fairnessBound)
    : mRng(seed), mFairnessBound(fairnessBound)
{
}

std::optional<std::size_t>
RandomFairScheduler::pick(Simulator& sim)
{
    auto const& ready = sim.deliverable();
    if (ready.empty())
    {
        return std::nullopt;
    }
    std::uint64_t const n = sim.universeSize();
    std::uint64_t const bound =
        mFairnessBound == 0 ? 10 * n * n : mFairnessBound;
    auto const& pending = sim.pending();
    std::optional<std::size_t> oldest;
    for (auto idx : ready)
    {
        if (sim.step() - pending[idx].sendStep > bound &&
            (!oldest || pending[idx].id < pending[*oldest].id))
        {
            oldest = idx;
        }
    }
    if (oldest)
    {
        return oldest;
    }
    return ready[uniformBelow(mRng, ready.size())];
}

bool
ScriptEntry::matches(Envelope const& e) const
{
    if (e.sender != sender || e.receiver != receiver ||
        payloadKind(e.payload) != kind)
    {
        return false;
    }
    if (round && payloadRound(e.payload) != round)
    {
        return false;
    }
    if (bit && payloadBit(e.payload) != bit)
    {
        return false;
    }
    return true;
}

std::string
ScriptEntry::toString() const
{
    std::string out = kind + " p" + std::to_string(sender + 1) + "->p" +
                      std::to_string(receiver + 1);
    if (round)
    {
        out += " r=" + std::to_string(*round);
    }
    if (bit)
    {
        out += " b=" + std::to_string(*bit);
    }
    if (occurrence != 0)
    {
        out += " #" + std::to_string(occurrence);
    }
    return out;
}

ScriptedScheduler::ScriptedScheduler(std::uint64_t fallbackSeed,
                                     std::vector<ScriptEntry> script)
    : mScript(script.begin(), script.end()), mFallback(fallbackSeed)
{
}

std::optional<std::size_t>
ScriptedScheduler::pick(Simulator& sim)
{
    auto const& pending = sim.pending();
    while (!mScript.empty())
    {
        ScriptEntry const& entry = mScript.front();
        std::size_t skip = entry.occurrence;
        std::optional<std::size_t> found;
        for (std::size_t k = 0; k < pending.size(); ++k)
        {
            if (entry.matches(pending[k]) && skip-- == 0)
            {
                found = k;
                break;
            }
        }
        if (!found)
        {
            sim.recordStall("no envelope for script entry " +
                            entry.toString());
            ++mStalls;
            mScript.pop_front();
            continue;
        }
        if (sim.isDeliverable(*found))
        {
            mScript.pop_front();
            return found;
        }
        // FIFO: release the head of the same link first. If the head also
        // matches, the entry's target moves one place closer.
        for (std::size_t k = 0; k < *found; ++k)
        {
            if (pending[k].sender == pending[*found].sender &&
                pending[k].receiver == pending[*found].receiver)
            {
                if (entry.matches(pending[k]))
                {
                    --mScript.front().occurrence;
                }
                return k;
            }
        }
        return found;
    }
    if (mHold)
    {
        return std::nullopt;
    }
    return mFallback.pick(sim);
}

} // namespace asymbft
