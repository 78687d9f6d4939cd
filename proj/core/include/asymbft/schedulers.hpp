// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "asymbft/simnet.hpp"

#include <deque>
#include <random>

namespace asymbft
{

// Uniform integer in [0, bound) from raw generator output, so results do not
// depend on the standard library's distribution implementation.
std::uint64_t uniformBelow(std::mt19937_64& rng, std::uint64_t bound);

// Picks uniformly among deliverable envelopes. An envelope that has waited
// more than the fairness bound (in steps) takes priority, oldest first, so
// every envelope is eventually delivered.
class RandomFairScheduler : public Scheduler
{
  public:
    // fairnessBound = 0 selects the default of 10 n^2.
    explicit RandomFairScheduler(std::uint64_t seed,
                                 std::uint64_t fairnessBound = 0);

    std::optional<std::size_t> pick(Simulator& sim) override;

  private:
    std::mt19937_64 mRng;
    std::uint64_t mFairnessBound;
};

// Selects one envelope by sender, receiver and payload shape. Unset fields
// match anything. `occurrence` skips that many older matching envelopes.
struct ScriptEntry
{
    ProcessId sender;
    ProcessId receiver;
    std::string kind;
    std::optional<Round> round;
    std::optional<int> bit;
    std::size_t occurrence{0};

    bool matches(Envelope const& e) const;
    std::string toString() const;
};

// Delivers script entries in order. An entry matching no pending envelope is
// recorded as a stall and dropped. With FIFO links, an entry whose envelope
// is queued behind others on the same link first releases those. When the
// script is empty the random-fair fallback takes over.
class ScriptedScheduler : public Scheduler
{
  public:
    explicit ScriptedScheduler(std::uint64_t fallbackSeed,
                               std::vector<ScriptEntry> script = {});

    void
    append(ScriptEntry e)
    {
        mScript.push_back(std::move(e));
    }
    bool
    scriptEmpty() const
    {
        return mScript.empty();
    }
    void
    clearScript()
    {
        mScript.clear();
    }
    std::size_t
    stalls() const
    {
        return mStalls;
    }

    // When set, an empty script ends the run instead of falling back.
    void
    setHoldWhenEmpty(bool hold)
    {
        mHold = hold;
    }

    std::optional<std::size_t> pick(Simulator& sim) override;

  private:
    std::deque<ScriptEntry> mScript;
    RandomFairScheduler mFallback;
    std::size_t mStalls{0};
    bool mHold{false};
};

} // namespace asymbft
