// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "asymbft/consensus.hpp"
#include "asymbft/schedulers.hpp"

#include <optional>

namespace asymbft
{

// The liveness attack on four processes with threshold quorums (f = 1).
// p4 is Byzantine and controls the network; p1, p2, p3 propose 0, 1, 1.
//
// Each round, with one correct process X holding the minority estimate m
// and two (Y, Z) holding a = not m, the schedule:
//   1. gets X to deliver a and then m, and Y to deliver m and then a, so
//      both collect AUX sets that settle on B = {0,1} and release the coin;
//   2. reads the coin s and steers Z alone to a singleton B = {not s};
//   3. hands out the coin shares.
// X and Y then adopt s and Z keeps not s, so the next round starts split
// 2-1 again with Z as the new minority. The pattern repeats forever against
// the podc14 variant. With FIFO links the prescribed order is not
// available; when the schedule can no longer be followed the driver stops
// interfering, and p4 falls silent.
class AttackDriver : public Adversary
{
  public:
    AttackDriver(std::shared_ptr<CoinDeal const> deal,
                 ScriptedScheduler& scheduler, Round maxRounds);

    void onStep(AdversaryContext& ctx) override;

    // Rounds in which the full pattern was scripted.
    Round
    roundsAttacked() const
    {
        return mRoundsAttacked;
    }
    // The first round in which the pattern could not be completed.
    std::optional<Round>
    abandonedAt() const
    {
        return mAbandonedAt;
    }
    // Rounds in which the pattern broke down; after each, the driver waits
    // for the correct processes to meet in a later round and starts over.
    Round
    roundsAbandoned() const
    {
        return mRoundsAbandoned;
    }

  private:
    enum class Phase
    {
        RoundStart,
        AwaitCoin,
        SteerLast,
        DeliverCoins,
        AwaitNextRound,
        Resync,
        Done
    };

    void startRound(Round r, AdversaryContext& ctx);
    void abandon(AdversaryContext& ctx, char const* reason);
    void script(ProcessId from, ProcessId to, char const* kind, int bit);
    std::optional<int> estimateOf(Simulator const& sim, ProcessId p) const;

    std::shared_ptr<CoinDeal const> mDeal;
    ScriptedScheduler& mScheduler;
    Round mMaxRounds;
    ProcessId mByz{3};

    Phase mPhase{Phase::RoundStart};
    Round mRound{0};
    ProcessId mX{0};
    ProcessId mY{2};
    ProcessId mZ{1};
    int mMinority{0};
    Round mRoundsAttacked{0};
    std::optional<Round> mAbandonedAt;
    Round mRoundsAbandoned{0};
};

struct AttackOutcome
{
    Trace trace;
    std::shared_ptr<CoinDeal const> deal;
    Round roundsAttacked{0};
    std::optional<Round> abandonedAt;
    Round roundsAbandoned{0};
    std::size_t stalls{0};
    bool anyDecision{false};
    // Lowest round reached by a correct process at the end of the run.
    Round minRound{0};
};

// threshold(4, 1), faulty {p4}, inputs (0, 1, 1, -).
ConsensusScenario buildAttackScenario(Variant variant, std::uint64_t seed,
                                      Round maxRounds);

AttackOutcome runAttack(Variant variant, std::uint64_t seed,
                        Round maxRounds = 100, bool recordEvents = true);

} // namespace asymbft
