// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "asymbft/bvbroadcast.hpp"
#include "asymbft/coin.hpp"
#include "asymbft/quorums.hpp"
#include "asymbft/simnet.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace asymbft
{

enum class Variant
{
    // FIFO links, B re-evaluated after the coin, DECIDE amplification and
    // halting.
    Fixed,
    // The original round structure: B chosen once at coin release, the
    // decision output in-round, no DECIDE messages, no halting, no FIFO.
    Podc14
};

char const* toString(Variant v);
Variant parseVariant(std::string const& text);

struct VariantFlags
{
    bool fifoLinks;
    bool dynamicB;
    bool decideAmplification;

    static VariantFlags forVariant(Variant v);
};

// Randomized binary consensus for one process.
//
// Each round runs a binary validated broadcast of the estimate, then
// AUX(round, b) for each delivered bit. The coin is released once the AUX
// senders whose reported bits are all in `values` contain a quorum. The
// round ends on the coin value s and a set B such that every member of some
// quorum reported exactly B (B nonempty and within `values`). A singleton
// B = {s} triggers DECIDE; deciding needs a quorum of matching DECIDEs.
//
// Messages for later rounds are buffered until the process gets there;
// messages for earlier rounds are dropped.
class ConsensusMachine : public NodeMachine
{
  public:
    ConsensusMachine(ProcessId self,
                     std::shared_ptr<AsymQuorumSystem const> quorums,
                     std::shared_ptr<CoinDeal const> deal, VariantFlags flags,
                     int input);

    void start(Effects& fx) override;
    void deliver(ProcessId from, Payload const& payload,
                 Effects& fx) override;
    bool
    halted() const override
    {
        return mHalted;
    }

    Round
    round() const
    {
        return mRound;
    }
    BinValues
    values() const
    {
        return mValues;
    }
    BinValues
    aux(ProcessId j) const
    {
        return mAux.at(j);
    }
    bool
    sentDecide() const
    {
        return mSentDecide;
    }
    std::optional<int>
    decision() const
    {
        return mDecision;
    }
    // The value this process abv-broadcast for the current round.
    int
    estimate() const
    {
        return mEstimate;
    }

  private:
    void enterRound(Round r, int estimate, Effects& fx);
    void onCurrentRound(ProcessId from, Payload const& payload, Effects& fx);
    void checkGuards(Effects& fx);
    bool releaseGuard();
    std::optional<BinValues> liveB() const;
    void advance(BinValues b, int s, Effects& fx);
    void onDecide(ProcessId from, int bit, Effects& fx);

    ProcessId mSelf;
    std::size_t mN;
    std::shared_ptr<AsymQuorumSystem const> mSystem;
    SetFamily const& mQuorums;
    std::shared_ptr<CoinDeal const> mDeal;
    VariantFlags mFlags;
    int mInput;

    Round mRound{0};
    int mEstimate{0};
    BinValues mValues;
    std::vector<BinValues> mAux;
    std::optional<AbvInstance> mAbv;
    std::optional<CoinInstance> mCoin;
    // The B picked at release when B is not dynamic.
    std::optional<BinValues> mReleaseB;
    std::vector<std::pair<ProcessId, Payload>> mFuture;

    std::vector<std::optional<int>> mDecided;
    bool mSentDecide{false};
    bool mHalted{false};
    std::optional<int> mDecision;
};

enum class AdversaryKind
{
    Silent,
    Equivocating,
    CoinPeeking
};

char const* toString(AdversaryKind k);
AdversaryKind parseAdversaryKind(std::string const& text);

struct ConsensusScenario
{
    AsymFailProneSystem failProne;
    AsymQuorumSystem quorums;
    Variant variant{Variant::Fixed};
    ProcessSet faulty;
    // One input per process; entries for faulty processes are ignored.
    std::vector<int> inputs;
    std::uint64_t seed{0};
    Round maxRounds{50};
    AdversaryKind adversary{AdversaryKind::Silent};
    std::uint64_t maxSteps{1'000'000};
    std::uint64_t fairnessBound{0};
    bool recordEvents{true};
};

struct ConsensusOutcome
{
    Trace trace;
    Classification classification;
    std::shared_ptr<CoinDeal const> deal;
};

// Independent stream derived from a run seed.
std::uint64_t deriveSeed(std::uint64_t seed, std::uint64_t stream);

// Machines for all correct processes of a scenario.
std::vector<std::unique_ptr<NodeMachine>>
makeConsensusMachines(ConsensusScenario const& s,
                      std::shared_ptr<CoinDeal const> const& deal);

// Runs one seeded execution under a random-fair scheduler. The run stops
// once every correct process has halted, decided (when it never halts) or
// reached maxRounds.
ConsensusOutcome runConsensus(ConsensusScenario const& s);

SimConfig consensusSimConfig(ConsensusScenario const& s,
                             std::shared_ptr<CoinDeal const> const& deal);

} // namespace asymbft
