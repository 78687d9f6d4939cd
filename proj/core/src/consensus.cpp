// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "asymbft/consensus.hpp"

#include "asymbft/adversaries.hpp"
#include "asymbft/errors.hpp"
#include "asymbft/schedulers.hpp"

#include <stdexcept>

namespace asymbft
{

char const*
toString(Variant v)
{
    return v == Variant::Fixed ? "fixed" : "podc14";
}

Variant
parseVariant(std::string const& text)
{
    if (text == "fixed")
    {
        return Variant::Fixed;
    }
    if (text == "podc14")
    {
        return Variant::Podc14;
    }
    throw std::invalid_argument("unknown variant '" + text +
                                "' (expected fixed or podc14)");
}

VariantFlags
VariantFlags::forVariant(Variant v)
{
    if (v == Variant::Fixed)
    {
        return {true, true, true};
    }
    return {false, false, false};
}

char const*
toString(AdversaryKind k)
{
    switch (k)
    {
    case AdversaryKind::Silent:
        return "silent";
    case AdversaryKind::Equivocating:
        return "equivocating";
    case AdversaryKind::CoinPeeking:
        return "coin_peeking";
    }
    return "?";
}

AdversaryKind
parseAdversaryKind(std::string const& text)
{
    if (text == "silent")
    {
        return AdversaryKind::Silent;
    }
    if (text == "equivocating")
    {
        return AdversaryKind::Equivocating;
    }
    if (text == "coin_peeking")
    {
        return AdversaryKind::CoinPeeking;
    }
    throw std::invalid_argument("unknown adversary '" + text + "'");
}

ConsensusMachine::ConsensusMachine(
    ProcessId self, std::shared_ptr<AsymQuorumSystem const> quorums,
    std::shared_ptr<CoinDeal const> deal, VariantFlags flags, int input)
    : mSelf(self)
    , mN(quorums->universeSize())
    , mSystem(std::move(quorums))
    , mQuorums((*mSystem)[self])
    , mDeal(std::move(deal))
    , mFlags(flags)
    , mInput(input)
    , mAux(mN)
    , mDecided(mN)
{
    if (input != 0 && input != 1)
    {
        throw std::invalid_argument("consensus input must be 0 or 1");
    }
}

void
ConsensusMachine::start(Effects& fx)
{
    fx.output(Proposed{mInput});
    enterRound(0, mInput, fx);
}

void
ConsensusMachine::enterRound(Round r, int estimate, Effects& fx)
{
    mRound = r;
    mEstimate = estimate;
    mValues = BinValues{};
    mAux.assign(mN, BinValues{});
    mAbv.emplace(mQuorums, r);
    mCoin.emplace(mSelf, mQuorums, r, mDeal.get());
    mReleaseB.reset();
    mAbv->broadcast(estimate, fx);

    // Replay what arrived early for this round, in arrival order.
    std::vector<std::pair<ProcessId, Payload>> ready;
    std::vector<std::pair<ProcessId, Payload>> later;
    for (auto& item : mFuture)
    {
        Round const tag = *payloadRound(item.second);
        if (tag == r)
        {
            ready.push_back(std::move(item));
        }
        else if (tag > r)
        {
            later.push_back(std::move(item));
        }
    }
    mFuture = std::move(later);
    for (auto const& [from, payload] : ready)
    {
        if (mHalted)
        {
            break;
        }
        if (mRound != r)
        {
            // A replayed message already moved us on; the rest is stale.
            break;
        }
        onCurrentRound(from, payload, fx);
    }
    checkGuards(fx);
}

void
ConsensusMachine::deliver(ProcessId from, Payload const& payload, Effects& fx)
{
    if (mHalted)
    {
        return;
    }
    if (auto const* d = std::get_if<DecideMsg>(&payload))
    {
        onDecide(from, d->bit, fx);
        return;
    }
    auto const tag = payloadRound(payload);
    if (!tag || *tag < mRound)
    {
        return;
    }
    if (*tag > mRound)
    {
        mFuture.emplace_back(from, payload);
        return;
    }
    onCurrentRound(from, payload, fx);
}

void
ConsensusMachine::onCurrentRound(ProcessId from, Payload const& payload,
                                 Effects& fx)
{
    if (auto const* v = std::get_if<ValueMsg>(&payload))
    {
        for (int b : mAbv->onValue(from, v->bit, fx))
        {
            mValues.add(b);
            fx.output(AbvDelivered{mRound, b});
            fx.sendAll(AuxMsg{mRound, b});
        }
    }
    else if (auto const* a = std::get_if<AuxMsg>(&payload))
    {
        if (a->bit == 0 || a->bit == 1)
        {
            mAux[from].add(a->bit);
        }
    }
    else if (auto const* c = std::get_if<CoinMsg>(&payload))
    {
        if (auto s = mCoin->onShare(from, *c))
        {
            fx.output(CoinOutput{mRound, *s});
        }
    }
    checkGuards(fx);
}

bool
ConsensusMachine::releaseGuard()
{
    if (mFlags.dynamicB)
    {
        ProcessSet s(mN);
        for (ProcessId j = 0; j < mN; ++j)
        {
            if (!mAux[j].empty() && mAux[j].isSubsetOf(mValues))
            {
                s.insert(j);
            }
        }
        return mQuorums.hasMemberWithin(s);
    }
    for (BinValues b : {BinValues::of(0), BinValues::of(1), BinValues::both()})
    {
        if (!b.isSubsetOf(mValues))
        {
            continue;
        }
        ProcessSet s(mN);
        for (ProcessId j = 0; j < mN; ++j)
        {
            if (mAux[j] == b)
            {
                s.insert(j);
            }
        }
        if (mQuorums.hasMemberWithin(s))
        {
            mReleaseB = b;
            return true;
        }
    }
    return false;
}

std::optional<BinValues>
ConsensusMachine::liveB() const
{
    for (auto const& q : mQuorums)
    {
        auto const members = q.members();
        if (members.empty())
        {
            continue;
        }
        BinValues const b = mAux[members.front()];
        if (b.empty() || !b.isSubsetOf(mValues))
        {
            continue;
        }
        bool same = true;
        for (auto j : members)
        {
            if (mAux[j] != b)
            {
                same = false;
                break;
            }
        }
        if (same)
        {
            return b;
        }
    }
    return std::nullopt;
}

void
ConsensusMachine::checkGuards(Effects& fx)
{
    if (mHalted)
    {
        return;
    }
    if (!mCoin->released())
    {
        // Rounds beyond the dealt coins cannot release.
        if (mRound >= mDeal->rounds() || !releaseGuard())
        {
            return;
        }
        mCoin->release(*mDeal, fx);
        fx.output(CoinReleased{mRound});
    }
    auto const s = mCoin->value();
    if (!s)
    {
        return;
    }
    std::optional<BinValues> b = mFlags.dynamicB ? liveB() : mReleaseB;
    if (!b)
    {
        return;
    }
    advance(*b, *s, fx);
}

void
ConsensusMachine::advance(BinValues b, int s, Effects& fx)
{
    Round const r = mRound;
    int estimate = s;
    if (b.size() == 1)
    {
        estimate = b.single();
        if (estimate == s)
        {
            if (mFlags.decideAmplification)
            {
                if (!mSentDecide)
                {
                    mSentDecide = true;
                    fx.sendAll(DecideMsg{estimate});
                }
            }
            else if (!mDecision)
            {
                mDecision = estimate;
                fx.output(Decided{estimate, r});
            }
        }
    }
    fx.output(RoundAdvanced{r, b, s, estimate});
    enterRound(r + 1, estimate, fx);
}

void
ConsensusMachine::onDecide(ProcessId from, int bit, Effects& fx)
{
    if (!mFlags.decideAmplification || (bit != 0 && bit != 1) ||
        mDecided[from])
    {
        return;
    }
    mDecided[from] = bit;
    ProcessSet senders(mN);
    for (ProcessId j = 0; j < mN; ++j)
    {
        if (mDecided[j] == bit)
        {
            senders.insert(j);
        }
    }
    if (!mSentDecide && isKernel(senders, mQuorums))
    {
        mSentDecide = true;
        fx.sendAll(DecideMsg{bit});
    }
    if (mQuorums.hasMemberWithin(senders))
    {
        mDecision = bit;
        mHalted = true;
        fx.output(Decided{bit, mRound});
        fx.output(Halted{});
    }
}

std::uint64_t
deriveSeed(std::uint64_t seed, std::uint64_t stream)
{
    // splitmix64 over (seed, stream).
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::vector<std::unique_ptr<NodeMachine>>
makeConsensusMachines(ConsensusScenario const& s,
                      std::shared_ptr<CoinDeal const> const& deal)
{
    std::size_t const n = s.quorums.universeSize();
    if (s.inputs.size() != n)
    {
        throw std::invalid_argument("expected one input per process");
    }
    auto const system = std::make_shared<AsymQuorumSystem const>(s.quorums);
    VariantFlags const flags = VariantFlags::forVariant(s.variant);
    std::vector<std::unique_ptr<NodeMachine>> machines(n);
    for (ProcessId p = 0; p < n; ++p)
    {
        if (!s.faulty.contains(p))
        {
            machines[p] = std::make_unique<ConsensusMachine>(
                p, system, deal, flags, s.inputs[p]);
        }
    }
    return machines;
}

SimConfig
consensusSimConfig(ConsensusScenario const& s,
                   std::shared_ptr<CoinDeal const> const& deal)
{
    SimConfig cfg;
    cfg.n = s.quorums.universeSize();
    cfg.faulty = s.faulty;
    cfg.fifo = VariantFlags::forVariant(s.variant).fifoLinks;
    cfg.maxSteps = s.maxSteps;
    cfg.recordEvents = s.recordEvents;
    cfg.coinValue = [deal](Round r) { return deal->coinValue(r); };
    Round const cap = s.maxRounds;
    cfg.stopWhen = [cap](Simulator const& sim) {
        for (ProcessId p = 0; p < sim.universeSize(); ++p)
        {
            if (sim.faulty().contains(p))
            {
                continue;
            }
            auto const& prog = sim.progress(p);
            if (!prog.halted && !prog.decision && prog.round < cap)
            {
                return false;
            }
        }
        return true;
    };
    return cfg;
}

ConsensusOutcome
runConsensus(ConsensusScenario const& s)
{
    std::size_t const n = s.quorums.universeSize();
    ProcessSet const faulty =
        s.faulty.universeSize() == 0 ? ProcessSet(n) : s.faulty;
    ConsensusScenario scenario = s;
    scenario.faulty = faulty;

    ConsensusOutcome out;
    out.classification = classify(s.failProne, s.quorums, faulty);
    // Two spare rounds so that processes reaching the cap can still finish.
    auto deal = std::make_shared<CoinDeal const>(
        CoinDeal::deal(s.quorums, s.maxRounds + 2, deriveSeed(s.seed, 1)));
    out.deal = deal;

    RandomFairScheduler scheduler(deriveSeed(s.seed, 0), s.fairnessBound);
    auto adversary = makeAdversary(s.adversary, deal, deriveSeed(s.seed, 2));
    Simulator sim(consensusSimConfig(scenario, deal),
                  makeConsensusMachines(scenario, deal), scheduler,
                  *adversary);
    out.trace = sim.run();
    return out;
}

} // namespace asymbft
