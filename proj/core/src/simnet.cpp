// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "asymbft/simnet.hpp"

#include "asymbft/errors.hpp"

#include <algorithm>
#include <unordered_map>

namespace asymbft
{

namespace
{

TraceEvent
makeEvent(TraceEvent::Kind kind, std::uint64_t step, ProcessId process = 0,
          ProcessId peer = 0, std::uint64_t seq = 0, std::uint64_t envelope = 0)
{
    TraceEvent e{};
    e.kind = kind;
    e.step = step;
    e.process = process;
    e.peer = peer;
    e.seq = seq;
    e.envelope = envelope;
    return e;
}

} // namespace

void
Effects::send(ProcessId to, Payload p)
{
    if (to >= mN)
    {
        throw SimulationFault("send to unknown process " + std::to_string(to));
    }
    mSends.emplace_back(to, std::move(p));
}

void
Effects::sendAll(Payload const& p)
{
    for (ProcessId to = 0; to < mN; ++to)
    {
        mSends.emplace_back(to, p);
    }
}

void
Effects::output(Output o)
{
    mOutputs.push_back(std::move(o));
}

char const*
toString(TraceEvent::Kind k)
{
    switch (k)
    {
    case TraceEvent::Kind::Send:
        return "send";
    case TraceEvent::Kind::Deliver:
        return "deliver";
    case TraceEvent::Kind::Discard:
        return "discard";
    case TraceEvent::Kind::Output:
        return "output";
    case TraceEvent::Kind::Stall:
        return "stall";
    }
    return "?";
}

char const*
toString(Termination t)
{
    switch (t)
    {
    case Termination::AllHalted:
        return "all_halted";
    case Termination::Quiescent:
        return "quiescent";
    case Termination::Stopped:
        return "stopped";
    case Termination::MaxSteps:
        return "max_steps";
    }
    return "?";
}

std::uint64_t
Trace::maxMessagesPerRound() const
{
    std::uint64_t best = 0;
    for (auto const& [round, count] : messagesPerRound)
    {
        best = std::max(best, count);
    }
    return best;
}

void
AdversaryContext::send(ProcessId from, ProcessId to, Payload p)
{
    if (from >= mSim.universeSize() || !mSim.faulty().contains(from))
    {
        throw SimulationFault("adversary tried to send as correct process p" +
                              std::to_string(from + 1));
    }
    if (to >= mSim.universeSize())
    {
        throw SimulationFault("adversary sent to unknown process");
    }
    mSim.post(from, to, std::move(p));
}

void
AdversaryContext::sendAll(ProcessId from, Payload const& p)
{
    for (ProcessId to = 0; to < mSim.universeSize(); ++to)
    {
        send(from, to, p);
    }
}

std::optional<int>
AdversaryContext::coin(Round r) const
{
    if (!mSim.released(r) || !mSim.mConfig.coinValue)
    {
        return std::nullopt;
    }
    return mSim.mConfig.coinValue(r);
}

void
AdversaryContext::note(std::string text)
{
    mSim.recordStall(std::move(text));
}

Simulator::Simulator(SimConfig config,
                     std::vector<std::unique_ptr<NodeMachine>> machines,
                     Scheduler& scheduler, Adversary& adversary)
    : mConfig(std::move(config))
    , mMachines(std::move(machines))
    , mScheduler(scheduler)
    , mAdversary(adversary)
    , mContext(*this)
{
    std::size_t const n = mConfig.n;
    if (n == 0 || n > kMaxProcesses)
    {
        throw CapacityError("process count must be in [1, 64]");
    }
    if (mConfig.faulty.universeSize() == 0)
    {
        mConfig.faulty = ProcessSet(n);
    }
    if (mConfig.faulty.universeSize() != n || mMachines.size() != n)
    {
        throw std::invalid_argument("simulation config and machines disagree "
                                    "on the process count");
    }
    if (mConfig.maxSteps == 0)
    {
        throw std::invalid_argument("maxSteps must be positive");
    }
    for (ProcessId p = 0; p < n; ++p)
    {
        bool const isFaulty = mConfig.faulty.contains(p);
        if (isFaulty == (mMachines[p] != nullptr))
        {
            throw std::invalid_argument(
                "a machine is required exactly for each correct process");
        }
    }
    mNextSeq.assign(n * n, 0);
    mTrace.n = n;
    mTrace.faulty = mConfig.faulty;
    mTrace.progress.assign(n, ProcessProgress{});
}

void
Simulator::record(TraceEvent e)
{
    if (mConfig.recordEvents)
    {
        mTrace.events.push_back(std::move(e));
    }
}

void
Simulator::recordStall(std::string note)
{
    auto e = makeEvent(TraceEvent::Kind::Stall, mStep);
    e.note = std::move(note);
    record(std::move(e));
}

void
Simulator::post(ProcessId from, ProcessId to, Payload p)
{
    std::size_t const n = mConfig.n;
    Envelope env{mNextId++, from, to, mNextSeq[from * n + to]++, std::move(p),
                 mStep};

    auto sendEvent = makeEvent(TraceEvent::Kind::Send, mStep, from, to, env.seq,
                         env.id);
    sendEvent.payload = env.payload;
    record(std::move(sendEvent));

    if (!mConfig.faulty.contains(from))
    {
        Round const r =
            payloadRound(env.payload).value_or(mTrace.progress[from].round);
        ++mTrace.messagesPerRound[r];
    }

    if (mConfig.faulty.contains(to))
    {
        auto deliverEvent = makeEvent(TraceEvent::Kind::Deliver, mStep, to, from,
                                env.seq, env.id);
        deliverEvent.payload = env.payload;
        record(std::move(deliverEvent));
        mAdversaryInbox.push_back(std::move(env));
        drainAdversaryInbox();
        return;
    }
    mPending.push_back(std::move(env));
}

void
Simulator::drainAdversaryInbox()
{
    if (mDrainingInbox)
    {
        return;
    }
    mDrainingInbox = true;
    for (std::size_t k = 0; k < mAdversaryInbox.size(); ++k)
    {
        Envelope const env = mAdversaryInbox[k];
        mAdversary.onReceive(env, mContext);
    }
    mAdversaryInbox.clear();
    mDrainingInbox = false;
}

void
Simulator::apply(ProcessId self, Effects const& fx)
{
    for (auto const& [to, payload] : fx.sends())
    {
        post(self, to, payload);
    }
    auto& prog = mTrace.progress[self];
    for (auto const& out : fx.outputs())
    {
        if (auto const* rel = std::get_if<CoinReleased>(&out))
        {
            mReleased.insert(rel->round);
        }
        else if (auto const* adv = std::get_if<RoundAdvanced>(&out))
        {
            prog.round = adv->round + 1;
        }
        else if (auto const* dec = std::get_if<Decided>(&out))
        {
            if (!prog.decision)
            {
                prog.decision = dec->bit;
                prog.decisionRound = dec->round;
            }
            ++prog.decisions;
        }
        else if (std::holds_alternative<Halted>(out))
        {
            prog.halted = true;
        }
        auto e = makeEvent(TraceEvent::Kind::Output, mStep, self);
        e.output = out;
        record(std::move(e));
    }
}

void
Simulator::refreshDeliverable()
{
    mDeliverable.clear();
    if (!mConfig.fifo)
    {
        for (std::size_t k = 0; k < mPending.size(); ++k)
        {
            mDeliverable.push_back(k);
        }
        return;
    }
    std::size_t const n = mConfig.n;
    std::vector<char> seen(n * n, 0);
    for (std::size_t k = 0; k < mPending.size(); ++k)
    {
        auto& slot = seen[mPending[k].sender * n + mPending[k].receiver];
        if (!slot)
        {
            slot = 1;
            mDeliverable.push_back(k);
        }
    }
}

bool
Simulator::isDeliverable(std::size_t index) const
{
    return std::binary_search(mDeliverable.begin(), mDeliverable.end(), index);
}

bool
Simulator::allCorrectHalted() const
{
    for (ProcessId p = 0; p < mConfig.n; ++p)
    {
        if (mMachines[p] && !mMachines[p]->halted())
        {
            return false;
        }
    }
    return true;
}

Trace
Simulator::run()
{
    for (ProcessId p = 0; p < mConfig.n; ++p)
    {
        if (mMachines[p])
        {
            Effects fx(mConfig.n);
            mMachines[p]->start(fx);
            apply(p, fx);
        }
    }
    mAdversary.onStart(mContext);
    drainAdversaryInbox();

    while (true)
    {
        if (allCorrectHalted())
        {
            mTrace.terminated = Termination::AllHalted;
            break;
        }
        if (mConfig.stopWhen && mConfig.stopWhen(*this))
        {
            mTrace.terminated = Termination::Stopped;
            break;
        }
        if (mStep >= mConfig.maxSteps)
        {
            mTrace.terminated = Termination::MaxSteps;
            break;
        }
        mAdversary.onStep(mContext);
        drainAdversaryInbox();
        refreshDeliverable();
        auto const pick = mScheduler.pick(*this);
        if (!pick)
        {
            mTrace.terminated = Termination::Quiescent;
            break;
        }
        if (*pick >= mPending.size() || !isDeliverable(*pick))
        {
            throw SimulationFault("scheduler picked an envelope that is not "
                                  "deliverable");
        }
        Envelope env = std::move(mPending[*pick]);
        mPending.erase(mPending.begin() +
                       static_cast<std::ptrdiff_t>(*pick));
        ++mStep;

        auto& machine = mMachines[env.receiver];
        bool const halted = machine->halted();
        auto e = makeEvent(halted ? TraceEvent::Kind::Discard
                            : TraceEvent::Kind::Deliver,
                     mStep, env.receiver, env.sender, env.seq, env.id);
        e.payload = env.payload;
        record(std::move(e));
        if (!halted)
        {
            Effects fx(mConfig.n);
            machine->deliver(env.sender, env.payload, fx);
            apply(env.receiver, fx);
        }
    }
    mTrace.steps = mStep;
    return std::move(mTrace);
}

std::vector<std::string>
checkLinkContract(Trace const& trace, bool fifo)
{
    struct SendInfo
    {
        ProcessId sender;
        ProcessId receiver;
        std::uint64_t seq;
        bool delivered;
    };
    std::vector<std::string> out;
    std::unordered_map<std::uint64_t, SendInfo> sends;
    std::map<std::pair<ProcessId, ProcessId>, std::uint64_t> nextSeq;
    for (auto const& e : trace.events)
    {
        if (e.kind == TraceEvent::Kind::Send)
        {
            sends[e.envelope] = {e.process, e.peer, e.seq, false};
            continue;
        }
        if (e.kind != TraceEvent::Kind::Deliver &&
            e.kind != TraceEvent::Kind::Discard)
        {
            continue;
        }
        auto it = sends.find(e.envelope);
        if (it == sends.end() || it->second.delivered ||
            it->second.sender != e.peer || it->second.receiver != e.process)
        {
            out.push_back("delivery of envelope " +
                          std::to_string(e.envelope) + " at step " +
                          std::to_string(e.step) + " has no matching send");
            continue;
        }
        it->second.delivered = true;
        if (fifo && !trace.faulty.contains(e.process))
        {
            auto& expected = nextSeq[{e.peer, e.process}];
            if (e.seq < expected)
            {
                out.push_back("FIFO violated on p" +
                              std::to_string(e.peer + 1) + "->p" +
                              std::to_string(e.process + 1) + " at step " +
                              std::to_string(e.step));
            }
            expected = e.seq + 1;
        }
    }
    return out;
}

} // namespace asymbft
