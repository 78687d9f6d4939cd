// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "asymbft/messages.hpp"
#include "asymbft/process_set.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace asymbft
{

// An authenticated point-to-point message in flight. `seq` counts per
// ordered (sender, receiver) pair; `id` is global send order.
struct Envelope
{
    std::uint64_t id;
    ProcessId sender;
    ProcessId receiver;
    std::uint64_t seq;
    Payload payload;
    std::uint64_t sendStep;
};

// Sends and outputs collected from one machine callback.
class Effects
{
  public:
    explicit Effects(std::size_t n) : mN(n)
    {
    }

    std::size_t
    universeSize() const
    {
        return mN;
    }

    void send(ProcessId to, Payload p);
    // To every process, including the caller.
    void sendAll(Payload const& p);
    void output(Output o);

    std::vector<std::pair<ProcessId, Payload>> const&
    sends() const
    {
        return mSends;
    }
    std::vector<Output> const&
    outputs() const
    {
        return mOutputs;
    }

  private:
    std::size_t mN;
    std::vector<std::pair<ProcessId, Payload>> mSends;
    std::vector<Output> mOutputs;
};

// A deterministic per-process protocol state machine. Randomness, if any,
// must be injected as data (coin shares); machines never see the clock.
class NodeMachine
{
  public:
    virtual ~NodeMachine() = default;

    virtual void start(Effects& fx) = 0;
    virtual void deliver(ProcessId from, Payload const& payload,
                         Effects& fx) = 0;
    virtual bool halted() const = 0;
};

struct TraceEvent
{
    enum class Kind
    {
        Send,
        Deliver,
        Discard,
        Output,
        Stall
    };

    Kind kind;
    std::uint64_t step;
    // Sender for Send, receiver for Deliver/Discard, emitter for Output.
    ProcessId process{0};
    // Receiver for Send, sender for Deliver/Discard.
    ProcessId peer{0};
    std::uint64_t seq{0};
    std::uint64_t envelope{0};
    std::optional<Payload> payload;
    std::optional<Output> output;
    std::string note;
};

char const* toString(TraceEvent::Kind k);

// What the simulation ended on.
enum class Termination
{
    AllHalted,
    Quiescent,
    Stopped,
    MaxSteps
};

char const* toString(Termination t);

struct ProcessProgress
{
    Round round{0};
    std::optional<int> decision;
    std::optional<Round> decisionRound;
    bool halted{false};
    std::size_t decisions{0};
};

struct Trace
{
    std::size_t n{0};
    ProcessSet faulty;
    std::vector<TraceEvent> events;
    // Messages sent by correct processes, keyed by round tag. DECIDE, which
    // carries no tag, is charged to the sender's current round.
    std::map<Round, std::uint64_t> messagesPerRound;
    Termination terminated{Termination::Quiescent};
    std::uint64_t steps{0};
    std::vector<ProcessProgress> progress;

    std::uint64_t maxMessagesPerRound() const;
};

class Simulator;

class Scheduler
{
  public:
    virtual ~Scheduler() = default;
    // Index into sim.pending() of the next envelope to deliver, or nothing
    // to end the run as quiescent. Must return a deliverable index.
    virtual std::optional<std::size_t> pick(Simulator& sim) = 0;
};

// Capabilities granted to the Byzantine adversary: send from faulty
// identities, read everything in flight, and read a round's coin once a
// correct process has released it.
class AdversaryContext
{
  public:
    explicit AdversaryContext(Simulator& sim) : mSim(sim)
    {
    }

    Simulator const&
    sim() const
    {
        return mSim;
    }

    // Throws SimulationFault if `from` is correct.
    void send(ProcessId from, ProcessId to, Payload p);
    void sendAll(ProcessId from, Payload const& p);

    std::optional<int> coin(Round r) const;

    // Adds a stall record to the trace.
    void note(std::string text);

  private:
    Simulator& mSim;
};

class Adversary
{
  public:
    virtual ~Adversary() = default;
    virtual void
    onStart(AdversaryContext&)
    {
    }
    // Called for every envelope addressed to a faulty process, right when
    // it is sent.
    virtual void
    onReceive(Envelope const&, AdversaryContext&)
    {
    }
    // Called before every scheduling decision.
    virtual void
    onStep(AdversaryContext&)
    {
    }
};

// Faulty processes stay silent.
class SilentAdversary : public Adversary
{
};

struct SimConfig
{
    std::size_t n{0};
    ProcessSet faulty;
    bool fifo{true};
    std::uint64_t maxSteps{1'000'000};
    // Coin value of a round; exposed to the adversary only after release.
    std::function<int(Round)> coinValue;
    // Checked after every step.
    std::function<bool(Simulator const&)> stopWhen;
    bool recordEvents{true};
};

// Single-threaded discrete-event simulator. Envelopes addressed to faulty
// processes go straight to the adversary; all others wait in `pending` until
// the scheduler picks them.
class Simulator
{
  public:
    // machines[i] must be non-null exactly for correct processes.
    Simulator(SimConfig config,
              std::vector<std::unique_ptr<NodeMachine>> machines,
              Scheduler& scheduler, Adversary& adversary);

    Trace run();

    std::size_t
    universeSize() const
    {
        return mConfig.n;
    }
    ProcessSet const&
    faulty() const
    {
        return mConfig.faulty;
    }
    bool
    fifo() const
    {
        return mConfig.fifo;
    }
    std::uint64_t
    step() const
    {
        return mStep;
    }

    // Undelivered envelopes to correct processes, in send order.
    std::vector<Envelope> const&
    pending() const
    {
        return mPending;
    }
    // Indices into pending() that may be delivered now (all of them without
    // FIFO; the oldest per ordered pair with FIFO).
    std::vector<std::size_t> const&
    deliverable() const
    {
        return mDeliverable;
    }
    bool isDeliverable(std::size_t index) const;

    ProcessProgress const&
    progress(ProcessId p) const
    {
        return mTrace.progress.at(p);
    }
    bool
    released(Round r) const
    {
        return mReleased.count(r) != 0;
    }
    Trace const&
    trace() const
    {
        return mTrace;
    }
    NodeMachine const*
    machine(ProcessId p) const
    {
        return mMachines.at(p).get();
    }

    void recordStall(std::string note);

  private:
    friend class AdversaryContext;

    void post(ProcessId from, ProcessId to, Payload p);
    void apply(ProcessId self, Effects const& fx);
    void drainAdversaryInbox();
    void refreshDeliverable();
    void record(TraceEvent e);
    bool allCorrectHalted() const;

    SimConfig mConfig;
    std::vector<std::unique_ptr<NodeMachine>> mMachines;
    Scheduler& mScheduler;
    Adversary& mAdversary;
    AdversaryContext mContext;

    std::vector<Envelope> mPending;
    std::vector<std::size_t> mDeliverable;
    std::vector<Envelope> mAdversaryInbox;
    bool mDrainingInbox{false};
    std::vector<std::uint64_t> mNextSeq;
    std::uint64_t mNextId{0};
    std::uint64_t mStep{0};
    std::set<Round> mReleased;
    Trace mTrace;
};

// Checks that a trace respects the link contract: every delivery matches one
// earlier send, and, when fifo is set, deliveries on each ordered pair
// arrive in seq order. Returns a description per violation.
std::vector<std::string> checkLinkContract(Trace const& trace, bool fifo);

} // namespace asymbft
