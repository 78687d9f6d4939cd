// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "asymbft/checks.hpp"

#include <map>
#include <set>

namespace asymbft
{

namespace
{

std::string
name(ProcessId p)
{
    return "p" + std::to_string(p + 1);
}

} // namespace

std::vector<Violation>
checkCoinMatching(Trace const& trace, CoinDeal const& deal,
                  ProcessSet const& processes)
{
    std::vector<Violation> out;
    for (auto const& e : trace.events)
    {
        if (e.kind != TraceEvent::Kind::Output || !processes.contains(e.process))
        {
            continue;
        }
        auto const* c = std::get_if<CoinOutput>(&*e.output);
        if (c && c->value != deal.coinValue(c->round))
        {
            out.push_back({"coin_matching",
                           name(e.process) + " output coin " +
                               std::to_string(c->value) + " in round " +
                               std::to_string(c->round) + ", dealt " +
                               std::to_string(deal.coinValue(c->round))});
        }
    }
    return out;
}

std::vector<Violation>
checkSameBAfterCoin(Trace const& trace, ProcessSet const& processes)
{
    std::map<Round, std::vector<std::pair<ProcessId, BinValues>>> byRound;
    for (auto const& e : trace.events)
    {
        if (e.kind != TraceEvent::Kind::Output || !processes.contains(e.process))
        {
            continue;
        }
        if (auto const* a = std::get_if<RoundAdvanced>(&*e.output))
        {
            byRound[a->round].emplace_back(e.process, a->b);
        }
    }
    std::vector<Violation> out;
    for (auto const& [round, entries] : byRound)
    {
        bool anyBoth = false;
        for (auto const& [p, b] : entries)
        {
            anyBoth = anyBoth || b == BinValues::both();
        }
        if (!anyBoth)
        {
            continue;
        }
        for (auto const& [p, b] : entries)
        {
            if (b != BinValues::both())
            {
                out.push_back({"same_b_after_coin",
                               "round " + std::to_string(round) + ": " +
                                   name(p) + " left with B=" + b.toString() +
                                   " while another process had B={0,1}"});
            }
        }
    }
    return out;
}

std::vector<Violation>
checkReliability(Trace const& trace)
{
    std::map<std::pair<ProcessId, ProcessId>, std::int64_t> balance;
    for (auto const& e : trace.events)
    {
        if (e.kind == TraceEvent::Kind::Send &&
            !trace.faulty.contains(e.process) &&
            !trace.faulty.contains(e.peer))
        {
            ++balance[{e.process, e.peer}];
        }
        else if ((e.kind == TraceEvent::Kind::Deliver ||
                  e.kind == TraceEvent::Kind::Discard) &&
                 !trace.faulty.contains(e.process) &&
                 !trace.faulty.contains(e.peer))
        {
            --balance[{e.peer, e.process}];
        }
    }
    std::vector<Violation> out;
    for (auto const& [pair, count] : balance)
    {
        if (count != 0)
        {
            out.push_back({"reliability",
                           std::to_string(count) + " message(s) " +
                               name(pair.first) + "->" + name(pair.second) +
                               " never delivered"});
        }
    }
    return out;
}

RunAnalysis
analyzeRun(ConsensusScenario const& scenario, ConsensusOutcome const& outcome)
{
    RunAnalysis r;
    Trace const& trace = outcome.trace;
    Classification const& cls = outcome.classification;
    std::size_t const n = trace.n;
    ProcessSet const guild = cls.maximalGuild.value_or(ProcessSet(n));

    r.wiseTotal = cls.wise.size();
    r.guildTotal = guild.size();
    r.maxMessagesPerRound = trace.maxMessagesPerRound();

    std::set<int> guildInputs;
    for (auto p : guild.members())
    {
        guildInputs.insert(scenario.inputs.at(p));
    }

    std::optional<std::pair<ProcessId, int>> firstWise;
    for (ProcessId p = 0; p < n; ++p)
    {
        if (cls.faulty.contains(p))
        {
            continue;
        }
        auto const& prog = trace.progress[p];
        if (prog.decisions > 1)
        {
            r.violations.push_back(
                {"integrity", name(p) + " decided " +
                                  std::to_string(prog.decisions) + " times"});
        }
        if (!prog.decision)
        {
            continue;
        }
        int const b = *prog.decision;
        if (guild.contains(p))
        {
            ++r.guildDecided;
        }
        if (!cls.wise.contains(p))
        {
            continue;
        }
        ++r.wiseDecided;
        if (prog.decisionRound &&
            (!r.lastWiseDecisionRound ||
             *prog.decisionRound > *r.lastWiseDecisionRound))
        {
            r.lastWiseDecisionRound = prog.decisionRound;
        }
        if (!firstWise)
        {
            firstWise = {p, b};
        }
        else if (firstWise->second != b)
        {
            r.violations.push_back(
                {"agreement", name(firstWise->first) + " decided " +
                                  std::to_string(firstWise->second) + ", " +
                                  name(p) + " decided " + std::to_string(b)});
        }
        if (cls.hasGuild() && guildInputs.count(b) == 0)
        {
            r.violations.push_back(
                {"strong_validity",
                 name(p) + " decided " + std::to_string(b) +
                     ", which no maximal-guild member proposed"});
        }
    }

    // A halted process sends nothing further.
    std::vector<bool> halted(n, false);
    for (auto const& e : trace.events)
    {
        if (e.kind == TraceEvent::Kind::Output &&
            std::holds_alternative<Halted>(*e.output))
        {
            halted[e.process] = true;
        }
        else if (e.kind == TraceEvent::Kind::Send &&
                 !cls.faulty.contains(e.process) && halted[e.process])
        {
            r.violations.push_back(
                {"halting", name(e.process) + " sent after halting at step " +
                                std::to_string(e.step)});
        }
    }

    bool const fifo = VariantFlags::forVariant(scenario.variant).fifoLinks;
    for (auto const& msg : checkLinkContract(trace, fifo))
    {
        r.violations.push_back({"link", msg});
    }
    if (trace.terminated == Termination::Quiescent)
    {
        for (auto& v : checkReliability(trace))
        {
            r.violations.push_back(std::move(v));
        }
    }
    if (outcome.deal && cls.hasGuild())
    {
        for (auto& v : checkCoinMatching(trace, *outcome.deal, guild))
        {
            r.violations.push_back(std::move(v));
        }
    }
    r.sameBAfterCoin = checkSameBAfterCoin(trace, cls.wise);
    return r;
}

} // namespace asymbft
