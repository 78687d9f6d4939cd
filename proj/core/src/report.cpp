// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "asymbft/report.hpp"

#include "asymbft/errors.hpp"
#include "json_util.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <sstream>
#include <thread>

namespace asymbft
{

RunRecord
runAndAnalyze(ConsensusScenario const& scenario)
{
    auto outcome = runConsensus(scenario);
    RunRecord r;
    r.seed = scenario.seed;
    r.variant = scenario.variant;
    r.adversary = scenario.adversary;
    r.analysis = analyzeRun(scenario, outcome);
    r.classification = outcome.classification;
    r.progress = outcome.trace.progress;
    r.messagesPerRound = outcome.trace.messagesPerRound;
    r.terminated = outcome.trace.terminated;
    r.steps = outcome.trace.steps;
    return r;
}

std::vector<RunRecord>
runBatch(std::vector<ConsensusScenario> const& batch, unsigned threads)
{
    if (threads == 0)
    {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min<unsigned>(threads, std::max<std::size_t>(1, batch.size()));
    std::vector<RunRecord> out(batch.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        while (!failed)
        {
            auto k = next.fetch_add(1);
            if (k >= batch.size())
            {
                return;
            }
            try
            {
                out[k] = runAndAnalyze(batch[k]);
            }
            catch (...)
            {
                if (!failed.exchange(true))
                {
                    failure = std::current_exception();
                }
            }
        }
    };
    if (threads == 1)
    {
        worker();
    }
    else
    {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
        {
            pool.emplace_back(worker);
        }
        for (auto& t : pool)
        {
            t.join();
        }
    }
    if (failure)
    {
        std::rethrow_exception(failure);
    }
    return out;
}

std::string
recordToJson(RunRecord const& r, Roster const& roster)
{
    auto const& c = r.classification;
    Json j;
    j["schema"] = kReportSchema;
    j["type"] = "run";
    j["seed"] = r.seed;
    j["variant"] = toString(r.variant);
    j["adversary"] = toString(r.adversary);
    j["faulty"] = formatSet(c.faulty, roster);
    j["wise"] = formatSet(c.wise, roster);
    j["naive"] = formatSet(c.naive, roster);
    j["guild"] = c.maximalGuild ? Json(formatSet(*c.maximalGuild, roster))
                                : Json(nullptr);
    Json procs = Json::array();
    for (std::size_t p = 0; p < r.progress.size(); ++p)
    {
        auto const& pr = r.progress[p];
        Json e;
        e["name"] = roster[p];
        e["status"] = c.faulty.contains(p) ? "faulty"
                      : c.wise.contains(p) ? "wise"
                                           : "naive";
        e["decision"] = pr.decision ? Json(*pr.decision) : Json(nullptr);
        e["decision_round"] =
            pr.decisionRound ? Json(*pr.decisionRound) : Json(nullptr);
        e["round"] = pr.round;
        e["halted"] = pr.halted;
        procs.push_back(e);
    }
    j["processes"] = procs;
    Json counts = Json::array();
    for (auto const& [round, count] : r.messagesPerRound)
    {
        counts.push_back(Json::array({round, count}));
    }
    j["messages_per_round"] = counts;
    j["max_messages_per_round"] = r.analysis.maxMessagesPerRound;
    j["terminated"] = toString(r.terminated);
    j["steps"] = r.steps;
    j["wise_decided"] = r.analysis.wiseDecided;
    j["wise_total"] = r.analysis.wiseTotal;
    Json violations = Json::array();
    for (auto const& v : r.analysis.violations)
    {
        violations.push_back(Json{{"property", v.property}, {"detail", v.detail}});
    }
    j["violations"] = violations;
    j["same_b_after_coin"] = r.analysis.sameBAfterCoin.size();
    return j.dump();
}

double
BatchSummary::wiseDecisionRate() const
{
    return wiseTotal == 0 ? 1.0
                          : static_cast<double>(wiseDecided) /
                                static_cast<double>(wiseTotal);
}

std::optional<Round>
BatchSummary::medianDecisionRound() const
{
    if (runs == 0)
    {
        return std::nullopt;
    }
    // Runs without a full decision rank above every decided run.
    std::size_t const target = (runs + 1) / 2;
    std::size_t seen = 0;
    for (auto const& [round, count] : decisionRounds)
    {
        seen += count;
        if (seen >= target)
        {
            return round;
        }
    }
    return std::nullopt;
}

double
BatchSummary::fractionDecidedBy(Round r) const
{
    if (runs == 0)
    {
        return 0;
    }
    std::size_t k = 0;
    for (auto const& [round, count] : decisionRounds)
    {
        if (round <= r)
        {
            k += count;
        }
    }
    return static_cast<double>(k) / static_cast<double>(runs);
}

BatchSummary
summarize(std::vector<RunRecord> const& records)
{
    BatchSummary s;
    for (auto const& r : records)
    {
        auto const& a = r.analysis;
        ++s.runs;
        s.runsWithViolations += a.safe() ? 0 : 1;
        s.runsWithSameBAfterCoin += a.sameBAfterCoin.empty() ? 0 : 1;
        s.wiseTotal += a.wiseTotal;
        s.wiseDecided += a.wiseDecided;
        s.guildTotal += a.guildTotal;
        s.guildDecided += a.guildDecided;
        if (a.allWiseDecided())
        {
            ++s.runsAllWiseDecided;
            ++s.decisionRounds[a.lastWiseDecisionRound.value_or(0)];
        }
        s.maxMessagesPerRound =
            std::max(s.maxMessagesPerRound, a.maxMessagesPerRound);
        auto const n = static_cast<double>(r.progress.size());
        if (n > 0)
        {
            s.maxMessagesOverNSquared =
                std::max(s.maxMessagesOverNSquared,
                         static_cast<double>(a.maxMessagesPerRound) / (n * n));
        }
    }
    return s;
}

std::string
summaryToJson(BatchSummary const& s)
{
    Json j;
    j["schema"] = kReportSchema;
    j["type"] = "summary";
    j["runs"] = s.runs;
    j["runs_with_violations"] = s.runsWithViolations;
    j["runs_with_same_b_after_coin"] = s.runsWithSameBAfterCoin;
    j["wise_decided"] = s.wiseDecided;
    j["wise_total"] = s.wiseTotal;
    j["guild_decided"] = s.guildDecided;
    j["guild_total"] = s.guildTotal;
    j["runs_all_wise_decided"] = s.runsAllWiseDecided;
    auto median = s.medianDecisionRound();
    j["median_decision_round"] = median ? Json(*median) : Json(nullptr);
    Json hist = Json::array();
    for (auto const& [round, count] : s.decisionRounds)
    {
        hist.push_back(Json::array({round, count}));
    }
    j["decision_round_histogram"] = hist;
    j["max_messages_per_round"] = s.maxMessagesPerRound;
    return j.dump();
}

std::string
summaryTable(BatchSummary const& s)
{
    std::ostringstream out;
    auto row = [&](char const* label) -> std::ostream& {
        return out << std::left << std::setw(28) << label << std::right;
    };
    auto median = s.medianDecisionRound();
    row("runs") << s.runs << '\n';
    row("runs with violations") << s.runsWithViolations << '\n';
    row("runs with same-B splits") << s.runsWithSameBAfterCoin << '\n';
    row("wise decided") << s.wiseDecided << " / " << s.wiseTotal << '\n';
    row("guild decided") << s.guildDecided << " / " << s.guildTotal << '\n';
    row("runs with all wise decided") << s.runsAllWiseDecided << '\n';
    row("median decision round")
        << (median ? std::to_string(*median) : "-") << '\n';
    row("max messages per round") << s.maxMessagesPerRound << '\n';
    out
        << "decision round histogram\n";
    for (auto const& [round, count] : s.decisionRounds)
    {
        out << "  " << std::setw(4) << round << "  " << count << '\n';
    }
    return out.str();
}

AnalyzeReport
analyzeConfig(ConfigFile const& config)
{
    AnalyzeReport r;
    r.roster = config.roster;
    r.b3 = checkB3(config.failProne);
    r.explicitQuorums = config.explicitQuorums.has_value();
    if (config.explicitQuorums)
    {
        r.quorums = config.explicitQuorums;
    }
    else if (r.b3)
    {
        r.quorums = asymCanonicalQuorums(config.failProne);
    }
    if (!r.quorums)
    {
        return r;
    }
    r.verification = verifyAsymQuorumSystem(config.failProne, *r.quorums);
    for (auto const& q : r.quorums->systems())
    {
        r.kernels.push_back(minimalKernels(q));
    }
    if (config.scenario)
    {
        r.classification =
            classify(config.failProne, *r.quorums, config.scenario->faulty);
        r.exclusions = explainGuildExclusions(*r.quorums, *r.classification);
    }
    return r;
}

namespace
{

Json
perProcess(std::vector<SetFamily> const& families, Roster const& roster)
{
    Json j;
    for (std::size_t i = 0; i < families.size(); ++i)
    {
        j[roster[i]] = formatFamily(families[i], roster);
    }
    return j;
}

} // namespace

std::string
analyzeToJson(AnalyzeReport const& r)
{
    auto const& roster = r.roster;
    Json j;
    j["schema"] = kReportSchema;
    j["type"] = "analyze";
    j["processes"] = roster;
    j["b3"] = r.b3;
    j["quorum_source"] = r.explicitQuorums ? "explicit" : "canonical";
    if (!r.quorums)
    {
        j["quorums"] = nullptr;
        return j.dump();
    }
    j["quorums"] = perProcess(r.quorums->systems(), roster);
    Json consistency = Json::array();
    for (auto const& v : r.verification->consistency)
    {
        consistency.push_back(Json{{"i", roster[v.i]},
                                   {"j", roster[v.j]},
                                   {"quorum_i", formatSet(v.quorumI, roster)},
                                   {"quorum_j", formatSet(v.quorumJ, roster)},
                                   {"fail_prone",
                                    formatSet(v.commonFailProne, roster)}});
    }
    Json availability = Json::array();
    for (auto const& a : r.verification->availability)
    {
        availability.push_back(Json{
            {"i", roster[a.i]}, {"fail_prone", formatSet(a.failProne, roster)}});
    }
    j["verification"] = Json{{"consistency", consistency},
                             {"availability", availability}};
    j["kernels"] = perProcess(r.kernels, roster);
    if (r.classification)
    {
        auto const& c = *r.classification;
        Json cj;
        cj["faulty"] = formatSet(c.faulty, roster);
        cj["wise"] = formatSet(c.wise, roster);
        cj["naive"] = formatSet(c.naive, roster);
        cj["maximal_guild"] = c.maximalGuild
                                  ? Json(formatSet(*c.maximalGuild, roster))
                                  : Json(nullptr);
        Json ex = Json::array();
        for (auto const& e : r.exclusions)
        {
            ex.push_back(Json{{"process", roster[e.process]},
                              {"reasons", e.reasons}});
        }
        cj["excluded_from_guild"] = ex;
        j["classification"] = cj;
    }
    return j.dump();
}

std::string
analyzeTable(AnalyzeReport const& r)
{
    auto const& roster = r.roster;
    std::size_t width = 0;
    for (auto const& name : roster)
    {
        width = std::max(width, name.size());
    }
    std::ostringstream out;
    out << "B3: " << (r.b3 ? "holds" : "fails") << '\n';
    if (!r.quorums)
    {
        out << "no canonical quorum system\n";
        return out.str();
    }
    out << (r.explicitQuorums ? "explicit" : "canonical") << " quorums\n";
    for (std::size_t i = 0; i < roster.size(); ++i)
    {
        out << "  " << std::left << std::setw(static_cast<int>(width))
            << roster[i] << "  " << formatFamily((*r.quorums)[i], roster)
            << '\n';
    }
    out << "minimal kernels\n";
    for (std::size_t i = 0; i < roster.size(); ++i)
    {
        out << "  " << std::left << std::setw(static_cast<int>(width))
            << roster[i] << "  " << formatFamily(r.kernels[i], roster) << '\n';
    }
    auto const& v = *r.verification;
    out << "consistency violations: " << v.consistency.size()
        << ", availability failures: " << v.availability.size() << '\n';
    if (r.classification)
    {
        auto const& c = *r.classification;
        out << "faulty " << formatSet(c.faulty, roster) << ", wise "
            << formatSet(c.wise, roster) << ", naive "
            << formatSet(c.naive, roster) << '\n'
            << "maximal guild "
            << (c.maximalGuild ? formatSet(*c.maximalGuild, roster) : "none")
            << '\n';
        for (auto const& e : r.exclusions)
        {
            out << roster[e.process] << " is wise but outside the guild:\n";
            for (auto const& reason : e.reasons)
            {
                out << "  " << reason << '\n';
            }
        }
    }
    return out.str();
}

} // namespace asymbft
