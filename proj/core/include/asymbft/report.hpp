// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "asymbft/checks.hpp"
#include "asymbft/config.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace asymbft
{

inline constexpr char const* kReportSchema = "asymbft.report/1";

// Everything kept from one consensus run once its events are dropped.
struct RunRecord
{
    std::uint64_t seed{0};
    Variant variant{Variant::Fixed};
    AdversaryKind adversary{AdversaryKind::Silent};
    Classification classification;
    std::vector<ProcessProgress> progress;
    std::map<Round, std::uint64_t> messagesPerRound;
    Termination terminated{Termination::Quiescent};
    std::uint64_t steps{0};
    RunAnalysis analysis;
};

RunRecord runAndAnalyze(ConsensusScenario const& scenario);

// Runs every scenario, fanning out over `threads` workers (0 picks the
// hardware concurrency). Results are in input order.
std::vector<RunRecord> runBatch(std::vector<ConsensusScenario> const& batch,
                                unsigned threads = 0);

// One JSON line, fields in a fixed order.
std::string recordToJson(RunRecord const& r, Roster const& roster);

struct BatchSummary
{
    std::size_t runs{0};
    std::size_t runsWithViolations{0};
    std::size_t runsWithSameBAfterCoin{0};
    std::size_t wiseTotal{0};
    std::size_t wiseDecided{0};
    std::size_t guildTotal{0};
    std::size_t guildDecided{0};
    std::size_t runsAllWiseDecided{0};
    // Runs keyed by the round at which the last wise process decided; runs
    // where some wise process never decided are not counted.
    std::map<Round, std::size_t> decisionRounds;
    std::uint64_t maxMessagesPerRound{0};
    // Largest maxMessagesPerRound / n^2 over the runs.
    double maxMessagesOverNSquared{0};

    double wiseDecisionRate() const;
    std::optional<Round> medianDecisionRound() const;
    // Share of runs whose wise processes all decided by round r.
    double fractionDecidedBy(Round r) const;
};

BatchSummary summarize(std::vector<RunRecord> const& records);

std::string summaryToJson(BatchSummary const& s);
std::string summaryTable(BatchSummary const& s);

// Quorum-system analysis of a config: B3 verdict, quorum and kernel tables,
// and, when the scenario names a faulty set, the execution classification.
struct AnalyzeReport
{
    Roster roster;
    bool b3{false};
    bool explicitQuorums{false};
    std::optional<AsymQuorumSystem> quorums;
    std::optional<QuorumReport> verification;
    std::vector<SetFamily> kernels;
    std::optional<Classification> classification;
    std::vector<GuildExclusion> exclusions;
};

AnalyzeReport analyzeConfig(ConfigFile const& config);

std::string analyzeToJson(AnalyzeReport const& r);
std::string analyzeTable(AnalyzeReport const& r);

} // namespace asymbft
