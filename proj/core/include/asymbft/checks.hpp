// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "asymbft/consensus.hpp"

#include <optional>
#include <string>
#include <vector>

namespace asymbft
{

struct Violation
{
    // "agreement", "integrity", "strong_validity", "halting", "link",
    // "reliability", "coin_matching" or "same_b_after_coin".
    std::string property;
    std::string detail;
};

struct RunAnalysis
{
    // Safety and contract violations; any entry fails the run.
    std::vector<Violation> violations;
    // Processes that output the coin with different B in a round where one
    // of them had B = {0,1}. Reported separately from `violations`.
    std::vector<Violation> sameBAfterCoin;

    std::size_t wiseTotal{0};
    std::size_t wiseDecided{0};
    std::size_t guildTotal{0};
    std::size_t guildDecided{0};
    // Highest decision round among wise processes that decided.
    std::optional<Round> lastWiseDecisionRound;
    std::uint64_t maxMessagesPerRound{0};

    bool
    allWiseDecided() const
    {
        return wiseDecided == wiseTotal;
    }
    bool
    safe() const
    {
        return violations.empty();
    }
};

// Checks one consensus execution. The event-based checks (halting, links,
// coin matching, B agreement) need a trace recorded with events.
RunAnalysis analyzeRun(ConsensusScenario const& scenario,
                       ConsensusOutcome const& outcome);

// For each round: the coin outputs of the given processes all equal the
// dealt coin. Returns one entry per mismatch.
std::vector<Violation> checkCoinMatching(Trace const& trace,
                                         CoinDeal const& deal,
                                         ProcessSet const& processes);

// Wise processes that end a round do so with the same B whenever one of
// them ends it with {0,1}. Returns one entry per process that did not.
std::vector<Violation> checkSameBAfterCoin(Trace const& trace,
                                           ProcessSet const& processes);

// Sends between correct processes equal deliveries plus discards. Only
// meaningful for runs that ended quiescent.
std::vector<Violation> checkReliability(Trace const& trace);

} // namespace asymbft
