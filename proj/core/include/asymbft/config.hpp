// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "asymbft/consensus.hpp"
#include "asymbft/failprone_dsl.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace asymbft
{

// Sectioned text format; '#' starts a comment.
//
//   [processes]
//   p1 p2 p3 p4
//
//   [failprone]
//   p1: theta(1,{p2,p3,p4})
//   *: theta(1,{p1,p2,p3,p4})      # every process not listed explicitly
//
//   [quorums]                      # optional; overrides canonical quorums
//   p1: [{p1,p2,p3},{p1,p2,p4}]
//
//   [scenario]                     # optional
//   variant = fixed                # fixed | podc14
//   faulty = {p4}
//   inputs = 0 1 1 0               # one bit per process, roster order
//   seeds = 1..100
//   max_rounds = 50
//   scheduler = random_fair
//   adversary = silent             # silent | equivocating | coin_peeking | mixed
struct ScenarioSpec
{
    Variant variant{Variant::Fixed};
    ProcessSet faulty;
    std::vector<int> inputs;
    std::uint64_t firstSeed{0};
    std::uint64_t lastSeed{0};
    Round maxRounds{50};
    std::string scheduler{"random_fair"};
    // Unset means "mixed": the adversary is picked per seed.
    std::optional<AdversaryKind> adversary{AdversaryKind::Silent};
};

struct ConfigFile
{
    Roster roster;
    // Source text of each process's expression, after '*' expansion.
    std::vector<std::string> failProneText;
    AsymFailProneSystem failProne;
    std::optional<AsymQuorumSystem> explicitQuorums;
    std::optional<ScenarioSpec> scenario;
};

// Throws ParseError; the position is the byte offset in `text`.
ConfigFile parseConfig(std::string_view text);
ConfigFile loadConfig(std::string const& path);

// The explicit quorums if given, otherwise the canonical ones (which throws
// ConditionError when B3 fails).
AsymQuorumSystem quorumsOf(ConfigFile const& config);

// "A..B" or a single number "A". Throws ParseError.
std::pair<std::uint64_t, std::uint64_t> parseSeedRange(std::string_view text);

// Adversary for a seed under "mixed": cycles silent, equivocating,
// coin_peeking.
AdversaryKind mixedAdversary(std::uint64_t seed);

// Scenario for one seed of a config; requires config.scenario.
ConsensusScenario scenarioFor(ConfigFile const& config,
                              AsymQuorumSystem const& quorums,
                              std::uint64_t seed);

} // namespace asymbft
