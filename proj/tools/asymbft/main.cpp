// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

// Command-line front end: quorum analysis, seeded consensus batches and the
// scripted liveness attack. Structured records go to stdout (or --out), one
// JSON object per line; tables and verdicts go to stderr.

#include "asymbft/attack.hpp"
#include "asymbft/config.hpp"
#include "asymbft/errors.hpp"
#include "asymbft/report.hpp"
#include "asymbft/trace_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>

namespace
{

using namespace asymbft;

enum ExitCode
{
    kOk = 0,
    kUsage = 1,
    kParse = 2,
    kNoB3 = 3,
    kViolation = 4,
    kAttackDecided = 5
};

struct Options
{
    std::string config;
    std::string seeds;
    std::optional<Round> maxRounds;
    std::optional<std::string> variant;
    bool requireB3{false};
    std::string out;
    std::string trace;
    unsigned threads{0};
};

class Output
{
  public:
    explicit Output(std::string const& path)
    {
        if (!path.empty())
        {
            mFile = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*mFile)
            {
                throw Error("cannot open output file '" + path + "'");
            }
        }
    }

    std::ostream&
    stream()
    {
        return mFile ? *mFile : std::cout;
    }

  private:
    std::unique_ptr<std::ofstream> mFile;
};

int
cmdAnalyze(Options const& opt)
{
    auto config = loadConfig(opt.config);
    auto report = analyzeConfig(config);
    Output out(opt.out);
    out.stream() << analyzeToJson(report) << '\n';
    std::cerr << analyzeTable(report);
    if (opt.requireB3 && !report.b3)
    {
        std::cerr << "error: B3 does not hold\n";
        return kNoB3;
    }
    return kOk;
}

int
cmdRun(Options const& opt)
{
    auto config = loadConfig(opt.config);
    if (!config.scenario)
    {
        throw ParseError("config has no [scenario] section", 0);
    }
    auto& spec = *config.scenario;
    if (!opt.seeds.empty())
    {
        std::tie(spec.firstSeed, spec.lastSeed) = parseSeedRange(opt.seeds);
    }
    if (opt.maxRounds)
    {
        spec.maxRounds = *opt.maxRounds;
    }
    if (opt.variant)
    {
        spec.variant = parseVariant(*opt.variant);
    }
    auto const quorums = quorumsOf(config);

    std::vector<ConsensusScenario> batch;
    for (auto seed = spec.firstSeed;; ++seed)
    {
        batch.push_back(scenarioFor(config, quorums, seed));
        if (seed == spec.lastSeed)
        {
            break;
        }
    }
    if (!opt.trace.empty())
    {
        std::ofstream traceOut(opt.trace, std::ios::binary);
        writeTrace(traceOut, runConsensus(batch.front()).trace);
    }

    auto records = runBatch(batch, opt.threads);
    Output out(opt.out);
    for (auto const& r : records)
    {
        out.stream() << recordToJson(r, config.roster) << '\n';
    }
    auto summary = summarize(records);
    out.stream() << summaryToJson(summary) << '\n';
    std::cerr << summaryTable(summary);
    if (summary.runsWithViolations != 0)
    {
        for (auto const& r : records)
        {
            for (auto const& v : r.analysis.violations)
            {
                std::cerr << "seed " << r.seed << ": " << v.property << ": "
                          << v.detail << '\n';
            }
        }
        return kViolation;
    }
    return kOk;
}

int
cmdAttack(Options const& opt)
{
    auto const variant = parseVariant(opt.variant.value_or("podc14"));
    auto const maxRounds = opt.maxRounds.value_or(100);
    auto const [first, last] =
        opt.seeds.empty() ? std::pair<std::uint64_t, std::uint64_t>{1, 1}
                          : parseSeedRange(opt.seeds);
    Output out(opt.out);
    int code = kOk;
    for (auto seed = first;; ++seed)
    {
        bool const traced = !opt.trace.empty() && seed == first;
        auto outcome = runAttack(variant, seed, maxRounds, traced);
        if (traced)
        {
            std::ofstream traceOut(opt.trace, std::ios::binary);
            writeTrace(traceOut, outcome.trace);
        }
        std::optional<Round> decisionRound;
        for (ProcessId p = 0; p < 3; ++p)
        {
            auto const& prog = outcome.trace.progress[p];
            if (prog.decisionRound)
            {
                decisionRound =
                    std::max(decisionRound.value_or(0), *prog.decisionRound);
            }
        }
        nlohmann::ordered_json j;
        j["schema"] = kReportSchema;
        j["type"] = "attack";
        j["variant"] = toString(variant);
        j["seed"] = seed;
        j["max_rounds"] = maxRounds;
        j["rounds_attacked"] = outcome.roundsAttacked;
        j["abandoned_at"] = outcome.abandonedAt
                                ? nlohmann::ordered_json(*outcome.abandonedAt)
                                : nlohmann::ordered_json(nullptr);
        j["rounds_abandoned"] = outcome.roundsAbandoned;
        j["decided"] = outcome.anyDecision;
        j["decision_round"] = decisionRound
                                  ? nlohmann::ordered_json(*decisionRound)
                                  : nlohmann::ordered_json(nullptr);
        j["min_round"] = outcome.minRound;
        j["terminated"] = toString(outcome.trace.terminated);
        out.stream() << j.dump() << '\n';

        std::cerr << toString(variant) << " seed " << seed << ": ";
        if (outcome.anyDecision)
        {
            std::cerr << "decided";
            if (decisionRound)
            {
                std::cerr << " by round " << *decisionRound;
            }
            std::cerr << '\n';
            if (variant == Variant::Podc14)
            {
                code = kAttackDecided;
            }
        }
        else
        {
            std::cerr << "no decision after " << outcome.minRound
                      << " rounds\n";
        }
        if (seed == last)
        {
            break;
        }
    }
    return code;
}

} // namespace

int
main(int argc, char** argv)
{
    CLI::App app{"Asymmetric Byzantine quorum analysis and randomized "
                 "consensus simulation"};
    app.require_subcommand(1);
    Options opt;

    auto addCommon = [&](CLI::App* cmd) {
        cmd->add_option("--out", opt.out, "Write records to PATH");
    };
    auto* analyze = app.add_subcommand("analyze", "Analyze a quorum system");
    analyze->add_option("--config", opt.config, "Config file")->required();
    analyze->add_flag("--require-b3", opt.requireB3,
                      "Exit with status 3 when B3 fails");
    addCommon(analyze);

    auto* run = app.add_subcommand("run", "Run a seeded consensus batch");
    run->add_option("--config", opt.config, "Config file")->required();
    run->add_option("--seeds", opt.seeds, "Seed range A..B");
    run->add_option("--max-rounds", opt.maxRounds, "Round cap");
    run->add_option("--variant", opt.variant, "fixed or podc14")
        ->check(CLI::IsMember({"fixed", "podc14"}));
    run->add_option("--threads", opt.threads, "Worker threads (0 = all)");
    run->add_option("--trace", opt.trace,
                    "Write the event trace of the first seed to PATH");
    addCommon(run);

    auto* attack =
        app.add_subcommand("attack", "Run the scripted liveness attack");
    attack->add_option("--variant", opt.variant, "fixed or podc14")
        ->check(CLI::IsMember({"fixed", "podc14"}));
    attack->add_option("--seeds", opt.seeds, "Seed range A..B");
    attack->add_option("--max-rounds", opt.maxRounds, "Round cap");
    attack->add_option("--trace", opt.trace,
                       "Write the event trace of the first seed to PATH");
    addCommon(attack);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (analyze->parsed())
        {
            return cmdAnalyze(opt);
        }
        if (run->parsed())
        {
            return cmdRun(opt);
        }
        return cmdAttack(opt);
    }
    catch (ParseError const& e)
    {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParse;
    }
    catch (ConditionError const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kNoB3;
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}
