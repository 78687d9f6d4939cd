// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "asymbft/config.hpp"

#include "asymbft/errors.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace asymbft
{

namespace
{

struct Line
{
    std::string_view text;
    std::size_t offset;
};

bool
isSpace(char c)
{
    return c == ' ' || c == '\t' || c == '\r';
}

Line
trim(Line line)
{
    auto& t = line.text;
    while (!t.empty() && isSpace(t.front()))
    {
        t.remove_prefix(1);
        ++line.offset;
    }
    while (!t.empty() && isSpace(t.back()))
    {
        t.remove_suffix(1);
    }
    return line;
}

std::vector<Line>
splitLines(std::string_view text)
{
    std::vector<Line> out;
    std::size_t start = 0;
    while (start <= text.size())
    {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos)
        {
            end = text.size();
        }
        auto body = text.substr(start, end - start);
        if (auto hash = body.find('#'); hash != std::string_view::npos)
        {
            body = body.substr(0, hash);
        }
        auto line = trim({body, start});
        if (!line.text.empty())
        {
            out.push_back(line);
        }
        start = end + 1;
    }
    return out;
}

// Splits "key<sep>value" and trims both sides.
std::pair<Line, Line>
splitAt(Line line, char sep)
{
    auto pos = line.text.find(sep);
    if (pos == std::string_view::npos)
    {
        throw ParseError(std::string("expected '") + sep + "'", line.offset);
    }
    auto key = trim({line.text.substr(0, pos), line.offset});
    auto value = trim({line.text.substr(pos + 1), line.offset + pos + 1});
    if (key.text.empty())
    {
        throw ParseError("missing key", line.offset);
    }
    return {key, value};
}

std::vector<Line>
splitWords(Line line)
{
    std::vector<Line> out;
    std::size_t i = 0;
    auto const& t = line.text;
    while (i < t.size())
    {
        while (i < t.size() && (isSpace(t[i]) || t[i] == ','))
        {
            ++i;
        }
        auto start = i;
        while (i < t.size() && !isSpace(t[i]) && t[i] != ',')
        {
            ++i;
        }
        if (i > start)
        {
            out.push_back({t.substr(start, i - start), line.offset + start});
        }
    }
    return out;
}

std::uint64_t
parseNumber(std::string_view text, std::size_t offset)
{
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
    {
        throw ParseError("expected a number, got '" + std::string(text) + "'",
                         offset);
    }
    return v;
}

// Rebases a ParseError from an embedded expression onto the file offset.
template <class Fn>
auto
withOffset(std::size_t offset, Fn&& fn)
{
    try
    {
        return fn();
    }
    catch (ParseError const& e)
    {
        std::string msg = e.what();
        auto cut = msg.rfind(" at position ");
        throw ParseError(msg.substr(0, cut), offset + e.position());
    }
}

std::size_t
rosterIndex(Roster const& roster, Line name)
{
    for (std::size_t i = 0; i < roster.size(); ++i)
    {
        if (roster[i] == name.text)
        {
            return i;
        }
    }
    throw ParseError("unknown process '" + std::string(name.text) + "'",
                     name.offset);
}

ScenarioSpec
parseScenario(std::vector<Line> const& lines, Roster const& roster)
{
    ScenarioSpec spec;
    std::size_t const n = roster.size();
    spec.faulty = ProcessSet(n);
    spec.inputs.assign(n, 0);
    for (auto const& line : lines)
    {
        auto [key, value] = splitAt(line, '=');
        std::string const k(key.text);
        std::string const v(value.text);
        if (k == "variant")
        {
            if (v != "fixed" && v != "podc14")
            {
                throw ParseError("variant must be fixed or podc14",
                                 value.offset);
            }
            spec.variant = parseVariant(v);
        }
        else if (k == "faulty")
        {
            auto expr = withOffset(value.offset, [&] {
                return parseTrustExpr(value.text, roster);
            });
            if (expr.kind != TrustExpr::Kind::Literal)
            {
                throw ParseError("faulty must be a single set", value.offset);
            }
            spec.faulty = evalTrustExpr(expr, n)[0];
        }
        else if (k == "inputs")
        {
            auto words = splitWords(value);
            if (words.size() != n)
            {
                throw ParseError("inputs needs one bit per process",
                                 value.offset);
            }
            for (std::size_t i = 0; i < n; ++i)
            {
                auto w = words[i].text;
                if (w != "0" && w != "1")
                {
                    throw ParseError("input must be 0 or 1", words[i].offset);
                }
                spec.inputs[i] = w == "1" ? 1 : 0;
            }
        }
        else if (k == "seeds")
        {
            auto range = withOffset(value.offset,
                                    [&] { return parseSeedRange(value.text); });
            spec.firstSeed = range.first;
            spec.lastSeed = range.second;
        }
        else if (k == "max_rounds")
        {
            spec.maxRounds = parseNumber(value.text, value.offset);
        }
        else if (k == "scheduler")
        {
            if (v != "random_fair")
            {
                throw ParseError("unsupported scheduler '" + v + "'",
                                 value.offset);
            }
            spec.scheduler = v;
        }
        else if (k == "adversary")
        {
            if (v == "mixed")
            {
                spec.adversary.reset();
            }
            else
            {
                try
                {
                    spec.adversary = parseAdversaryKind(v);
                }
                catch (std::exception const&)
                {
                    throw ParseError("unknown adversary '" + v + "'",
                                     value.offset);
                }
            }
        }
        else
        {
            throw ParseError("unknown scenario key '" + k + "'", key.offset);
        }
    }
    return spec;
}

} // namespace

ConfigFile
parseConfig(std::string_view text)
{
    std::map<std::string, std::vector<Line>> sections;
    std::map<std::string, std::size_t> sectionOffsets;
    std::string current;
    for (auto const& line : splitLines(text))
    {
        if (line.text.front() == '[' && line.text.back() == ']' &&
            line.text.find_first_of("{,") == std::string_view::npos)
        {
            current = std::string(line.text.substr(1, line.text.size() - 2));
            if (current != "processes" && current != "failprone" &&
                current != "quorums" && current != "scenario")
            {
                throw ParseError("unknown section [" + current + "]",
                                 line.offset);
            }
            if (sectionOffsets.count(current) != 0)
            {
                throw ParseError("duplicate section [" + current + "]",
                                 line.offset);
            }
            sectionOffsets[current] = line.offset;
            sections[current];
            continue;
        }
        if (current.empty())
        {
            throw ParseError("content outside a section", line.offset);
        }
        sections[current].push_back(line);
    }

    ConfigFile cfg;
    if (sections.count("processes") == 0)
    {
        throw ParseError("missing [processes] section", 0);
    }
    for (auto const& line : sections["processes"])
    {
        for (auto const& w : splitWords(line))
        {
            std::string name(w.text);
            for (auto const& existing : cfg.roster)
            {
                if (existing == name)
                {
                    throw ParseError("duplicate process '" + name + "'",
                                     w.offset);
                }
            }
            cfg.roster.push_back(name);
        }
    }
    std::size_t const n = cfg.roster.size();
    if (n == 0 || n > kMaxProcesses)
    {
        throw ParseError("process count must be in [1, 64]",
                         sectionOffsets["processes"]);
    }

    // Per-process expressions; '*' fills the gaps.
    std::vector<std::optional<Line>> exprs(n);
    std::optional<Line> fallback;
    for (auto const& line : sections["failprone"])
    {
        auto [key, value] = splitAt(line, ':');
        if (key.text == "*")
        {
            if (fallback)
            {
                throw ParseError("duplicate '*' entry", key.offset);
            }
            fallback = value;
            continue;
        }
        auto i = rosterIndex(cfg.roster, key);
        if (exprs[i])
        {
            throw ParseError("duplicate entry for " + cfg.roster[i],
                             key.offset);
        }
        exprs[i] = value;
    }
    std::vector<SetFamily> families;
    for (std::size_t i = 0; i < n; ++i)
    {
        auto expr = exprs[i] ? exprs[i] : fallback;
        if (!expr)
        {
            throw ParseError("no fail-prone expression for " + cfg.roster[i],
                             sectionOffsets.count("failprone") != 0
                                 ? sectionOffsets["failprone"]
                                 : 0);
        }
        cfg.failProneText.emplace_back(expr->text);
        families.push_back(withOffset(expr->offset, [&] {
            return parseFailProne(expr->text, cfg.roster);
        }));
    }
    cfg.failProne = AsymFailProneSystem(std::move(families));

    if (sections.count("quorums") != 0)
    {
        std::vector<std::optional<SetFamily>> qs(n);
        for (auto const& line : sections["quorums"])
        {
            auto [key, value] = splitAt(line, ':');
            auto i = rosterIndex(cfg.roster, key);
            if (qs[i])
            {
                throw ParseError("duplicate entry for " + cfg.roster[i],
                                 key.offset);
            }
            // Quorums are listed verbatim, not normalized.
            qs[i] = withOffset(value.offset, [&] {
                auto expr = parseTrustExpr(value.text, cfg.roster);
                SetFamily fam(n);
                auto addLiteral = [&](TrustExpr const& e) {
                    if (e.kind != TrustExpr::Kind::Literal)
                    {
                        throw ParseError("quorums must be listed as sets", 0);
                    }
                    fam.add(e.names);
                };
                if (expr.kind == TrustExpr::Kind::UnionList)
                {
                    for (auto const& c : expr.children)
                    {
                        addLiteral(c);
                    }
                }
                else
                {
                    addLiteral(expr);
                }
                return fam;
            });
        }
        std::vector<SetFamily> all;
        for (std::size_t i = 0; i < n; ++i)
        {
            if (!qs[i])
            {
                throw ParseError("no quorums listed for " + cfg.roster[i],
                                 sectionOffsets["quorums"]);
            }
            all.push_back(*qs[i]);
        }
        cfg.explicitQuorums = AsymQuorumSystem(std::move(all));
    }

    if (sections.count("scenario") != 0)
    {
        cfg.scenario = parseScenario(sections["scenario"], cfg.roster);
    }
    return cfg;
}

ConfigFile
loadConfig(std::string const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw Error("cannot open config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parseConfig(buf.str());
}

AsymQuorumSystem
quorumsOf(ConfigFile const& config)
{
    if (config.explicitQuorums)
    {
        return *config.explicitQuorums;
    }
    return asymCanonicalQuorums(config.failProne);
}

std::pair<std::uint64_t, std::uint64_t>
parseSeedRange(std::string_view text)
{
    auto dots = text.find("..");
    if (dots == std::string_view::npos)
    {
        auto v = parseNumber(text, 0);
        return {v, v};
    }
    auto a = parseNumber(text.substr(0, dots), 0);
    auto b = parseNumber(text.substr(dots + 2), dots + 2);
    if (b < a)
    {
        throw ParseError("empty seed range", 0);
    }
    return {a, b};
}

AdversaryKind
mixedAdversary(std::uint64_t seed)
{
    switch (seed % 3)
    {
    case 0:
        return AdversaryKind::Silent;
    case 1:
        return AdversaryKind::Equivocating;
    default:
        return AdversaryKind::CoinPeeking;
    }
}

ConsensusScenario
scenarioFor(ConfigFile const& config, AsymQuorumSystem const& quorums,
            std::uint64_t seed)
{
    if (!config.scenario)
    {
        throw Error("config has no [scenario] section");
    }
    auto const& spec = *config.scenario;
    ConsensusScenario s;
    s.failProne = config.failProne;
    s.quorums = quorums;
    s.variant = spec.variant;
    s.faulty = spec.faulty;
    s.inputs = spec.inputs;
    s.seed = seed;
    s.maxRounds = spec.maxRounds;
    s.adversary = spec.adversary ? *spec.adversary : mixedAdversary(seed);
    return s;
}

} // namespace asymbft
