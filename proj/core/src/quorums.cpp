// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "asymbft/quorums.hpp"

#include "asymbft/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace asymbft
{

////////////////////////////////////////////////////////////////////////////////
// SetFamily
////////////////////////////////////////////////////////////////////////////////

SetFamily::SetFamily(std::size_t n) : mN(n)
{
    if (n == 0 || n > kMaxProcesses)
    {
        throw CapacityError("process count must be in [1, 64], got " +
                            std::to_string(n));
    }
}

SetFamily::SetFamily(std::size_t n, std::vector<ProcessSet> const& members)
    : SetFamily(n)
{
    for (auto const& s : members)
    {
        add(s);
    }
}

bool
SetFamily::add(ProcessSet const& s)
{
    if (s.universeSize() != mN)
    {
        throw std::invalid_argument("set " + s.toString() +
                                    " has the wrong universe size");
    }
    if (contains(s))
    {
        return false;
    }
    mMembers.push_back(s);
    return true;
}

bool
SetFamily::contains(ProcessSet const& s) const
{
    return std::find(mMembers.begin(), mMembers.end(), s) != mMembers.end();
}

bool
SetFamily::isAntichain() const
{
    for (auto const& a : mMembers)
    {
        for (auto const& b : mMembers)
        {
            if (a != b && a.isSubsetOf(b))
            {
                return false;
            }
        }
    }
    return true;
}

SetFamily
SetFamily::sorted() const
{
    SetFamily out = *this;
    std::sort(out.mMembers.begin(), out.mMembers.end());
    return out;
}

bool
SetFamily::sameSetsAs(SetFamily const& other) const
{
    return mN == other.mN && sorted().mMembers == other.sorted().mMembers;
}

bool
SetFamily::hasMemberWithin(ProcessSet const& s) const
{
    return std::any_of(mMembers.begin(), mMembers.end(),
                       [&](ProcessSet const& m) { return m.isSubsetOf(s); });
}

std::string
SetFamily::toString() const
{
    std::string out = "[";
    for (std::size_t k = 0; k < mMembers.size(); ++k)
    {
        if (k != 0)
        {
            out += ',';
        }
        out += mMembers[k].toString();
    }
    out += ']';
    return out;
}

template <class Tag>
PerProcessFamilies<Tag>::PerProcessFamilies(std::vector<SetFamily> systems)
    : mSystems(std::move(systems))
{
    if (mSystems.empty() || mSystems.size() > kMaxProcesses)
    {
        throw CapacityError("process count must be in [1, 64]");
    }
    for (auto const& family : mSystems)
    {
        if (family.universeSize() != mSystems.size())
        {
            throw std::invalid_argument(
                "every per-process family must range over all " +
                std::to_string(mSystems.size()) + " processes");
        }
    }
}

template class PerProcessFamilies<FailProneTag>;
template class PerProcessFamilies<QuorumTag>;

////////////////////////////////////////////////////////////////////////////////
// Fail-prone systems and quorum systems
////////////////////////////////////////////////////////////////////////////////

SetFamily
normalizeAntichain(SetFamily const& raw)
{
    SetFamily const sorted = raw.sorted();
    SetFamily out(raw.universeSize());
    for (auto const& s : sorted)
    {
        bool dominated = std::any_of(
            sorted.begin(), sorted.end(), [&](ProcessSet const& other) {
                return other != s && s.isSubsetOf(other);
            });
        if (!dominated)
        {
            out.add(s);
        }
    }
    return out;
}

SetFamily
effectiveFailProne(SetFamily const& raw)
{
    SetFamily out = normalizeAntichain(raw);
    if (out.empty())
    {
        out.add(ProcessSet(raw.universeSize()));
    }
    return out;
}

SetFamily
maximalIntersections(SetFamily const& a, SetFamily const& b)
{
    SetFamily all(a.universeSize());
    for (auto const& x : a)
    {
        for (auto const& y : b)
        {
            all.add(x & y);
        }
    }
    return normalizeAntichain(all);
}

bool
checkQ3(SetFamily const& failProne)
{
    if (failProne.empty())
    {
        return true;
    }
    SetFamily const fs = normalizeAntichain(failProne);
    auto const& m = fs.members();
    for (std::size_t a = 0; a < m.size(); ++a)
    {
        for (std::size_t b = a; b < m.size(); ++b)
        {
            ProcessSet const ab = m[a] | m[b];
            for (std::size_t c = b; c < m.size(); ++c)
            {
                if ((ab | m[c]).isFull())
                {
                    return false;
                }
            }
        }
    }
    return true;
}

namespace
{

// Checks B3 for one (i, j) pair of fail-prone systems.
bool
b3HoldsFor(SetFamily const& fi, SetFamily const& fj)
{
    SetFamily const common = maximalIntersections(fi, fj);
    for (auto const& a : fi)
    {
        for (auto const& b : fj)
        {
            ProcessSet const ab = a | b;
            for (auto const& c : common)
            {
                if ((ab | c).isFull())
                {
                    return false;
                }
            }
        }
    }
    return true;
}

} // namespace

bool
checkB3(AsymFailProneSystem const& af)
{
    // Identical rows are common (threshold systems), so check each distinct
    // pair of fail-prone systems once.
    std::vector<SetFamily> distinct;
    for (auto const& raw : af.systems())
    {
        SetFamily const f = effectiveFailProne(raw);
        if (std::find(distinct.begin(), distinct.end(), f) == distinct.end())
        {
            distinct.push_back(f);
        }
    }
    for (std::size_t i = 0; i < distinct.size(); ++i)
    {
        for (std::size_t j = i; j < distinct.size(); ++j)
        {
            if (!b3HoldsFor(distinct[i], distinct[j]))
            {
                return false;
            }
        }
    }
    return true;
}

SetFamily
bijectiveComplement(SetFamily const& family)
{
    SetFamily out(family.universeSize());
    for (auto const& s : family)
    {
        out.add(s.complement());
    }
    return out;
}

SetFamily
canonicalQuorums(SetFamily const& failProne)
{
    if (!checkQ3(failProne))
    {
        throw ConditionError("fail-prone system " + failProne.toString() +
                             " violates Q3; no quorum system exists");
    }
    return bijectiveComplement(effectiveFailProne(failProne));
}

AsymQuorumSystem
asymCanonicalQuorums(AsymFailProneSystem const& af)
{
    if (!checkB3(af))
    {
        throw ConditionError(
            "asymmetric fail-prone system violates B3; no asymmetric quorum "
            "system exists");
    }
    std::vector<SetFamily> rows;
    rows.reserve(af.universeSize());
    for (auto const& f : af.systems())
    {
        rows.push_back(bijectiveComplement(effectiveFailProne(f)));
    }
    return AsymQuorumSystem(std::move(rows));
}

namespace
{

void
collectConsistency(ProcessId i, ProcessId j, SetFamily const& qi,
                   SetFamily const& qj, SetFamily const& common,
                   std::vector<ConsistencyViolation>& out)
{
    for (auto const& a : qi)
    {
        for (auto const& b : qj)
        {
            ProcessSet const meet = a & b;
            for (auto const& c : common)
            {
                if (meet.isSubsetOf(c))
                {
                    out.push_back({i, j, a, b, c});
                    break;
                }
            }
        }
    }
}

void
collectAvailability(ProcessId i, SetFamily const& fi, SetFamily const& qi,
                    std::vector<AvailabilityFailure>& out)
{
    for (auto const& f : fi)
    {
        bool const found =
            std::any_of(qi.begin(), qi.end(),
                        [&](ProcessSet const& q) { return !q.intersects(f); });
        if (!found)
        {
            out.push_back({i, f});
        }
    }
}

} // namespace

QuorumReport
verifyQuorumSystem(SetFamily const& failProne, SetFamily const& quorums)
{
    if (failProne.universeSize() != quorums.universeSize())
    {
        throw std::invalid_argument("fail-prone and quorum systems differ in n");
    }
    SetFamily const f = effectiveFailProne(failProne);
    QuorumReport report;
    collectConsistency(0, 0, quorums, quorums, f, report.consistency);
    collectAvailability(0, f, quorums, report.availability);
    return report;
}

QuorumReport
verifyAsymQuorumSystem(AsymFailProneSystem const& af,
                       AsymQuorumSystem const& aq)
{
    if (af.universeSize() != aq.universeSize())
    {
        throw std::invalid_argument("fail-prone and quorum systems differ in n");
    }
    std::size_t const n = af.universeSize();
    std::vector<SetFamily> f;
    f.reserve(n);
    for (auto const& raw : af.systems())
    {
        f.push_back(effectiveFailProne(raw));
    }
    QuorumReport report;
    for (ProcessId i = 0; i < n; ++i)
    {
        for (ProcessId j = i; j < n; ++j)
        {
            collectConsistency(i, j, aq[i], aq[j],
                               maximalIntersections(f[i], f[j]),
                               report.consistency);
        }
        collectAvailability(i, f[i], aq[i], report.availability);
    }
    return report;
}

AsymFailProneSystem
thresholdSystem(std::size_t n, std::size_t f)
{
    if (f > n)
    {
        throw std::invalid_argument("threshold f exceeds n");
    }
    SetFamily row(n);
    forEachSubsetOfSize(n, f, [&](ProcessSet const& s) { row.add(s); });
    return AsymFailProneSystem(std::vector<SetFamily>(n, row));
}

////////////////////////////////////////////////////////////////////////////////
// Kernels
////////////////////////////////////////////////////////////////////////////////

bool
isKernel(ProcessSet const& k, SetFamily const& quorums)
{
    return std::all_of(quorums.begin(), quorums.end(),
                       [&](ProcessSet const& q) { return k.intersects(q); });
}

SetFamily
minimalKernels(SetFamily const& quorums)
{
    std::size_t const n = quorums.universeSize();
    if (n > kMaxKernelEnumeration)
    {
        throw CapacityError("minimal kernel enumeration is capped at " +
                            std::to_string(kMaxKernelEnumeration) +
                            " processes, got " + std::to_string(n));
    }
    SetFamily out(n);
    ProcessSet ground(n);
    for (auto const& q : quorums)
    {
        ground |= q;
    }
    std::vector<ProcessId> const universe = ground.members();
    for (std::size_t k = 0; k <= universe.size(); ++k)
    {
        if (universe.empty())
        {
            if (isKernel(ground, quorums))
            {
                out.add(ground);
            }
            break;
        }
        forEachSubsetOfSize(universe.size(), k, [&](ProcessSet const& local) {
            ProcessSet candidate(n);
            for (auto pos : local.members())
            {
                candidate.insert(universe[pos]);
            }
            if (out.hasMemberWithin(candidate))
            {
                return;
            }
            if (isKernel(candidate, quorums))
            {
                out.add(candidate);
            }
        });
    }
    return out.sorted();
}

ProcessSet
kernelWithinQuorum(ProcessSet const& failProne, ProcessSet const& quorum)
{
    return quorum - failProne;
}

////////////////////////////////////////////////////////////////////////////////
// Execution classification
////////////////////////////////////////////////////////////////////////////////

Classification
classify(AsymFailProneSystem const& af, ProcessSet const& actualFaulty)
{
    std::size_t const n = af.universeSize();
    if (actualFaulty.universeSize() != n)
    {
        throw std::invalid_argument("faulty set has the wrong universe size");
    }
    Classification c{actualFaulty, ProcessSet(n), ProcessSet(n), std::nullopt};
    for (ProcessId i = 0; i < n; ++i)
    {
        if (actualFaulty.contains(i))
        {
            continue;
        }
        SetFamily const f = effectiveFailProne(af[i]);
        if (std::any_of(f.begin(), f.end(), [&](ProcessSet const& s) {
                return actualFaulty.isSubsetOf(s);
            }))
        {
            c.wise.insert(i);
        }
        else
        {
            c.naive.insert(i);
        }
    }
    return c;
}

Classification
classify(AsymFailProneSystem const& af, AsymQuorumSystem const& aq,
         ProcessSet const& actualFaulty)
{
    Classification c = classify(af, actualFaulty);
    c.maximalGuild = maximalGuild(aq, c.wise);
    return c;
}

std::optional<ProcessSet>
maximalGuild(AsymQuorumSystem const& aq, ProcessSet const& wise)
{
    ProcessSet guild = wise;
    bool changed = true;
    while (changed)
    {
        changed = false;
        for (auto p : guild.members())
        {
            if (!aq[p].hasMemberWithin(guild))
            {
                guild.erase(p);
                changed = true;
            }
        }
    }
    if (guild.empty())
    {
        return std::nullopt;
    }
    return guild;
}

std::vector<GuildExclusion>
explainGuildExclusions(AsymQuorumSystem const& aq, Classification const& c)
{
    std::size_t const n = aq.universeSize();
    ProcessSet const guild = c.maximalGuild.value_or(ProcessSet(n));
    std::vector<GuildExclusion> out;
    for (auto p : (c.wise - guild).members())
    {
        GuildExclusion ex{p, {}};
        for (auto const& q : aq[p])
        {
            ProcessSet const outsiders = q - guild;
            auto describe = [&](ProcessSet const& group, char const* label) {
                std::string names;
                for (auto x : group.members())
                {
                    names += (names.empty() ? "" : ",");
                    names += "p" + std::to_string(x + 1);
                }
                return "quorum " + q.toString() + " contains " + label + " " +
                       names;
            };
            if (auto faulty = outsiders & c.faulty; !faulty.empty())
            {
                ex.reasons.push_back(describe(faulty, "faulty"));
            }
            else if (auto naive = outsiders & c.naive; !naive.empty())
            {
                ex.reasons.push_back(describe(naive, "naive"));
            }
            else
            {
                ex.reasons.push_back(
                    describe(outsiders, "wise processes outside the guild"));
            }
        }
        out.push_back(std::move(ex));
    }
    return out;
}

bool
hasFullyFaultyQuorum(AsymQuorumSystem const& aq, ProcessSet const& faulty)
{
    for (auto const& row : aq.systems())
    {
        if (row.hasMemberWithin(faulty))
        {
            return true;
        }
    }
    return false;
}

} // namespace asymbft
