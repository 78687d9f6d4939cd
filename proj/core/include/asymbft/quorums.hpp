// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "asymbft/process_set.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace asymbft
{

////////////////////////////////////////////////////////////////////////////////
// SetFamily
////////////////////////////////////////////////////////////////////////////////

// A duplicate-free, ordered collection of process sets over one universe.
// Used for fail-prone systems, quorum systems and kernel systems alike.
class SetFamily
{
  public:
    SetFamily() = default;
    explicit SetFamily(std::size_t n);
    SetFamily(std::size_t n, std::vector<ProcessSet> const& members);

    std::size_t
    universeSize() const
    {
        return mN;
    }
    std::vector<ProcessSet> const&
    members() const
    {
        return mMembers;
    }
    std::size_t
    size() const
    {
        return mMembers.size();
    }
    bool
    empty() const
    {
        return mMembers.empty();
    }
    ProcessSet const&
    operator[](std::size_t k) const
    {
        return mMembers[k];
    }
    auto
    begin() const
    {
        return mMembers.begin();
    }
    auto
    end() const
    {
        return mMembers.end();
    }

    // Returns false (and leaves the family unchanged) on a duplicate.
    bool add(ProcessSet const& s);
    bool contains(ProcessSet const& s) const;

    // True iff no member is a proper subset of another member.
    bool isAntichain() const;

    // Same members, canonical (bit-pattern) order.
    SetFamily sorted() const;

    // Order-insensitive equality.
    bool sameSetsAs(SetFamily const& other) const;

    // True iff some member is a subset of s ("s contains a quorum").
    bool hasMemberWithin(ProcessSet const& s) const;

    std::string toString() const;

    friend bool operator==(SetFamily const&, SetFamily const&) = default;

  private:
    std::size_t mN{0};
    std::vector<ProcessSet> mMembers;
};

// One SetFamily per process, all over the same universe. The tag keeps
// fail-prone systems and quorum systems from being mixed up.
template <class Tag> class PerProcessFamilies
{
  public:
    PerProcessFamilies() = default;
    explicit PerProcessFamilies(std::vector<SetFamily> systems);

    std::size_t
    universeSize() const
    {
        return mSystems.size();
    }
    SetFamily const&
    operator[](ProcessId i) const
    {
        return mSystems.at(i);
    }
    std::vector<SetFamily> const&
    systems() const
    {
        return mSystems;
    }

    friend bool operator==(PerProcessFamilies const&,
                           PerProcessFamilies const&) = default;

  private:
    std::vector<SetFamily> mSystems;
};

struct FailProneTag;
struct QuorumTag;

using AsymFailProneSystem = PerProcessFamilies<FailProneTag>;
using AsymQuorumSystem = PerProcessFamilies<QuorumTag>;

extern template class PerProcessFamilies<FailProneTag>;
extern template class PerProcessFamilies<QuorumTag>;

////////////////////////////////////////////////////////////////////////////////
// Fail-prone systems and quorum systems
////////////////////////////////////////////////////////////////////////////////

// Maximal elements of raw, duplicates removed, in canonical order.
SetFamily normalizeAntichain(SetFamily const& raw);

// The fail-prone system used by every check: normalizeAntichain(raw), with
// the empty family read as {{}} ("nothing fails").
SetFamily effectiveFailProne(SetFamily const& raw);

// Maximal elements of {A & B : A in a, B in b}; the maximal members of
// a* intersected with b*.
SetFamily maximalIntersections(SetFamily const& a, SetFamily const& b);

bool checkQ3(SetFamily const& failProne);
bool checkB3(AsymFailProneSystem const& af);

// {P \ S : S in family}, with no precondition.
SetFamily bijectiveComplement(SetFamily const& family);

// Throws ConditionError when Q3 fails.
SetFamily canonicalQuorums(SetFamily const& failProne);

// Throws ConditionError when B3 fails.
AsymQuorumSystem asymCanonicalQuorums(AsymFailProneSystem const& af);

struct ConsistencyViolation
{
    ProcessId i;
    ProcessId j;
    ProcessSet quorumI;
    ProcessSet quorumJ;
    // A maximal common fail-prone set covering quorumI & quorumJ.
    ProcessSet commonFailProne;

    friend bool operator==(ConsistencyViolation const&,
                           ConsistencyViolation const&) = default;
};

struct AvailabilityFailure
{
    ProcessId i;
    ProcessSet failProne;

    friend bool operator==(AvailabilityFailure const&,
                           AvailabilityFailure const&) = default;
};

struct QuorumReport
{
    std::vector<ConsistencyViolation> consistency;
    std::vector<AvailabilityFailure> availability;

    bool
    ok() const
    {
        return consistency.empty() && availability.empty();
    }
};

// Symmetric check: every violation is reported with i = j = 0.
QuorumReport verifyQuorumSystem(SetFamily const& failProne,
                                SetFamily const& quorums);

// Consistency violations are reported for i <= j only.
QuorumReport verifyAsymQuorumSystem(AsymFailProneSystem const& af,
                                    AsymQuorumSystem const& aq);

AsymFailProneSystem thresholdSystem(std::size_t n, std::size_t f);

////////////////////////////////////////////////////////////////////////////////
// Kernels
////////////////////////////////////////////////////////////////////////////////

inline constexpr std::size_t kMaxKernelEnumeration = 16;

bool isKernel(ProcessSet const& k, SetFamily const& quorums);

// All minimal hitting sets of quorums, canonical order. Exhaustive search by
// increasing cardinality; throws CapacityError above kMaxKernelEnumeration
// processes. An empty quorum family yields {{}}; a family containing the
// empty set has no kernel and yields {}.
SetFamily minimalKernels(SetFamily const& quorums);

// Q \ F: a kernel contained in quorum q whenever F is fail-prone for the
// quorum system q belongs to.
ProcessSet kernelWithinQuorum(ProcessSet const& failProne,
                              ProcessSet const& quorum);

////////////////////////////////////////////////////////////////////////////////
// Execution classification
////////////////////////////////////////////////////////////////////////////////

struct Classification
{
    ProcessSet faulty;
    ProcessSet naive;
    ProcessSet wise;
    std::optional<ProcessSet> maximalGuild;

    bool
    hasGuild() const
    {
        return maximalGuild.has_value();
    }
};

// A correct process is wise iff the faulty set is contained in one of its
// fail-prone sets. Leaves maximalGuild unset.
Classification classify(AsymFailProneSystem const& af,
                        ProcessSet const& actualFaulty);

// As above, and fills maximalGuild from aq.
Classification classify(AsymFailProneSystem const& af,
                        AsymQuorumSystem const& aq,
                        ProcessSet const& actualFaulty);

// Greatest subset of wise containing a quorum for each of its members.
std::optional<ProcessSet> maximalGuild(AsymQuorumSystem const& aq,
                                       ProcessSet const& wise);

struct GuildExclusion
{
    ProcessId process;
    // One entry per quorum of the process, e.g. "quorum {p1,p2,p6,p7}
    // contains naive p6".
    std::vector<std::string> reasons;
};

// Why each wise process outside the maximal guild is excluded.
std::vector<GuildExclusion>
explainGuildExclusions(AsymQuorumSystem const& aq, Classification const& c);

// True iff some quorum of some process lies entirely inside faulty.
bool hasFullyFaultyQuorum(AsymQuorumSystem const& aq,
                          ProcessSet const& faulty);

} // namespace asymbft
