// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "asymbft/process_set.hpp"

#include "asymbft/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace asymbft
{

namespace
{

void
checkUniverse(std::size_t n)
{
    if (n == 0 || n > kMaxProcesses)
    {
        throw CapacityError("process count must be in [1, 64], got " +
                            std::to_string(n));
    }
}

} // namespace

ProcessSet::ProcessSet(std::size_t n) : mN(n)
{
    checkUniverse(n);
}

ProcessSet::ProcessSet(std::size_t n, std::initializer_list<ProcessId> members)
    : ProcessSet(n)
{
    for (auto p : members)
    {
        insert(p);
    }
}

ProcessSet::ProcessSet(std::size_t n, std::vector<ProcessId> const& members)
    : ProcessSet(n)
{
    for (auto p : members)
    {
        insert(p);
    }
}

ProcessSet
ProcessSet::full(std::size_t n)
{
    ProcessSet s(n);
    s.mBits = universeMask(n);
    return s;
}

ProcessSet
ProcessSet::fromBits(std::size_t n, std::uint64_t bits)
{
    ProcessSet s(n);
    if ((bits & ~universeMask(n)) != 0)
    {
        throw std::invalid_argument("bit pattern has members outside universe");
    }
    s.mBits = bits;
    return s;
}

bool
ProcessSet::contains(ProcessId p) const
{
    return p < mN && ((mBits >> p) & 1u) != 0;
}

ProcessSet&
ProcessSet::insert(ProcessId p)
{
    if (p >= mN)
    {
        throw std::out_of_range("process index " + std::to_string(p) +
                                " outside universe of size " +
                                std::to_string(mN));
    }
    mBits |= std::uint64_t{1} << p;
    return *this;
}

ProcessSet&
ProcessSet::erase(ProcessId p)
{
    if (p < mN)
    {
        mBits &= ~(std::uint64_t{1} << p);
    }
    return *this;
}

void
ProcessSet::checkSameUniverse(ProcessSet const& other) const
{
    if (mN != other.mN)
    {
        throw std::invalid_argument("process sets over different universes");
    }
}

bool
ProcessSet::isSubsetOf(ProcessSet const& other) const
{
    checkSameUniverse(other);
    return (mBits & ~other.mBits) == 0;
}

bool
ProcessSet::intersects(ProcessSet const& other) const
{
    checkSameUniverse(other);
    return (mBits & other.mBits) != 0;
}

ProcessSet
ProcessSet::complement() const
{
    ProcessSet s = *this;
    s.mBits = ~mBits & universeMask(mN);
    return s;
}

ProcessSet&
ProcessSet::operator|=(ProcessSet const& other)
{
    checkSameUniverse(other);
    mBits |= other.mBits;
    return *this;
}

ProcessSet&
ProcessSet::operator&=(ProcessSet const& other)
{
    checkSameUniverse(other);
    mBits &= other.mBits;
    return *this;
}

ProcessSet&
ProcessSet::operator-=(ProcessSet const& other)
{
    checkSameUniverse(other);
    mBits &= ~other.mBits;
    return *this;
}

std::vector<ProcessId>
ProcessSet::members() const
{
    std::vector<ProcessId> out;
    out.reserve(size());
    for (auto b = mBits; b != 0; b &= b - 1)
    {
        out.push_back(static_cast<ProcessId>(std::countr_zero(b)));
    }
    return out;
}

std::string
ProcessSet::toString() const
{
    std::string out = "{";
    bool first = true;
    for (auto p : members())
    {
        if (!first)
        {
            out += ',';
        }
        first = false;
        out += 'p';
        out += std::to_string(p + 1);
    }
    out += '}';
    return out;
}

void
forEachSubsetOfSize(std::size_t n, std::size_t k,
                    std::function<void(ProcessSet const&)> const& fn)
{
    checkUniverse(n);
    if (k > n)
    {
        return;
    }
    if (k == 0)
    {
        fn(ProcessSet(n));
        return;
    }
    std::uint64_t const limit = ProcessSet::universeMask(n);
    std::uint64_t v = ProcessSet::universeMask(k);
    while (true)
    {
        fn(ProcessSet::fromBits(n, v));
        if (v == (limit & ~ProcessSet::universeMask(n - k)))
        {
            break;
        }
        // Gosper's hack: next integer with the same popcount.
        std::uint64_t const c = v & (~v + 1);
        std::uint64_t const r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
}

void
forEachSubsetOf(ProcessSet const& ground,
                std::function<void(ProcessSet const&)> const& fn)
{
    std::uint64_t const g = ground.bits();
    std::uint64_t s = 0;
    while (true)
    {
        fn(ProcessSet::fromBits(ground.universeSize(), s));
        if (s == g)
        {
            break;
        }
        s = (s - g) & g;
    }
}

std::uint64_t
binomial(std::size_t n, std::size_t k)
{
    if (k > n)
    {
        return 0;
    }
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::size_t i = 1; i <= k; ++i)
    {
        r = r * (n - k + i) / i;
    }
    return r;
}

} // namespace asymbft
