// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace asymbft
{

using ProcessId = std::size_t;

inline constexpr std::size_t kMaxProcesses = 64;

// A subset of the process universe {0, ..., n-1}, stored as one machine word.
// Every fail-prone set, quorum, kernel and guild is a ProcessSet. Binary
// operations require both operands to share the same universe size.
class ProcessSet
{
  public:
    // Empty set over an empty universe; only useful as a placeholder.
    ProcessSet() = default;

    explicit ProcessSet(std::size_t n);
    ProcessSet(std::size_t n, std::initializer_list<ProcessId> members);
    ProcessSet(std::size_t n, std::vector<ProcessId> const& members);

    static ProcessSet full(std::size_t n);
    static ProcessSet fromBits(std::size_t n, std::uint64_t bits);

    std::size_t
    universeSize() const
    {
        return mN;
    }
    std::uint64_t
    bits() const
    {
        return mBits;
    }
    std::size_t
    size() const
    {
        return static_cast<std::size_t>(std::popcount(mBits));
    }
    bool
    empty() const
    {
        return mBits == 0;
    }
    bool
    isFull() const
    {
        return mBits == universeMask(mN);
    }

    bool contains(ProcessId p) const;
    ProcessSet& insert(ProcessId p);
    ProcessSet& erase(ProcessId p);

    bool isSubsetOf(ProcessSet const& other) const;
    bool intersects(ProcessSet const& other) const;
    ProcessSet complement() const;

    ProcessSet& operator|=(ProcessSet const& other);
    ProcessSet& operator&=(ProcessSet const& other);
    ProcessSet& operator-=(ProcessSet const& other);

    friend ProcessSet
    operator|(ProcessSet a, ProcessSet const& b)
    {
        return a |= b;
    }
    friend ProcessSet
    operator&(ProcessSet a, ProcessSet const& b)
    {
        return a &= b;
    }
    friend ProcessSet
    operator-(ProcessSet a, ProcessSet const& b)
    {
        return a -= b;
    }

    friend bool operator==(ProcessSet const&, ProcessSet const&) = default;

    // Canonical order: by universe size, then by bit pattern.
    friend std::strong_ordering
    operator<=>(ProcessSet const& a, ProcessSet const& b)
    {
        if (auto c = a.mN <=> b.mN; c != 0)
        {
            return c;
        }
        return a.mBits <=> b.mBits;
    }

    std::vector<ProcessId> members() const;

    // "{p1,p3}" using 1-based default process names.
    std::string toString() const;

    static std::uint64_t
    universeMask(std::size_t n)
    {
        return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    }

  private:
    void checkSameUniverse(ProcessSet const& other) const;

    std::uint64_t mBits{0};
    std::size_t mN{0};
};

// Calls fn for every k-subset of {0..n-1}, in increasing bit-pattern order.
void forEachSubsetOfSize(std::size_t n, std::size_t k,
                         std::function<void(ProcessSet const&)> const& fn);

// Calls fn for every subset of `ground` (including the empty set and ground
// itself). The ground set must be small enough to enumerate.
void forEachSubsetOf(ProcessSet const& ground,
                     std::function<void(ProcessSet const&)> const& fn);

std::uint64_t binomial(std::size_t n, std::size_t k);

} // namespace asymbft

template <> struct std::hash<asymbft::ProcessSet>
{
    std::size_t
    operator()(asymbft::ProcessSet const& s) const noexcept
    {
        return std::hash<std::uint64_t>{}(s.bits() * 0x9E3779B97F4A7C15ull ^
                                          s.universeSize());
    }
};
