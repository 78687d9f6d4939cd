// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "asymbft/process_set.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace asymbft
{

using Round = std::uint64_t;

// A subset of {0, 1}: bit b is present iff (mask >> b) & 1.
class BinValues
{
  public:
    constexpr BinValues() = default;
    static constexpr BinValues
    of(int b)
    {
        BinValues v;
        v.add(b);
        return v;
    }
    static constexpr BinValues
    both()
    {
        BinValues v;
        v.mMask = 3;
        return v;
    }

    constexpr bool
    has(int b) const
    {
        return ((mMask >> b) & 1u) != 0;
    }
    constexpr void
    add(int b)
    {
        mMask = static_cast<std::uint8_t>(mMask | (1u << b));
    }
    constexpr bool
    empty() const
    {
        return mMask == 0;
    }
    constexpr std::size_t
    size() const
    {
        return mMask == 3 ? 2 : (mMask == 0 ? 0 : 1);
    }
    constexpr bool
    isSubsetOf(BinValues other) const
    {
        return (mMask & ~other.mMask) == 0;
    }
    // The only member of a singleton.
    constexpr int
    single() const
    {
        return mMask == 2 ? 1 : 0;
    }
    constexpr std::uint8_t
    mask() const
    {
        return mMask;
    }

    // "{}", "{0}", "{1}" or "{0,1}".
    std::string toString() const;

    friend constexpr bool operator==(BinValues, BinValues) = default;

  private:
    std::uint8_t mMask{0};
};

////////////////////////////////////////////////////////////////////////////////
// Payloads
////////////////////////////////////////////////////////////////////////////////

struct ValueMsg
{
    Round round;
    int bit;
    friend bool operator==(ValueMsg const&, ValueMsg const&) = default;
};

struct AuxMsg
{
    Round round;
    int bit;
    friend bool operator==(AuxMsg const&, AuxMsg const&) = default;
};

// A share for quorum `position` of process `owner`'s quorum system. The
// sender's identity comes from the envelope.
struct CoinMsg
{
    Round round;
    int share;
    ProcessId owner;
    std::size_t position;
    friend bool operator==(CoinMsg const&, CoinMsg const&) = default;
};

struct DecideMsg
{
    int bit;
    friend bool operator==(DecideMsg const&, DecideMsg const&) = default;
};

// For test machines that are not part of the protocol stack.
struct OpaqueMsg
{
    std::string tag;
    std::int64_t value;
    friend bool operator==(OpaqueMsg const&, OpaqueMsg const&) = default;
};

using Payload = std::variant<ValueMsg, AuxMsg, CoinMsg, DecideMsg, OpaqueMsg>;

// "VALUE", "AUX", "COIN", "DECIDE" or "OPAQUE".
char const* payloadKind(Payload const& p);

// The round tag, if the payload carries one.
std::optional<Round> payloadRound(Payload const& p);

// The bit carried by VALUE, AUX, DECIDE (and the share bit of COIN).
std::optional<int> payloadBit(Payload const& p);

std::string toString(Payload const& p);

////////////////////////////////////////////////////////////////////////////////
// Outputs (events a process reports to its environment)
////////////////////////////////////////////////////////////////////////////////

struct Proposed
{
    int bit;
    friend bool operator==(Proposed const&, Proposed const&) = default;
};

struct AbvDelivered
{
    Round round;
    int bit;
    friend bool operator==(AbvDelivered const&, AbvDelivered const&) = default;
};

struct CoinReleased
{
    Round round;
    friend bool operator==(CoinReleased const&, CoinReleased const&) = default;
};

struct CoinOutput
{
    Round round;
    int value;
    friend bool operator==(CoinOutput const&, CoinOutput const&) = default;
};

// Emitted when a process leaves `round`: the set B it acted on, the coin s
// and the estimate it proposes for round + 1.
struct RoundAdvanced
{
    Round round;
    BinValues b;
    int coin;
    int nextEstimate;
    friend bool operator==(RoundAdvanced const&,
                           RoundAdvanced const&) = default;
};

struct Decided
{
    int bit;
    Round round;
    friend bool operator==(Decided const&, Decided const&) = default;
};

struct Halted
{
    friend bool operator==(Halted const&, Halted const&) = default;
};

struct Note
{
    std::string text;
    friend bool operator==(Note const&, Note const&) = default;
};

using Output = std::variant<Proposed, AbvDelivered, CoinReleased, CoinOutput,
                            RoundAdvanced, Decided, Halted, Note>;

char const* outputKind(Output const& o);

std::string toString(Output const& o);

} // namespace asymbft
