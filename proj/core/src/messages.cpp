// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "asymbft/messages.hpp"

namespace asymbft
{

namespace
{

template <class... Ts> struct Overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts> Overloaded(Ts...) -> Overloaded<Ts...>;

} // namespace

std::string
BinValues::toString() const
{
    switch (mMask)
    {
    case 1:
        return "{0}";
    case 2:
        return "{1}";
    case 3:
        return "{0,1}";
    default:
        return "{}";
    }
}

char const*
payloadKind(Payload const& p)
{
    return std::visit(Overloaded{
                          [](ValueMsg const&) { return "VALUE"; },
                          [](AuxMsg const&) { return "AUX"; },
                          [](CoinMsg const&) { return "COIN"; },
                          [](DecideMsg const&) { return "DECIDE"; },
                          [](OpaqueMsg const&) { return "OPAQUE"; },
                      },
                      p);
}

std::optional<Round>
payloadRound(Payload const& p)
{
    return std::visit(
        Overloaded{
            [](ValueMsg const& m) -> std::optional<Round> { return m.round; },
            [](AuxMsg const& m) -> std::optional<Round> { return m.round; },
            [](CoinMsg const& m) -> std::optional<Round> { return m.round; },
            [](auto const&) -> std::optional<Round> { return std::nullopt; },
        },
        p);
}

std::optional<int>
payloadBit(Payload const& p)
{
    return std::visit(
        Overloaded{
            [](ValueMsg const& m) -> std::optional<int> { return m.bit; },
            [](AuxMsg const& m) -> std::optional<int> { return m.bit; },
            [](CoinMsg const& m) -> std::optional<int> { return m.share; },
            [](DecideMsg const& m) -> std::optional<int> { return m.bit; },
            [](OpaqueMsg const&) -> std::optional<int> { return std::nullopt; },
        },
        p);
}

std::string
toString(Payload const& p)
{
    using std::to_string;
    return std::visit(
        Overloaded{
            [](ValueMsg const& m) {
                return "VALUE(r=" + to_string(m.round) +
                       ",b=" + to_string(m.bit) + ")";
            },
            [](AuxMsg const& m) {
                return "AUX(r=" + to_string(m.round) +
                       ",b=" + to_string(m.bit) + ")";
            },
            [](CoinMsg const& m) {
                return "COIN(r=" + to_string(m.round) +
                       ",s=" + to_string(m.share) + ",Q=p" +
                       to_string(m.owner + 1) + "#" + to_string(m.position) +
                       ")";
            },
            [](DecideMsg const& m) {
                return "DECIDE(b=" + to_string(m.bit) + ")";
            },
            [](OpaqueMsg const& m) {
                return "OPAQUE(" + m.tag + "," + to_string(m.value) + ")";
            },
        },
        p);
}

char const*
outputKind(Output const& o)
{
    return std::visit(Overloaded{
                          [](Proposed const&) { return "proposed"; },
                          [](AbvDelivered const&) { return "abv_deliver"; },
                          [](CoinReleased const&) { return "coin_release"; },
                          [](CoinOutput const&) { return "coin_output"; },
                          [](RoundAdvanced const&) { return "round_advance"; },
                          [](Decided const&) { return "decide"; },
                          [](Halted const&) { return "halt"; },
                          [](Note const&) { return "note"; },
                      },
                      o);
}

std::string
toString(Output const& o)
{
    using std::to_string;
    return std::visit(
        Overloaded{
            [](Proposed const& x) { return "propose(" + to_string(x.bit) + ")"; },
            [](AbvDelivered const& x) {
                return "abv-deliver(r=" + to_string(x.round) +
                       ",b=" + to_string(x.bit) + ")";
            },
            [](CoinReleased const& x) {
                return "release-coin(r=" + to_string(x.round) + ")";
            },
            [](CoinOutput const& x) {
                return "output-coin(r=" + to_string(x.round) +
                       ",s=" + to_string(x.value) + ")";
            },
            [](RoundAdvanced const& x) {
                return "advance(r=" + to_string(x.round) +
                       ",B=" + x.b.toString() + ",s=" + to_string(x.coin) +
                       ",est=" + to_string(x.nextEstimate) + ")";
            },
            [](Decided const& x) {
                return "decide(b=" + to_string(x.bit) +
                       ",r=" + to_string(x.round) + ")";
            },
            [](Halted const&) { return std::string("halt"); },
            [](Note const& x) { return "note(" + x.text + ")"; },
        },
        o);
}

} // namespace asymbft
