// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "asymbft/quorums.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace asymbft
{

// Compact notation for fail-prone systems:
//
//   expr := term ('*' term)*
//   term := 'theta(' k ',' '{' names '}' ')' | '{' names '}'
//         | '[' [expr (',' expr)*] ']'
//
// theta(k, S) is the family of all k-subsets of S, '*' joins every pair of
// members, and [a, b, ...] is the union of its alternatives. Names are bound
// to indices by roster order.
struct TrustExpr
{
    enum class Kind
    {
        Literal,
        Threshold,
        Product,
        UnionList
    };

    Kind kind{Kind::Literal};
    // Literal and Threshold.
    ProcessSet names;
    // Threshold only.
    std::size_t k{0};
    // Product has exactly two children (left, right); UnionList any number.
    std::vector<TrustExpr> children;

    friend bool operator==(TrustExpr const&, TrustExpr const&) = default;
};

using Roster = std::vector<std::string>;

// p1..pn.
Roster defaultRoster(std::size_t n);

// Throws ParseError on a syntax error, unknown name or bad threshold.
TrustExpr parseTrustExpr(std::string_view text, Roster const& roster);

// Normalized to an antichain.
SetFamily evalTrustExpr(TrustExpr const& expr, std::size_t n);

SetFamily parseFailProne(std::string_view text, Roster const& roster);

// Union-of-literals form: a single set prints as "{a,b}", any other family
// as "[{..},{..}]"; the empty family prints as "[]".
std::string formatFamily(SetFamily const& family, Roster const& roster);
std::string formatFamily(SetFamily const& family);

std::string formatSet(ProcessSet const& set, Roster const& roster);

} // namespace asymbft
