// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "asymbft/coin.hpp"
#include "asymbft/consensus.hpp"
#include "asymbft/simnet.hpp"

#include <memory>
#include <random>
#include <set>

namespace asymbft
{

// Joins each round the first time it sees traffic for it. Every faulty
// process sends each correct process a random VALUE bit (sometimes both), a
// random AUX bit (sometimes both) and its coin shares with random flips, so
// different receivers see different stories. After the first correct DECIDE
// it sends each correct process a random DECIDE bit.
class EquivocatingAdversary : public Adversary
{
  public:
    EquivocatingAdversary(std::shared_ptr<CoinDeal const> deal,
                          std::uint64_t seed);

    void onStart(AdversaryContext& ctx) override;
    void onReceive(Envelope const& env, AdversaryContext& ctx) override;

  private:
    void engage(Round r, AdversaryContext& ctx);
    int flip();

    std::shared_ptr<CoinDeal const> mDeal;
    std::mt19937_64 mRng;
    std::set<Round> mEngaged;
    bool mDecideSent{false};
};

// Pushes both VALUE bits at every correct process, waits until some correct
// process releases the round's coin s, then sends AUX(not s) to everyone
// before handing out its true shares. Answers the first correct DECIDE(b)
// with DECIDE(not b).
class CoinPeekingAdversary : public Adversary
{
  public:
    explicit CoinPeekingAdversary(std::shared_ptr<CoinDeal const> deal);

    void onStart(AdversaryContext& ctx) override;
    void onReceive(Envelope const& env, AdversaryContext& ctx) override;
    void onStep(AdversaryContext& ctx) override;

  private:
    void engage(Round r, AdversaryContext& ctx);

    std::shared_ptr<CoinDeal const> mDeal;
    std::set<Round> mEngaged;
    std::set<Round> mPushed;
    bool mDecideSent{false};
};

std::unique_ptr<Adversary> makeAdversary(AdversaryKind kind,
                                         std::shared_ptr<CoinDeal const> deal,
                                         std::uint64_t seed);

} // namespace asymbft
