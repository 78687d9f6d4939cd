// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "asymbft/failprone_dsl.hpp"
#include "asymbft/quorums.hpp"

#include <benchmark/benchmark.h>

using namespace asymbft;

static void
BM_CanonicalQuorums(benchmark::State& state)
{
    auto const f = static_cast<std::size_t>(state.range(0));
    auto af = thresholdSystem(3 * f + 1, f);
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(asymCanonicalQuorums(af));
    }
}
BENCHMARK(BM_CanonicalQuorums)->DenseRange(1, 3);

static void
BM_CheckB3(benchmark::State& state)
{
    auto const f = static_cast<std::size_t>(state.range(0));
    auto af = thresholdSystem(3 * f + 1, f);
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(checkB3(af));
    }
}
BENCHMARK(BM_CheckB3)->DenseRange(1, 3);

static void
BM_MinimalKernels(benchmark::State& state)
{
    auto const f = static_cast<std::size_t>(state.range(0));
    auto aq = asymCanonicalQuorums(thresholdSystem(3 * f + 1, f));
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(minimalKernels(aq[0]));
    }
}
BENCHMARK(BM_MinimalKernels)->DenseRange(1, 4);

static void
BM_ClassifySevenProcessExample(benchmark::State& state)
{
    auto roster = defaultRoster(7);
    AsymFailProneSystem af({
        parseFailProne("theta(2,{p2,p4,p5}) * {p6} * {p7}", roster),
        parseFailProne("theta(2,{p3,p4,p5}) * {p6} * {p7}", roster),
        parseFailProne("theta(2,{p1,p4,p5}) * {p6} * {p7}", roster),
        parseFailProne("theta(1,{p1,p2,p3,p5}) * {p6} * {p7}", roster),
        parseFailProne("theta(1,{p1,p2,p3,p4}) * {p6} * {p7}", roster),
        parseFailProne("theta(3,{p1,p3,p7})", roster),
        parseFailProne("theta(3,{p3,p4,p5})", roster),
    });
    auto aq = asymCanonicalQuorums(af);
    ProcessSet const faulty(7, {3, 4});
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(classify(af, aq, faulty));
    }
}
BENCHMARK(BM_ClassifySevenProcessExample);
