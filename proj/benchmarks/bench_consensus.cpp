// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "asymbft/attack.hpp"
#include "asymbft/consensus.hpp"

#include <benchmark/benchmark.h>

using namespace asymbft;

// One fixed-variant run on threshold(3f+1, f) with f silent processes.
static void
BM_ConsensusRun(benchmark::State& state)
{
    auto const f = static_cast<std::size_t>(state.range(0));
    std::size_t const n = 3 * f + 1;
    ConsensusScenario s;
    s.failProne = thresholdSystem(n, f);
    s.quorums = asymCanonicalQuorums(s.failProne);
    s.faulty = ProcessSet(n);
    for (std::size_t p = n - f; p < n; ++p)
    {
        s.faulty.insert(p);
    }
    for (std::size_t p = 0; p < n; ++p)
    {
        s.inputs.push_back(static_cast<int>(p % 2));
    }
    s.recordEvents = false;
    std::uint64_t seed = 0;
    for (auto _ : state)
    {
        s.seed = ++seed;
        benchmark::DoNotOptimize(runConsensus(s));
    }
}
BENCHMARK(BM_ConsensusRun)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

static void
BM_AttackPodc14(benchmark::State& state)
{
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(runAttack(Variant::Podc14, 1, 100));
    }
}
BENCHMARK(BM_AttackPodc14)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
