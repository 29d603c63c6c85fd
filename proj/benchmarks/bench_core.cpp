// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "axsched/assignment.hpp"
#include "axsched/channel.hpp"
#include "axsched/scheduler.hpp"
#include "axsched/units.hpp"

using namespace axsched;

namespace {

Matrix<double> random_weights(std::size_t n, Rng& rng) {
  Matrix<double> w(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w(i, j) = 1000.0 * (rng.uniform01() - 0.2);
  }
  return w;
}

void BM_Hungarian(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  Rng rng(7);
  const Matrix<double> w = random_weights(n, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_max_assignment(w, true));
  }
}
BENCHMARK(BM_Hungarian)->Arg(9)->Arg(16)->Arg(32)->Arg(64);

void BM_RateTable(benchmark::State& state) {
  const std::size_t stations = static_cast<std::size_t>(state.range(0));
  PhyConfig phy;
  const McsTable mcs = default_mcs_table();
  const Topology topo = generate_topology(stations, 20.0, 4.4, 15.0, 1);
  Rng rng(2);
  const ChannelState chan = sample_channel(stations, phy.n_rus, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_rate_table(chan, topo, phy, mcs));
  }
}
BENCHMARK(BM_RateTable)->Arg(8)->Arg(16)->Arg(32);

void BM_DppEpoch(benchmark::State& state) {
  const std::size_t stations = static_cast<std::size_t>(state.range(0));
  PhyConfig phy;
  const McsTable mcs = default_mcs_table();
  const Topology topo = generate_topology(stations, 20.0, 4.4, 15.0, 1);
  PolicyConfig cfg = PolicyConfig::uniform(PolicyKind::Esrm, stations, 100.0, 26000.0,
                                           dbm_to_mw(14.0), aux_rate_grid(phy, mcs));
  QueueState queues = QueueState::zeros(stations);
  Rng rng(3);
  for (auto _ : state) {
    const ChannelState chan = sample_channel(stations, phy.n_rus, rng);
    const EpochDecision dec = dpp_epoch(queues, chan, topo, phy, mcs, cfg);
    queues = dec.next;
    benchmark::DoNotOptimize(queues);
  }
}
BENCHMARK(BM_DppEpoch)->Arg(10)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
