#include <benchmark/benchmark.h>

#include "ftnsdr/channel.hpp"
#include "ftnsdr/constellation.hpp"
#include "ftnsdr/psk_sdr.hpp"
#include "ftnsdr/pulse.hpp"
#include "ftnsdr/sdp_solver.hpp"

namespace {

ftn::PskRelaxation psk_problem(int N) {
  ftn::FtnConfig cfg;
  cfg.N = N;
  cfg.sigma2 = cfg.sigma2_for_snr(10.0);
  const auto model = ftn::build_isi_model(ftn::rrc_pulse(cfg.beta, cfg.T), cfg);
  ftn::Rng rng = ftn::make_stream(7, static_cast<std::uint64_t>(N));
  const auto a = ftn::map_symbols(ftn::random_indices(rng, N, cfg.M), cfg);
  const auto block = ftn::simulate_block(a, model, cfg, rng, ftn::ReceivePaths::Whitened);
  return ftn::build_psk_sdr(model, block.y_w, cfg);
}

void BM_SdpSolvePsk(benchmark::State& state) {
  const auto relax = psk_problem(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto sol = ftn::sdp::solve(relax.problem);
    benchmark::DoNotOptimize(sol.objective);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SdpSolvePsk)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond)->Complexity();

}  // namespace
