#include <benchmark/benchmark.h>

#include "ftnsdr/channel.hpp"
#include "ftnsdr/constellation.hpp"
#include "ftnsdr/mlse.hpp"
#include "ftnsdr/psk_sdr.hpp"
#include "ftnsdr/pulse.hpp"
#include "ftnsdr/stsdrse.hpp"

namespace {

struct Fixture {
  ftn::FtnConfig cfg;
  ftn::IsiModel model;
  ftn::ReceivedBlock block;
};

Fixture make_fixture(ftn::Modulation mod, int M, int N, double snr_db) {
  Fixture f;
  f.cfg.modulation = mod;
  f.cfg.M = M;
  f.cfg.N = N;
  f.cfg.sigma2 = f.cfg.sigma2_for_snr(snr_db);
  f.model = ftn::build_isi_model(ftn::rrc_pulse(f.cfg.beta, f.cfg.T), f.cfg);
  ftn::Rng rng = ftn::make_stream(11, static_cast<std::uint64_t>(N));
  const auto a = ftn::map_symbols(ftn::random_indices(rng, N, M), f.cfg);
  f.block = ftn::simulate_block(a, f.model, f.cfg, rng);
  return f;
}

void BM_DetectPsk(benchmark::State& state) {
  const auto f = make_fixture(ftn::Modulation::Psk, 8, static_cast<int>(state.range(0)), 12.0);
  ftn::Rng rng = ftn::make_stream(3, 0);
  for (auto _ : state) {
    auto r = ftn::detect_psk(f.block.y_w, f.model, f.cfg, rng);
    benchmark::DoNotOptimize(r.rounded_objective);
  }
}
BENCHMARK(BM_DetectPsk)->Arg(8)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_Detect16Qam(benchmark::State& state) {
  const auto f = make_fixture(ftn::Modulation::Qam16, 16, static_cast<int>(state.range(0)), 16.0);
  ftn::Rng rng = ftn::make_stream(3, 1);
  for (auto _ : state) {
    auto r = ftn::detect_16qam(f.block, f.model, f.cfg, ftn::ReceivePath::Whitened, rng);
    benchmark::DoNotOptimize(r.rounded_objective);
  }
}
BENCHMARK(BM_Detect16Qam)->Arg(8)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_MlseExhaustive(benchmark::State& state) {
  const auto f = make_fixture(ftn::Modulation::Psk, 4, static_cast<int>(state.range(0)), 8.0);
  const auto H = ftn::whitened_channel(f.model, f.cfg);
  const auto points = ftn::Constellation::for_config(f.cfg).points();
  for (auto _ : state) {
    auto r = ftn::mlse_exhaustive(f.block.y_w, H, points);
    benchmark::DoNotOptimize(r.objective);
  }
}
BENCHMARK(BM_MlseExhaustive)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
