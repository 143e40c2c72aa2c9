#pragma once

#include <cstdint>
#include <random>

#include "ftnsdr/types.hpp"

namespace ftn {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Independent stream for (master seed, counter path). Streams depend only on
/// their counters, so trials can run in any order.
Rng make_stream(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

/// Circularly-symmetric complex Gaussian vector, E|x_k|^2 = variance.
CVector complex_gaussian(Rng& rng, int n, double variance);
RVector real_gaussian(Rng& rng, int n, double variance = 1.0);

}  // namespace ftn
