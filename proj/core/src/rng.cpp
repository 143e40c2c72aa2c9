#include "ftnsdr/rng.hpp"

#include <cmath>

namespace ftn {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng make_stream(std::uint64_t master, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ splitmix64(a + 0x1ULL));
  h = splitmix64(h ^ splitmix64(b + 0x2ULL));
  h = splitmix64(h ^ splitmix64(c + 0x3ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  return Rng(seq);
}

CVector complex_gaussian(Rng& rng, int n, double variance) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5 * variance));
  CVector x(n);
  for (int k = 0; k < n; ++k) {
    const double re = nd(rng);
    const double im = nd(rng);
    x[k] = cplx(re, im);
  }
  return x;
}

RVector real_gaussian(Rng& rng, int n, double variance) {
  std::normal_distribution<double> nd(0.0, std::sqrt(variance));
  RVector x(n);
  for (int k = 0; k < n; ++k) x[k] = nd(rng);
  return x;
}

}  // namespace ftn
