#include <gtest/gtest.h>

#include <random>

#include "ftnsdr/errors.hpp"
#include "ftnsdr/spectral_factor.hpp"
#include "oracles.hpp"

using ftn::spectral_factorize;

namespace {

// One-sided taps of v * rev(v).
std::vector<double> one_sided(const std::vector<double>& v) {
  std::vector<double> rev(v.rbegin(), v.rend());
  const auto full = oracle::convolve(v, rev);
  return {full.begin() + static_cast<long>(v.size()) - 1, full.end()};
}

}  // namespace

TEST(SpectralFactor, SingleTap) {
  const std::vector<double> g{1.0};
  const auto f = spectral_factorize(g);
  ASSERT_EQ(f.taps.size(), 1);
  EXPECT_NEAR(f.taps[0], 1.0, 1e-12);
}

TEST(SpectralFactor, TwoTapPolynomial) {
  // G(z) = (1 + 0.5 z^-1)(1 + 0.5 z)
  const std::vector<double> g{1.25, 0.5};
  const auto f = spectral_factorize(g);
  ASSERT_EQ(f.taps.size(), 2);
  EXPECT_NEAR(f.taps[0], 1.0, 1e-9);
  EXPECT_NEAR(f.taps[1], 0.5, 1e-9);
  EXPECT_LE(f.residual, 1e-6);
}

TEST(SpectralFactor, RecoversRandomMinimumPhaseFactor) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> radius(0.1, 0.9);
  std::uniform_real_distribution<double> angle(0.0, 3.14159);
  for (int rep = 0; rep < 10; ++rep) {
    // two conjugate pairs and one real zero, all inside the unit circle
    std::vector<double> v{1.0};
    for (int p = 0; p < 2; ++p) {
      const double r = radius(rng);
      const double a = angle(rng);
      v = oracle::convolve(v, {1.0, -2.0 * r * std::cos(a), r * r});
    }
    v = oracle::convolve(v, {1.0, radius(rng) - 0.5});
    const auto f = spectral_factorize(one_sided(v));
    ASSERT_EQ(f.taps.size(), static_cast<Eigen::Index>(v.size()));
    for (std::size_t k = 0; k < v.size(); ++k) EXPECT_NEAR(f.taps[static_cast<Eigen::Index>(k)], v[k], 1e-8);
  }
}

TEST(SpectralFactor, ResidualAndMinimumPhase) {
  const auto g = one_sided({1.0, 0.3, -0.2, 0.1});
  const auto f = spectral_factorize(g);
  EXPECT_GT(f.taps[0], 0.0);
  const auto back = ftn::autocorrelate_taps(f.taps);
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_NEAR(back[static_cast<Eigen::Index>(k)], g[k], 1e-6);
  const auto zeros = ftn::polynomial_zeros(f.taps);
  for (auto z : zeros) EXPECT_LE(std::abs(z), 1.0 - 1e-9);
  EXPECT_LE(f.max_root_modulus, 1.0 - 1e-9);
}

TEST(SpectralFactor, NegativeSpectrumThrows) {
  const std::vector<double> g{1.0, 0.6};  // G(-1) = -0.2
  try {
    spectral_factorize(g);
    FAIL() << "expected SpectrumError";
  } catch (const ftn::SpectrumError& e) {
    EXPECT_NEAR(e.min_value(), -0.2, 1e-6);
  }
}

TEST(SpectralFactor, TapSpectrum) {
  const std::vector<double> g{1.25, 0.5};
  EXPECT_NEAR(ftn::tap_spectrum(g, 0.0), 2.25, 1e-15);
  EXPECT_NEAR(ftn::tap_spectrum(g, 3.14159265358979), 0.25, 1e-12);
}
