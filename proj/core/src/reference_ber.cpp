#include "ftnsdr/reference_ber.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ftnsdr/constellation.hpp"
#include "ftnsdr/errors.hpp"

namespace ftn {

namespace {

using std::numbers::pi;

// Density of the received phase offset for a unit-modulus symbol in AWGN.
double phase_density(double snr, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return std::exp(-snr) / (2.0 * pi) +
         0.5 * std::sqrt(snr / pi) * c * std::exp(-snr * s * s) * std::erfc(-std::sqrt(snr) * c);
}

}  // namespace

double psk_phase_probability(double snr, double theta_lo, double theta_hi) {
  if (!(snr >= 0.0)) throw ParameterError("psk_phase_probability: snr must be nonnegative");
  if (theta_hi <= theta_lo) return 0.0;
  auto f = [snr](double t) { return phase_density(snr, t); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, theta_lo, theta_hi, 20, 1e-13);
}

double psk_awgn_ser(int M, double snr_db) {
  if (M < 2 || !is_power_of_two(M)) throw ParameterError("psk_awgn_ser: M must be a power of two >= 2");
  const double snr = std::pow(10.0, snr_db / 10.0);
  return 1.0 - psk_phase_probability(snr, -pi / M, pi / M);
}

double psk_awgn_ber(int M, double snr_db) {
  if (M < 2 || !is_power_of_two(M)) throw ParameterError("psk_awgn_ber: M must be a power of two >= 2");
  const double snr = std::pow(10.0, snr_db / 10.0);
  const int bits = std::countr_zero(static_cast<unsigned>(M));
  double ber = 0.0;
  for (int k = 1; k < M; ++k) {
    const double pk = psk_phase_probability(snr, (2 * k - 1) * pi / M, (2 * k + 1) * pi / M);
    double dist = 0.0;  // mean Hamming distance between labels k sectors apart
    for (int i = 0; i < M; ++i) {
      const auto a = gray_encode(static_cast<std::uint32_t>(i));
      const auto b = gray_encode(static_cast<std::uint32_t>((i + k) % M));
      dist += std::popcount(a ^ b);
    }
    ber += pk * dist / M;
  }
  return ber / bits;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

ProportionInterval binomial_interval(long long successes, long long n, double confidence) {
  if (n <= 0 || successes < 0 || successes > n) throw ParameterError("binomial_interval: need 0 <= successes <= n, n > 0");
  if (!(confidence > 0.0 && confidence < 1.0)) throw ParameterError("binomial_interval: confidence must lie in (0, 1)");
  const double alpha = 1.0 - confidence;
  const auto k = static_cast<double>(successes);
  const auto m = static_cast<double>(n);
  ProportionInterval r{0.0, 1.0};
  if (successes > 0) r.lo = boost::math::quantile(boost::math::beta_distribution<>(k, m - k + 1.0), alpha / 2.0);
  if (successes < n) r.hi = boost::math::quantile(boost::math::beta_distribution<>(k + 1.0, m - k), 1.0 - alpha / 2.0);
  return r;
}

}  // namespace ftn
