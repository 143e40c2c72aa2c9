#pragma once

namespace ftn {

/// Probability that the received phase of a PSK symbol falls in
/// [theta_lo, theta_hi) in AWGN with Es/N0 = snr (linear), measured from the
/// transmitted phase.
double psk_phase_probability(double snr, double theta_lo, double theta_hi);

/// Symbol error rate of Gray-coded M-PSK in AWGN with coherent detection.
double psk_awgn_ser(int M, double snr_db);
/// Bit error rate of Gray-coded M-PSK in AWGN, from exact sector probabilities.
double psk_awgn_ber(int M, double snr_db);

/// Gaussian tail Q(x).
double q_function(double x);

struct ProportionInterval {
  double lo;
  double hi;
};

/// Two-sided binomial confidence interval for `successes` out of `n`
/// (Clopper-Pearson).
ProportionInterval binomial_interval(long long successes, long long n, double confidence = 0.95);

}  // namespace ftn
