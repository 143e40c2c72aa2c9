#pragma once

// Reference computations used only by the tests. None of them call into the
// library's numerical routines.

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;

/// Root-raised-cosine amplitude spectrum written directly from its definition.
double rrc_amplitude_spectrum(double f, double beta, double T);

/// p(t) by inverse Fourier transform of the amplitude spectrum.
double rrc_by_inverse_fourier(double t, double beta, double T);

/// int p(x) p(x - t) dx over [-range, range] by adaptive time-domain quadrature.
double autocorrelation_time_domain(const std::function<double(double)>& p, double t, double range);

/// Closed-form raised-cosine pulse, which is the autocorrelation of rRC.
double raised_cosine(double t, double beta, double T);

/// ||y - H a||^2, summed row by row in index order.
double residual(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& H, const Eigen::VectorXcd& a);

struct BruteForce {
  std::vector<int> indices;
  double objective = 0.0;
};

/// Enumerates alphabet^N in lexicographic order; the first strict minimum wins.
BruteForce brute_force_mlse(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& H, const std::vector<cplx>& alphabet);

/// Gray-coded QPSK bit error probability, Es/N0 linear.
double qpsk_ber(double es_n0);

/// Polynomial product of two coefficient vectors.
std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace oracle
