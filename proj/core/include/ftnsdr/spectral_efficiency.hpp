#pragma once

namespace ftn {

/// log2(M) / (tau (1 + beta)) bits/s/Hz for rRC signalling.
double spectral_efficiency(int M, double tau, double beta);

/// Relative SE gain of time packing tau over Nyquist signalling, in percent.
double se_gain_percent(double tau);

}  // namespace ftn
