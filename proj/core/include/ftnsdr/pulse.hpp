#pragma once

namespace ftn {

/// Unit-energy root-raised-cosine pulse.
class RrcPulse {
 public:
  RrcPulse(double beta, double T);

  double beta() const noexcept { return beta_; }
  double T() const noexcept { return T_; }

  /// p(t), units 1/sqrt(s). Removable singularities use their limits.
  double operator()(double t) const;

  /// Amplitude spectrum P(f); real, even, supported on |f| <= (1+beta)/(2T).
  double spectrum(double f) const;

  /// |P(f)|^2, the raised-cosine power spectrum.
  double power_spectrum(double f) const;

  /// Autocorrelation g(t) = int p(x) p(x - t) dx, evaluated by quadrature of
  /// |P(f)|^2 cos(2 pi f t) over the (compact) band.
  double autocorrelation(double t) const;

  /// int |P(f)|^2 df; equals 1 up to quadrature error.
  double energy() const;

 private:
  double beta_;
  double T_;
};

RrcPulse rrc_pulse(double beta, double T = 1.0);

}  // namespace ftn
