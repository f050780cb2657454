#pragma once

#include <complex>
#include <vector>

namespace qsca {

enum class PulseKind { Drag, GaussianSquare };

const char* to_string(PulseKind kind);

/// Envelope parameters of one calibrated pulse. Durations and widths are in
/// samples; amplitudes are dimensionless fractions of full AWG scale.
struct PulseShape {
  PulseKind kind = PulseKind::Drag;
  int duration = 0;
  std::complex<double> amp{};
  double sigma = 1.0;
  double beta = 0.0; // Drag only
  int width = 0;     // GaussianSquare only

  static PulseShape drag(int duration, std::complex<double> amp, double sigma,
                         double beta);
  static PulseShape gaussian_square(int duration, std::complex<double> amp,
                                    double sigma, int width);

  [[nodiscard]] double risefall() const { return (duration - width) / 2.0; }

  bool operator==(const PulseShape&) const = default;
};

using ComplexSeries = std::vector<std::complex<double>>;

/// amp * [lifted(t) + i*beta*(-(t-mu)/sigma^2)*g(t)], mu = (d-1)/2,
/// lifted Gaussian anchored at g(-1).
ComplexSeries sample_drag(const PulseShape& shape);

/// Flat top of width w between two Gaussian flanks, lifted so sample 0 is 0
/// and rescaled so the flat top equals amp.
ComplexSeries sample_gaussian_square(const PulseShape& shape);

/// Dispatches on shape.kind.
ComplexSeries sample(const PulseShape& shape);

/// |sample(shape)|^2 per sample.
std::vector<double> sample_power(const PulseShape& shape);

} // namespace qsca
