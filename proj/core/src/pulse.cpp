#include "qsca/pulse.hpp"

#include "qsca/error.hpp"

#include <cmath>
#include <string>

namespace qsca {

const char* to_string(PulseKind kind) {
  return kind == PulseKind::Drag ? "Drag" : "GaussianSquare";
}

PulseShape PulseShape::drag(int duration, std::complex<double> amp, double sigma,
                            double beta) {
  PulseShape s;
  s.kind = PulseKind::Drag;
  s.duration = duration;
  s.amp = amp;
  s.sigma = sigma;
  s.beta = beta;
  return s;
}

PulseShape PulseShape::gaussian_square(int duration, std::complex<double> amp,
                                       double sigma, int width) {
  PulseShape s;
  s.kind = PulseKind::GaussianSquare;
  s.duration = duration;
  s.amp = amp;
  s.sigma = sigma;
  s.width = width;
  return s;
}

namespace {

void check_common(const PulseShape& shape) {
  if (shape.duration <= 0) {
    throw Error(ErrorKind::InvalidShape,
                "pulse duration must be positive, got " + std::to_string(shape.duration));
  }
  if (!(shape.sigma > 0.0)) {
    throw Error(ErrorKind::InvalidShape, "pulse sigma must be positive");
  }
}

double gaussian(double x, double sigma) {
  return std::exp(-(x * x) / (2.0 * sigma * sigma));
}

} // namespace

ComplexSeries sample_drag(const PulseShape& shape) {
  if (shape.kind != PulseKind::Drag) {
    throw Error(ErrorKind::ShapeMismatch, "sample_drag called on a GaussianSquare shape");
  }
  check_common(shape);
  const int d = shape.duration;
  const double mu = (d - 1) / 2.0;
  const double sigma = shape.sigma;
  const double anchor = gaussian(-1.0 - mu, sigma);
  const double scale = 1.0 - anchor;

  ComplexSeries out(static_cast<std::size_t>(d));
  for (int t = 0; t < d; ++t) {
    const double x = t - mu;
    const double g = gaussian(x, sigma);
    const double lifted = (g - anchor) / scale;
    const double deriv = shape.beta * (-x / (sigma * sigma)) * g;
    out[static_cast<std::size_t>(t)] = shape.amp * std::complex<double>(lifted, deriv);
  }
  return out;
}

ComplexSeries sample_gaussian_square(const PulseShape& shape) {
  if (shape.kind != PulseKind::GaussianSquare) {
    throw Error(ErrorKind::ShapeMismatch, "sample_gaussian_square called on a Drag shape");
  }
  check_common(shape);
  if (shape.width < 0 || shape.width >= shape.duration) {
    throw Error(ErrorKind::InvalidShape,
                "GaussianSquare width " + std::to_string(shape.width) +
                    " must lie in [0, duration " + std::to_string(shape.duration) + ")");
  }
  const int d = shape.duration;
  const double rise = shape.risefall();
  const double fall = rise + shape.width;
  const double sigma = shape.sigma;

  const auto unlifted = [&](double t) {
    if (t < rise) {
      return gaussian(t - rise, sigma);
    }
    if (t >= fall) {
      return gaussian(t - fall, sigma);
    }
    return 1.0;
  };
  const double anchor = unlifted(0.0);
  const double scale = 1.0 - anchor;

  ComplexSeries out(static_cast<std::size_t>(d));
  for (int t = 0; t < d; ++t) {
    const double lifted = (unlifted(t) - anchor) / scale;
    out[static_cast<std::size_t>(t)] = shape.amp * lifted;
  }
  return out;
}

ComplexSeries sample(const PulseShape& shape) {
  return shape.kind == PulseKind::Drag ? sample_drag(shape)
                                       : sample_gaussian_square(shape);
}

std::vector<double> sample_power(const PulseShape& shape) {
  const auto series = sample(shape);
  std::vector<double> out(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    out[i] = series[i].real() * series[i].real() + series[i].imag() * series[i].imag();
  }
  return out;
}

} // namespace qsca
