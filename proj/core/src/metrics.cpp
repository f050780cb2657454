#include "qsca/metrics.hpp"

#include "qsca/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qsca {

const char* to_string(MetricKind kind) {
  switch (kind) {
  case MetricKind::Trace:
    return "trace";
  case MetricKind::Energy:
    return "energy";
  case MetricKind::MeanPower:
    return "mean_power";
  case MetricKind::Duration:
    return "duration";
  }
  return "?";
}

std::optional<MetricKind> parse_metric(std::string_view name) {
  for (auto k : kAllMetrics) {
    if (name == to_string(k)) {
      return k;
    }
  }
  if (name == "mean" || name == "mean-power") {
    return MetricKind::MeanPower;
  }
  return std::nullopt;
}

double circuit_norm(std::span<const double> samples) {
  double acc = 0.0;
  for (double v : samples) {
    acc += v * v;
  }
  return std::sqrt(acc);
}

double squared_dist_bounded(std::span<const double> a, std::span<const double> b,
                            double cutoff) {
  const std::size_t common = std::min(a.size(), b.size());
  double acc = 0.0;
  std::size_t i = 0;
  for (; i < common; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
    if (acc > cutoff) {
      return acc;
    }
  }
  const auto tail = a.size() > b.size() ? a : b;
  for (; i < tail.size(); ++i) {
    acc += tail[i] * tail[i];
    if (acc > cutoff) {
      return acc;
    }
  }
  return acc;
}

double circuit_dist(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(
      squared_dist_bounded(a, b, std::numeric_limits<double>::infinity()));
}

double norm_dist(const PowerTrace& a, const PowerTrace& b) {
  const double n = circuit_norm(a);
  if (n == 0.0) {
    throw Error(ErrorKind::DegenerateNorm, "normalized distance from a zero-norm trace");
  }
  return circuit_dist(a, b) / n;
}

double min_pairwise_norm_dist(std::span<const PowerTrace> traces) {
  if (traces.size() < 2) {
    throw Error(ErrorKind::Arity, "need at least two traces, got " +
                                      std::to_string(traces.size()));
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < traces.size(); ++i) {
    for (std::size_t j = 0; j < traces.size(); ++j) {
      if (i != j) {
        best = std::min(best, norm_dist(traces[i], traces[j]));
      }
    }
  }
  return best;
}

} // namespace qsca
