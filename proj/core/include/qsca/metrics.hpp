#pragma once

#include "qsca/tracegen.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace qsca {

/// The four physical quantities an observer may compare.
enum class MetricKind { Trace, Energy, MeanPower, Duration };

const char* to_string(MetricKind kind);
std::optional<MetricKind> parse_metric(std::string_view name);
inline constexpr MetricKind kAllMetrics[] = {MetricKind::Trace, MetricKind::Energy,
                                             MetricKind::MeanPower,
                                             MetricKind::Duration};

/// Euclidean norm of the samples.
double circuit_norm(std::span<const double> samples);
inline double circuit_norm(const PowerTrace& t) { return circuit_norm(t.samples); }

/// Euclidean distance after zero-padding the shorter trace.
double circuit_dist(std::span<const double> a, std::span<const double> b);
inline double circuit_dist(const PowerTrace& a, const PowerTrace& b) {
  return circuit_dist(a.samples, b.samples);
}

/// dist(a, b) / norm(a). Throws Error(DegenerateNorm) if norm(a) == 0.
double norm_dist(const PowerTrace& a, const PowerTrace& b);

/// Min over ordered pairs i != j of norm_dist(t_i, t_j).
/// Throws Error(Arity) for fewer than two traces.
double min_pairwise_norm_dist(std::span<const PowerTrace> traces);

/// Squared padded distance, abandoning once the partial sum exceeds cutoff
/// (returns a value > cutoff in that case). Partial sums are accumulated in
/// index order so a completed result equals circuit_dist(a, b)^2 exactly.
double squared_dist_bounded(std::span<const double> a, std::span<const double> b,
                            double cutoff);

} // namespace qsca
