#include "qsca/attacks.hpp"

#include "qsca/error.hpp"
#include "qsca/parallel.hpp"

#include <cmath>
#include <limits>
#include <set>

namespace qsca {

Candidate make_candidate(std::string id, Circuit physical, const BasisPulseLibrary& lib,
                         const Device& device) {
  Candidate c;
  c.id = std::move(id);
  c.schedule = schedule(physical, lib, device);
  c.trace = total_power(c.schedule, device);
  if (!c.trace.samples.empty()) {
    c.stats = scalar_stats(c.trace);
  }
  c.circuit = std::move(physical);
  return c;
}

CandidateList::CandidateList(std::vector<Candidate> entries) {
  for (auto& e : entries) {
    add(std::move(e));
  }
}

void CandidateList::add(Candidate candidate) {
  for (const auto& e : entries_) {
    if (e.id == candidate.id) {
      throw Error(ErrorKind::Format, "duplicate candidate id '" + candidate.id + "'");
    }
  }
  entries_.push_back(std::move(candidate));
}

std::vector<PowerTrace> CandidateList::traces() const {
  std::vector<PowerTrace> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) {
    out.push_back(e.trace);
  }
  return out;
}

Quantity quantity_of(const Candidate& candidate, MetricKind metric) {
  switch (metric) {
  case MetricKind::Trace:
    return candidate.trace;
  case MetricKind::Energy:
    return candidate.stats.energy;
  case MetricKind::MeanPower:
    return candidate.stats.mean_power;
  case MetricKind::Duration:
    return static_cast<double>(candidate.stats.duration);
  }
  return 0.0;
}

double quantity_distance(const Quantity& a, const Quantity& b) {
  if (a.index() != b.index()) {
    throw Error(ErrorKind::ShapeMismatch, "cannot compare a trace with a scalar");
  }
  if (const auto* ta = std::get_if<PowerTrace>(&a)) {
    return circuit_dist(*ta, std::get<PowerTrace>(b));
  }
  return std::abs(std::get<double>(a) - std::get<double>(b));
}

namespace {

double scalar_of(const Candidate& c, MetricKind metric) {
  return std::get<double>(quantity_of(c, metric));
}

} // namespace

Identification identify_uc(const Quantity& measured, const CandidateList& candidates,
                           MetricKind metric) {
  if (candidates.empty()) {
    throw Error(ErrorKind::Arity, "identification needs at least one candidate");
  }
  const bool want_trace = metric == MetricKind::Trace;
  if (want_trace != std::holds_alternative<PowerTrace>(measured)) {
    throw Error(ErrorKind::ShapeMismatch, std::string("measurement does not fit metric ") +
                                              to_string(metric));
  }
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  if (want_trace) {
    const auto& m = std::get<PowerTrace>(measured).samples;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      // Abandon well past the current best so that every candidate that could
      // tie after the square root is still evaluated in full.
      const double cutoff = std::isinf(best_dist)
                                ? best_dist
                                : best_dist * best_dist * (1.0 + 1e-9) + 1e-300;
      const double sq = squared_dist_bounded(m, candidates[i].trace.samples, cutoff);
      if (sq > cutoff) {
        continue;
      }
      if (const double d = std::sqrt(sq); d < best_dist) {
        best_dist = d;
        best = i;
      }
    }
  } else {
    const double m = std::get<double>(measured);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (const double d = std::abs(m - scalar_of(candidates[i], metric)); d < best_dist) {
        best_dist = d;
        best = i;
      }
    }
  }
  return {best, candidates[best].id, best_dist};
}

double uc_accuracy(const CandidateList& candidates, MetricKind metric) {
  if (candidates.empty()) {
    throw Error(ErrorKind::Arity, "accuracy of an empty candidate list");
  }
  std::vector<std::uint8_t> correct(candidates.size(), 0);
  parallel_for(candidates.size(), [&](std::size_t i) {
    const auto hit = identify_uc(quantity_of(candidates[i], metric), candidates, metric);
    correct[i] = hit.index == i ? 1 : 0;
  });
  std::size_t n = 0;
  for (auto c : correct) {
    n += c;
  }
  return static_cast<double>(n) / static_cast<double>(candidates.size());
}

double distinguishability(const CandidateList& set) {
  const auto traces = set.traces();
  return min_pairwise_norm_dist(traces);
}

CandidateList layout_family(const Circuit& logical, const std::vector<Layout>& layouts,
                            const BasisPulseLibrary& lib, const Device& device) {
  CandidateList out;
  for (const auto& layout : layouts) {
    std::string id = logical.name.empty() ? std::string("circuit") : logical.name;
    id += "@";
    for (std::size_t i = 0; i < layout.size(); ++i) {
      id += (i ? "-" : "") + std::to_string(layout[i]);
    }
    out.add(make_candidate(std::move(id), apply_layout(logical, layout, device), lib, device));
  }
  return out;
}

} // namespace qsca
