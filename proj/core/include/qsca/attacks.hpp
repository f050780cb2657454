#pragma once

#include "qsca/circuit.hpp"
#include "qsca/library.hpp"
#include "qsca/metrics.hpp"
#include "qsca/scheduler.hpp"
#include "qsca/tracegen.hpp"

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace qsca {

/// A circuit the attacker can simulate, with its derived observables.
struct Candidate {
  std::string id;
  Circuit circuit; // physical (layout applied)
  Schedule schedule;
  PowerTrace trace; // total power
  ScalarStats stats; // all zero for a pulse-free circuit
};

/// Schedules the physical circuit and derives its trace and stats.
Candidate make_candidate(std::string id, Circuit physical,
                         const BasisPulseLibrary& lib, const Device& device);

/// Ordered list of candidates with unique ids.
class CandidateList {
public:
  CandidateList() = default;
  explicit CandidateList(std::vector<Candidate> entries);

  /// Throws Error(Format) on a duplicate id.
  void add(Candidate candidate);

  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] const Candidate& operator[](std::size_t i) const { return entries_[i]; }
  [[nodiscard]] const std::vector<Candidate>& entries() const { return entries_; }
  [[nodiscard]] std::vector<PowerTrace> traces() const;

private:
  std::vector<Candidate> entries_;
};

/// A measured observable: a total trace, or one scalar.
using Quantity = std::variant<PowerTrace, double>;

Quantity quantity_of(const Candidate& candidate, MetricKind metric);

/// Distance between two quantities of the same metric: circuit_dist for
/// traces, absolute difference for scalars.
double quantity_distance(const Quantity& a, const Quantity& b);

struct Identification {
  std::size_t index = 0;
  std::string id;
  double distance = 0.0;
};

/// Nearest candidate to the measurement; the first candidate wins ties.
Identification identify_uc(const Quantity& measured, const CandidateList& candidates,
                           MetricKind metric);

/// Fraction of candidates identified as themselves from their own
/// noiseless quantity.
double uc_accuracy(const CandidateList& candidates, MetricKind metric);

/// Minimum pairwise normalized circuit distance over the set's traces.
double distinguishability(const CandidateList& set);

/// One circuit under several layouts (qubit mapping scenario).
CandidateList layout_family(const Circuit& logical, const std::vector<Layout>& layouts,
                            const BasisPulseLibrary& lib, const Device& device);

} // namespace qsca
