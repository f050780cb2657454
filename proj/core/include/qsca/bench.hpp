#pragma once

#include "qsca/attacks.hpp"
#include "qsca/circuit.hpp"
#include "qsca/devicegen.hpp"
#include "qsca/metrics.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qsca {

struct BenchConfig {
  TopologyShape shape = TopologyShape::HShape;
  int qubits = 7;
  std::uint64_t device_seed = 0;
  int corpus_size = 30;
  std::uint64_t corpus_seed = 0;
  std::uint64_t layout_seed = 0;
  std::vector<int> layout_counts{1, 2, 4, 8, 16, 32};
  std::vector<MetricKind> metrics{std::begin(kAllMetrics), std::end(kAllMetrics)};
  int co_max_qubits = 3;    // CO families for n = 1..co_max_qubits
  int qm_layouts = 10;      // layouts per circuit in the QM table
  int qp_devices = 3;       // devices (seeds device_seed..) in the QP table
  int ansatz_qubits = 4;
};

/// Logical circuits of the UC corpus. Includes pairs that share a duration
/// by construction (an X swapped for an SX) so timing collides where power
/// does not.
std::vector<Circuit> bench_corpus(int size, std::uint64_t seed);

/// CL_i: every corpus circuit under min(i, #legal layouts) layouts. The
/// layouts chosen for i are a prefix of those chosen for 2i.
CandidateList expanded_candidates(const std::vector<Circuit>& corpus, int layouts,
                                  const GeneratedDevice& dev, std::uint64_t layout_seed);

struct AccuracyRow {
  int layouts;
  MetricKind metric;
  std::size_t circuits;
  double accuracy;
};

struct DistanceRow {
  std::string scenario; // CO, CA, QM, QP
  std::string name;
  int qubits;
  std::size_t size;
  double value;
};

struct BenchReport {
  std::vector<AccuracyRow> accuracy;
  std::vector<DistanceRow> distances;
};

BenchReport run_bench(const BenchConfig& config);

/// Columns: layouts,metric,accuracy
std::string accuracy_csv(const std::vector<AccuracyRow>& rows);
/// Columns: scenario,name,qubits,size,value
std::string distances_csv(const std::vector<DistanceRow>& rows);

} // namespace qsca
