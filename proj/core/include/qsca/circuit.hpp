#pragma once

#include "qsca/device.hpp"
#include "qsca/gate.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qsca {

struct GateApp {
  Gate gate = Gate::X;
  std::vector<int> qubits; // barrier: empty means all qubits
  double angle = 0.0;      // radians, rz only

  static GateApp x(int q) { return {Gate::X, {q}, 0.0}; }
  static GateApp sx(int q) { return {Gate::SX, {q}, 0.0}; }
  static GateApp id(int q) { return {Gate::I, {q}, 0.0}; }
  static GateApp rz(double theta, int q) { return {Gate::RZ, {q}, theta}; }
  static GateApp cx(int c, int t) { return {Gate::CX, {c, t}, 0.0}; }
  static GateApp measure(int q) { return {Gate::Measure, {q}, 0.0}; }
  static GateApp barrier(std::vector<int> qs = {}) {
    return {Gate::Barrier, std::move(qs), 0.0};
  }

  bool operator==(const GateApp&) const = default;
};

/// Logical qubit i lives on physical qubit layout[i].
using Layout = std::vector<int>;

struct Circuit {
  int num_qubits = 0;
  std::vector<GateApp> ops;
  std::string name;
  std::optional<Layout> layout;

  Circuit& add(GateApp op) {
    ops.push_back(std::move(op));
    return *this;
  }

  /// Throws Error(Format) if an op references a bad qubit or has a repeated
  /// operand.
  void validate() const;

  [[nodiscard]] std::size_t count(Gate gate) const;
};

/// Line-oriented text format:
///   qubits N
///   x q0 / sx q3 / rz(1.5708) q2 / cx q0 q1 / i q1 / barrier [q..] / measure q0
/// '#' starts a comment. Throws ParseError carrying the 1-based line number.
Circuit parse_circuit(std::string_view text);

/// Inverse of parse_circuit; angles are printed with round-trip precision.
std::string print_circuit(const Circuit& circuit);

/// Relabels operands through the layout and checks every CX lands on a
/// directed device edge. No routing is performed.
/// Throws Error(Layout) for a bad layout, Error(Connectivity) for a CX on a
/// non-edge.
Circuit apply_layout(const Circuit& circuit, const Layout& layout,
                     const Device& device);

bool is_connectivity_legal(const Circuit& circuit, const Device& device);

/// k! / (k - n)!, saturating at UINT64_MAX.
std::uint64_t layout_count(int n_logical, int n_physical);

/// Seeded sample without replacement of injective maps from n_logical
/// logical qubits into the device. When limit covers every map, all maps are
/// returned in lexicographic order.
std::vector<Layout> enumerate_layouts(int n_logical, const Device& device,
                                      std::size_t limit, std::uint64_t seed);

/// Layouts under which the circuit is connectivity legal, seeded order, at
/// most limit of them.
std::vector<Layout> legal_layouts(const Circuit& circuit, const Device& device,
                                  std::size_t limit, std::uint64_t seed);

/// Drops every RZ op (what a power-trace observer can recover at best).
Circuit strip_rz(const Circuit& circuit);

} // namespace qsca
