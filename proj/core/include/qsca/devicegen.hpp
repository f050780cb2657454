#pragma once

#include "qsca/circuit.hpp"
#include "qsca/device.hpp"
#include "qsca/library.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace qsca {

enum class TopologyShape { Line, TShape, HShape };

const char* to_string(TopologyShape shape);
std::optional<TopologyShape> parse_shape(std::string_view name);

/// Undirected couplings; the device gets both directions of each.
/// Throws Error(InvalidDevice) when n does not fit the shape (t: 5, h: 7).
std::vector<std::pair<int, int>> coupling_pairs(TopologyShape shape, int n);

struct GeneratedDevice {
  Device device;
  BasisPulseLibrary library;
};

/// Synthetic backend: granularity 16, dt 2.2222e-10 s, per-qubit Drag X/SX
/// and per-edge three-pulse CX entries with seeded parameters.
GeneratedDevice gen_device(TopologyShape shape, int n, std::uint64_t seed);

/// Seeded random circuit over {X, SX, CX, RZ} on the device. CX operands are
/// drawn from device edges. active_qubits > 0 restricts the circuit to a
/// random connected subset of that size.
Circuit gen_random_circuit(const Device& device, int n_gates, std::uint64_t seed,
                           double rz_fraction, int active_qubits = 0);

/// Device with a bidirectional line coupling over n qubits and no pulses;
/// used as the logical target for generators.
Device line_device(int n);

} // namespace qsca
