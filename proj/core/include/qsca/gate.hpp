#pragma once

#include <optional>
#include <string_view>

namespace qsca {

/// Basis gates plus the two structural ops the circuit format accepts.
enum class Gate { I, RZ, SX, X, CX, Barrier, Measure };

/// Lower-case mnemonic as used in .qc files ("x", "sx", "cx", ...).
const char* to_string(Gate gate);

/// Case-insensitive inverse of to_string.
std::optional<Gate> parse_gate(std::string_view name);

constexpr int arity(Gate gate) {
  switch (gate) {
  case Gate::CX:
    return 2;
  case Gate::Barrier:
    return -1; // variadic
  default:
    return 1;
  }
}

constexpr bool has_pulses(Gate gate) {
  return gate == Gate::X || gate == Gate::SX || gate == Gate::CX;
}

} // namespace qsca
