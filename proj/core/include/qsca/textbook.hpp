#pragma once

#include "qsca/circuit.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qsca {

enum class TextbookAlgo { BV, DJ, GS };

const char* to_string(TextbookAlgo algo);
std::optional<TextbookAlgo> parse_algo(std::string_view name);

/// Bit strings are written most significant first: param[n-1-i] is the bit
/// of data qubit i.
std::vector<std::string> all_bitstrings(int n);

/// Qubits used by the algorithm: BV and DJ add one ancilla (the last qubit).
int textbook_qubits(TextbookAlgo algo, int n);

/// Oracle subcircuit only, all CX between line neighbours.
///  BV: ancilla ^= s.x, one long-range CX per set bit.
///  DJ: (-1)^{s.x} as RZ(pi) on the set bits.
///  GS: (-1)^{[x == s]} as a fixed phase-gadget skeleton whose RZ angles are
///      the Walsh coefficients of the marked-state indicator.
/// Throws Error(Format) when param length != n or n < 1.
Circuit textbook_oracle(TextbookAlgo algo, int n, std::string_view param);

/// Full textbook circuit with Hadamards lowered to RZ SX RZ and final
/// measurements on the data qubits.
Circuit gen_textbook(TextbookAlgo algo, int n, std::string_view param);

/// Appends ancilla ^= control over the line path control..target.
void append_long_range_cx(Circuit& circuit, int control, int target);

/// Appends H on q as RZ(pi/2) SX RZ(pi/2).
void append_hadamard(Circuit& circuit, int q);

enum class AnsatzKind { Linear, Reverse, Brick };

const char* to_string(AnsatzKind kind);

/// Hardware-efficient ansatz on a line: `layers` rounds of RZ-SX-RZ on every
/// qubit followed by a CX entangling pattern. Angles are seeded; only
/// rotation angles depend on the seed.
Circuit gen_ansatz(AnsatzKind kind, int n, int layers, std::uint64_t angle_seed);

} // namespace qsca
