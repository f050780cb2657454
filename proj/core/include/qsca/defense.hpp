#pragma once

#include "qsca/circuit.hpp"
#include "qsca/unitary.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace qsca {

/// [RZ(lambda - pi/2), SX, RZ(pi - theta), SX, RZ(phi - pi/2)] on `qubit`, in
/// application order. Equals the standard U3(theta, phi - pi/2, lambda + pi/2)
/// up to global phase.
std::vector<GateApp> u3_sequence(double theta, double phi, double lambda, int qubit = 0);

/// Virtual-RZ rewrite of one single-qubit gate. The replacement is written
/// on qubit 0 and relabelled when applied.
struct SubstitutionRule {
  Gate matches;
  std::vector<GateApp> replacement;
};

/// The certified X and SX rules. Every rule is checked on first use: the
/// replacement must contain an RZ, match the gate up to global phase, and
/// stop matching once its RZs are removed.
const std::vector<SubstitutionRule>& substitution_rules();

/// Throws Error(Format) naming the first rule that fails certification.
void certify_rule(const SubstitutionRule& rule);

struct SubstitutionSite {
  std::size_t original_index = 0; // op index in the input circuit
  GateApp original;
  std::vector<GateApp> replacement; // relabelled onto the original qubit
};

struct SubstitutionResult {
  Circuit circuit;
  std::vector<SubstitutionSite> sites;
};

/// Replaces each X/SX independently with probability prob (seeded).
SubstitutionResult substitute_with_sites(const Circuit& circuit, double prob,
                                         std::uint64_t seed);
Circuit substitute(const Circuit& circuit, double prob, std::uint64_t seed);

/// unitary_of(a) == e^{i gamma} unitary_of(b) to 1e-8.
bool equivalent_up_to_phase(const Circuit& a, const Circuit& b, int max_qubits = 10);

} // namespace qsca
