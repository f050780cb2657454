#include "qsca/defense.hpp"

#include "qsca/error.hpp"
#include "qsca/rng.hpp"

#include <numbers>

namespace qsca {

std::vector<GateApp> u3_sequence(double theta, double phi, double lambda, int qubit) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  return {GateApp::rz(lambda - half_pi, qubit), GateApp::sx(qubit),
          GateApp::rz(std::numbers::pi - theta, qubit), GateApp::sx(qubit),
          GateApp::rz(phi - half_pi, qubit)};
}

namespace {

Circuit one_qubit(std::vector<GateApp> ops) {
  Circuit c;
  c.num_qubits = 1;
  c.ops = std::move(ops);
  return c;
}

std::vector<SubstitutionRule> build_rules() {
  constexpr double half_pi = std::numbers::pi / 2.0;
  // u3_sequence(pi/2, 0, 0) is SX up to phase. Without its RZs it collapses
  // to SX.SX = X, so it is not equivalent to SX once stripped.
  SubstitutionRule sx{Gate::SX, u3_sequence(half_pi, 0.0, 0.0)};
  // X as SX followed by another SX. The stripped form is three SX pulses,
  // which is SX^3, not X. A two-SX rewrite would strip to SX.SX = X.
  SubstitutionRule x{Gate::X, u3_sequence(half_pi, 0.0, 0.0)};
  x.replacement.push_back(GateApp::sx(0));
  return {std::move(x), std::move(sx)};
}

} // namespace

void certify_rule(const SubstitutionRule& rule) {
  const std::string name = to_string(rule.matches);
  bool has_rz = false;
  for (const auto& op : rule.replacement) {
    if (op.qubits != std::vector<int>{0} || (op.gate != Gate::RZ && op.gate != Gate::SX &&
                                             op.gate != Gate::X)) {
      throw Error(ErrorKind::Format, "rule for " + name + " must use 1-qubit basis gates on q0");
    }
    has_rz = has_rz || op.gate == Gate::RZ;
  }
  if (!has_rz) {
    throw Error(ErrorKind::Format, "rule for " + name + " contains no rz");
  }
  const auto target = one_qubit({GateApp{rule.matches, {0}, 0.0}});
  const auto replaced = one_qubit(rule.replacement);
  if (!equivalent_up_to_phase(target, replaced)) {
    throw Error(ErrorKind::Format, "rule for " + name + " is not equivalent to the gate");
  }
  if (equivalent_up_to_phase(target, strip_rz(replaced))) {
    throw Error(ErrorKind::Format,
                "rule for " + name + " still implements the gate without its rz");
  }
}

const std::vector<SubstitutionRule>& substitution_rules() {
  static const std::vector<SubstitutionRule> rules = [] {
    auto r = build_rules();
    for (const auto& rule : r) {
      certify_rule(rule);
    }
    return r;
  }();
  return rules;
}

SubstitutionResult substitute_with_sites(const Circuit& circuit, double prob,
                                         std::uint64_t seed) {
  if (!(prob >= 0.0 && prob <= 1.0)) {
    throw Error(ErrorKind::Format, "substitution probability must be in [0, 1]");
  }
  const auto& rules = substitution_rules();
  Rng rng(seed);
  SubstitutionResult out;
  out.circuit.num_qubits = circuit.num_qubits;
  out.circuit.name = circuit.name;
  out.circuit.layout = circuit.layout;
  for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
    const auto& op = circuit.ops[i];
    const SubstitutionRule* rule = nullptr;
    for (const auto& r : rules) {
      if (r.matches == op.gate) {
        rule = &r;
      }
    }
    // One draw per eligible gate keeps the stream aligned across prob values.
    if (rule == nullptr || !rng.bernoulli(prob)) {
      out.circuit.ops.push_back(op);
      continue;
    }
    SubstitutionSite site{i, op, rule->replacement};
    for (auto& g : site.replacement) {
      g.qubits = op.qubits;
    }
    out.circuit.ops.insert(out.circuit.ops.end(), site.replacement.begin(),
                           site.replacement.end());
    out.sites.push_back(std::move(site));
  }
  return out;
}

Circuit substitute(const Circuit& circuit, double prob, std::uint64_t seed) {
  return substitute_with_sites(circuit, prob, seed).circuit;
}

bool equivalent_up_to_phase(const Circuit& a, const Circuit& b, int max_qubits) {
  if (a.num_qubits != b.num_qubits) {
    return false;
  }
  return equal_up_to_phase(unitary_of(a, max_qubits), unitary_of(b, max_qubits), 1e-8);
}

} // namespace qsca
