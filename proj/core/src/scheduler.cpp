#include "qsca/scheduler.hpp"

#include "qsca/error.hpp"

#include <algorithm>

namespace qsca {

Schedule schedule(const Circuit& circuit, const BasisPulseLibrary& lib,
                  const Device& device) {
  circuit.validate();
  if (circuit.num_qubits > device.num_qubits) {
    throw Error(ErrorKind::Capacity, "circuit has " + std::to_string(circuit.num_qubits) +
                                         " qubits, device '" + device.name + "' has " +
                                         std::to_string(device.num_qubits));
  }
  const int g = device.granularity;
  Schedule out;
  out.device = device.name;
  std::vector<int> ready(static_cast<std::size_t>(circuit.num_qubits), 0);
  const auto at = [&](int q) -> int& { return ready[static_cast<std::size_t>(q)]; };

  for (std::size_t idx = 0; idx < circuit.ops.size(); ++idx) {
    const auto& op = circuit.ops[idx];
    if (op.gate == Gate::Barrier) {
      std::vector<int> qs = op.qubits;
      if (qs.empty()) {
        for (int q = 0; q < circuit.num_qubits; ++q) {
          qs.push_back(q);
        }
      }
      int t = 0;
      for (int q : qs) {
        t = std::max(t, at(q));
      }
      for (int q : qs) {
        at(q) = t;
      }
      continue;
    }

    int start = 0;
    for (int q : op.qubits) {
      start = std::max(start, at(q));
    }
    start = align_up(start, g);

    int duration = 0;
    if (op.gate != Gate::Measure) {
      const LibraryEntry entry = lookup_basis_pulses(lib, op.gate, op.qubits);
      duration = entry.span();
      for (const auto& p : entry.pulses) {
        out.items.push_back({p.channel, start + p.offset, p.shape, static_cast<int>(idx)});
      }
    }
    if (duration > 0) {
      for (int q : op.qubits) {
        at(q) = start + duration;
      }
    }
    out.gates.push_back({op.gate, op.qubits, start, duration});
  }
  return out;
}

int schedule_span(const Schedule& schedule) {
  int span = 0;
  for (const auto& item : schedule.items) {
    span = std::max(span, item.end());
  }
  return span;
}

} // namespace qsca
