#include "qsca/library.hpp"

#include "qsca/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qsca {

int LibraryEntry::span() const {
  int end = delay;
  for (const auto& p : pulses) {
    end = std::max(end, p.offset + p.shape.duration);
  }
  return end;
}

void BasisPulseLibrary::set(LibraryEntry entry) {
  GateKey key{entry.gate, entry.qubits};
  entries_.insert_or_assign(std::move(key), std::move(entry));
}

void BasisPulseLibrary::erase(Gate gate, std::span<const int> qubits) {
  entries_.erase(GateKey{gate, std::vector<int>(qubits.begin(), qubits.end())});
}

const LibraryEntry* BasisPulseLibrary::find(Gate gate,
                                            std::span<const int> qubits) const {
  const auto it =
      entries_.find(GateKey{gate, std::vector<int>(qubits.begin(), qubits.end())});
  return it == entries_.end() ? nullptr : &it->second;
}

namespace {

std::string describe(Gate gate, std::span<const int> qubits) {
  std::ostringstream os;
  os << to_string(gate) << "(";
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    os << (i ? "," : "") << qubits[i];
  }
  os << ")";
  return os.str();
}

} // namespace

LibraryEntry lookup_basis_pulses(const BasisPulseLibrary& lib, Gate gate,
                                 std::span<const int> qubits) {
  if (const auto* entry = lib.find(gate, qubits)) {
    return *entry;
  }
  const std::vector<int> qs(qubits.begin(), qubits.end());
  switch (gate) {
  case Gate::RZ:
  case Gate::Measure:
    return LibraryEntry{gate, qs, {}, 0};
  case Gate::I:
    if (const auto* x = lib.find(Gate::X, qubits)) {
      return LibraryEntry{gate, qs, {}, x->span()};
    }
    break;
  default:
    break;
  }
  throw Error(ErrorKind::UnsupportedGate,
              "no basis pulses for " + describe(gate, qubits));
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
  case ViolationKind::Coverage: return "coverage";
  case ViolationKind::Channel: return "channel";
  case ViolationKind::Granularity: return "granularity";
  case ViolationKind::Overlap: return "overlap";
  case ViolationKind::Amplitude: return "amplitude";
  case ViolationKind::Shape: return "shape";
  }
  return "?";
}

namespace {

// First pulse of an entry on the given drive channel.
const LibraryPulse* drive_pulse(const LibraryEntry& entry, int qubit) {
  for (const auto& p : entry.pulses) {
    if (p.channel == Channel::drive(qubit)) {
      return &p;
    }
  }
  return nullptr;
}

bool channel_allowed(const LibraryEntry& entry, Channel ch, const Device& device) {
  if (entry.gate == Gate::CX) {
    if (entry.qubits.size() != 2) {
      return false;
    }
    const auto edge = device.edge_index(entry.qubits[0], entry.qubits[1]);
    if (ch.kind == ChannelKind::Control) {
      return edge && ch.index == *edge;
    }
    return ch.index == entry.qubits[0] || ch.index == entry.qubits[1];
  }
  return ch.kind == ChannelKind::Drive && entry.qubits.size() == 1 &&
         ch.index == entry.qubits[0];
}

} // namespace

std::vector<Violation> validate_library(const BasisPulseLibrary& lib,
                                        const Device& device) {
  std::vector<Violation> out;
  const auto add = [&](ViolationKind kind, Gate gate, std::vector<int> qubits,
                       std::string message) {
    out.push_back(Violation{kind, gate, std::move(qubits), std::move(message)});
  };

  for (int q = 0; q < device.num_qubits; ++q) {
    for (Gate g : {Gate::X, Gate::SX}) {
      const int qs[] = {q};
      if (!lib.find(g, qs)) {
        add(ViolationKind::Coverage, g, {q}, "missing " + describe(g, qs));
      }
    }
  }
  for (const auto& e : device.edges) {
    const int qs[] = {e.control, e.target};
    if (!lib.find(Gate::CX, qs)) {
      add(ViolationKind::Coverage, Gate::CX, {e.control, e.target},
          "missing " + describe(Gate::CX, qs));
    }
  }

  const int gran = std::max(device.granularity, 1);
  for (const auto& [key, entry] : lib.entries()) {
    const auto name = describe(entry.gate, entry.qubits);
    for (int q : entry.qubits) {
      if (q < 0 || q >= device.num_qubits) {
        add(ViolationKind::Channel, entry.gate, entry.qubits,
            name + " references qubit " + std::to_string(q) + " outside the device");
      }
    }
    if (entry.delay % gran != 0) {
      add(ViolationKind::Granularity, entry.gate, entry.qubits,
          name + " delay " + std::to_string(entry.delay) + " is not a multiple of " +
              std::to_string(gran));
    }
    for (const auto& p : entry.pulses) {
      const auto ch = to_string(p.channel);
      if (!device.has_channel(p.channel) || !channel_allowed(entry, p.channel, device)) {
        add(ViolationKind::Channel, entry.gate, entry.qubits,
            name + " places a pulse on " + ch);
      }
      if (p.shape.duration <= 0 || p.shape.duration % gran != 0) {
        add(ViolationKind::Granularity, entry.gate, entry.qubits,
            name + " pulse on " + ch + " has duration " +
                std::to_string(p.shape.duration) + ", not a positive multiple of " +
                std::to_string(gran));
      }
      if (p.offset < 0 || p.offset % gran != 0) {
        add(ViolationKind::Granularity, entry.gate, entry.qubits,
            name + " pulse on " + ch + " starts at offset " + std::to_string(p.offset));
      }
      if (std::abs(p.shape.amp) > 1.0) {
        add(ViolationKind::Amplitude, entry.gate, entry.qubits,
            name + " pulse on " + ch + " has |amp| > 1");
      }
      const bool bad_gs = p.shape.kind == PulseKind::GaussianSquare &&
                          (p.shape.width < 0 || p.shape.width >= p.shape.duration);
      if (!(p.shape.sigma > 0.0) || bad_gs) {
        add(ViolationKind::Shape, entry.gate, entry.qubits,
            name + " pulse on " + ch + " has invalid shape parameters");
      }
    }
    // Same-channel pulses within one entry must be disjoint in time.
    for (std::size_t i = 0; i < entry.pulses.size(); ++i) {
      for (std::size_t j = i + 1; j < entry.pulses.size(); ++j) {
        const auto& a = entry.pulses[i];
        const auto& b = entry.pulses[j];
        if (a.channel == b.channel && a.offset < b.offset + b.shape.duration &&
            b.offset < a.offset + a.shape.duration) {
          add(ViolationKind::Overlap, entry.gate, entry.qubits,
              name + " has overlapping pulses on " + to_string(a.channel));
        }
      }
    }
  }

  for (int q = 0; q < device.num_qubits; ++q) {
    const int qs[] = {q};
    const auto* x = lib.find(Gate::X, qs);
    const auto* sx = lib.find(Gate::SX, qs);
    if (!x || !sx) {
      continue;
    }
    const auto* px = drive_pulse(*x, q);
    const auto* psx = drive_pulse(*sx, q);
    if (!px || !psx) {
      continue;
    }
    const double ax = std::abs(px->shape.amp);
    const double asx = std::abs(psx->shape.amp);
    if (std::abs(asx - 0.5 * ax) > 1e-12 * std::max(ax, 1.0)) {
      add(ViolationKind::Amplitude, Gate::SX, {q},
          "sx(" + std::to_string(q) + ") amplitude is not half of x(" +
              std::to_string(q) + ")");
    }
  }
  return out;
}

} // namespace qsca
