#include "qsca/device.hpp"

#include "qsca/error.hpp"
#include "qsca/gate.hpp"
#include "qsca/rng.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

namespace qsca {

const char* to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::ShapeMismatch: return "shape-mismatch";
  case ErrorKind::InvalidShape: return "invalid-shape";
  case ErrorKind::InvalidDevice: return "invalid-device";
  case ErrorKind::UnsupportedGate: return "unsupported-gate";
  case ErrorKind::Parse: return "parse";
  case ErrorKind::Layout: return "layout";
  case ErrorKind::Connectivity: return "connectivity";
  case ErrorKind::Capacity: return "capacity";
  case ErrorKind::Size: return "size";
  case ErrorKind::Channel: return "channel";
  case ErrorKind::DegenerateTrace: return "degenerate-trace";
  case ErrorKind::DegenerateNorm: return "degenerate-norm";
  case ErrorKind::Arity: return "arity";
  case ErrorKind::Ambiguity: return "ambiguity";
  case ErrorKind::IncompleteReconstruction: return "incomplete-reconstruction";
  case ErrorKind::Io: return "io";
  case ErrorKind::Format: return "format";
  }
  return "unknown";
}

// ---- Rng ------------------------------------------------------------------

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) {
    throw Error(ErrorKind::Format, "uniform_int: empty range");
  }
  const auto range = static_cast<std::uint64_t>(hi - lo);
  if (range == UINT64_MAX) {
    return static_cast<std::int64_t>(next());
  }
  const std::uint64_t span = range + 1;
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span);
  std::uint64_t v = next();
  while (v >= limit) {
    v = next();
  }
  return lo + static_cast<std::int64_t>(v % span);
}

double Rng::uniform01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform_real(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform01();
  while (u1 <= 0.0) {
    u1 = uniform01();
  }
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

// ---- Gate names -------------------------------------------------------------

const char* to_string(Gate gate) {
  switch (gate) {
  case Gate::I: return "i";
  case Gate::RZ: return "rz";
  case Gate::SX: return "sx";
  case Gate::X: return "x";
  case Gate::CX: return "cx";
  case Gate::Barrier: return "barrier";
  case Gate::Measure: return "measure";
  }
  return "?";
}

std::optional<Gate> parse_gate(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (Gate g : {Gate::I, Gate::RZ, Gate::SX, Gate::X, Gate::CX, Gate::Barrier,
                 Gate::Measure}) {
    if (lower == to_string(g)) {
      return g;
    }
  }
  if (lower == "id") {
    return Gate::I;
  }
  return std::nullopt;
}

// ---- Channels and devices -----------------------------------------------------

const char* to_string(ChannelKind kind) {
  return kind == ChannelKind::Drive ? "drive" : "control";
}

std::string to_string(Channel channel) {
  return std::string(to_string(channel.kind)) + "/" + std::to_string(channel.index);
}

Channel parse_channel(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    throw Error(ErrorKind::Format, "bad channel name '" + std::string(text) + "'");
  }
  const auto kind = text.substr(0, slash);
  const auto idx = text.substr(slash + 1);
  int index = -1;
  const auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), index);
  if (ec != std::errc{} || ptr != idx.data() + idx.size() || index < 0) {
    throw Error(ErrorKind::Format, "bad channel index '" + std::string(text) + "'");
  }
  if (kind == "drive") {
    return Channel::drive(index);
  }
  if (kind == "control") {
    return Channel::control(index);
  }
  throw Error(ErrorKind::Format, "bad channel kind '" + std::string(text) + "'");
}

std::optional<int> Device::edge_index(int control, int target) const {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].control == control && edges[i].target == target) {
      return static_cast<int>(i);
    }
  }
  return std::nullopt;
}

bool Device::has_channel(Channel channel) const {
  if (channel.index < 0) {
    return false;
  }
  if (channel.kind == ChannelKind::Drive) {
    return channel.index < num_qubits;
  }
  return channel.index < static_cast<int>(edges.size());
}

std::vector<Channel> Device::channels() const {
  std::vector<Channel> out;
  out.reserve(static_cast<std::size_t>(num_channels()));
  for (int q = 0; q < num_qubits; ++q) {
    out.push_back(Channel::drive(q));
  }
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    out.push_back(Channel::control(e));
  }
  return out;
}

void Device::validate() const {
  if (num_qubits <= 0) {
    throw Error(ErrorKind::InvalidDevice, "device needs at least one qubit");
  }
  if (granularity < 1) {
    throw Error(ErrorKind::InvalidDevice, "granularity must be >= 1");
  }
  if (!(dt > 0.0)) {
    throw Error(ErrorKind::InvalidDevice, "dt must be positive");
  }
  std::set<Edge> seen;
  for (const auto& e : edges) {
    if (e.control < 0 || e.control >= num_qubits || e.target < 0 ||
        e.target >= num_qubits) {
      throw Error(ErrorKind::InvalidDevice,
                  "edge (" + std::to_string(e.control) + "," +
                      std::to_string(e.target) + ") references a missing qubit");
    }
    if (e.control == e.target) {
      throw Error(ErrorKind::InvalidDevice,
                  "self edge on qubit " + std::to_string(e.control));
    }
    if (!seen.insert(e).second) {
      throw Error(ErrorKind::InvalidDevice,
                  "duplicate edge (" + std::to_string(e.control) + "," +
                      std::to_string(e.target) + ")");
    }
  }
}

} // namespace qsca
