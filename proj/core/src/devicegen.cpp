#include "qsca/devicegen.hpp"

#include "qsca/error.hpp"
#include "qsca/rng.hpp"

#include <algorithm>
#include <numbers>
#include <set>

namespace qsca {

namespace {

constexpr int kGranularity = 16;
constexpr double kDt = 2.2222e-10;

constexpr int kOneQubitDuration = 160;
constexpr double kDragSigma = 40.0;
constexpr double kCxSigma = 64.0;
constexpr int kCxRiseFall = 256; // duration - width
// CX durations are drawn as multiples of 32 so the echo offset d/2 - 80 stays
// on the 16-sample grid.
constexpr int kCxStep = 32;
constexpr int kCxMin = 1408;
constexpr int kCxMax = 2944;

std::vector<Edge> directed(const std::vector<std::pair<int, int>>& pairs) {
  std::vector<Edge> edges;
  for (const auto& [a, b] : pairs) {
    edges.push_back({a, b});
    edges.push_back({b, a});
  }
  return edges;
}

} // namespace

const char* to_string(TopologyShape shape) {
  switch (shape) {
  case TopologyShape::Line:
    return "line";
  case TopologyShape::TShape:
    return "t";
  case TopologyShape::HShape:
    return "h";
  }
  return "?";
}

std::optional<TopologyShape> parse_shape(std::string_view name) {
  if (name == "line") {
    return TopologyShape::Line;
  }
  if (name == "t" || name == "tshape") {
    return TopologyShape::TShape;
  }
  if (name == "h" || name == "hshape") {
    return TopologyShape::HShape;
  }
  return std::nullopt;
}

std::vector<std::pair<int, int>> coupling_pairs(TopologyShape shape, int n) {
  switch (shape) {
  case TopologyShape::Line: {
    if (n < 1) {
      throw Error(ErrorKind::InvalidDevice, "a line device needs at least 1 qubit");
    }
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i + 1 < n; ++i) {
      out.emplace_back(i, i + 1);
    }
    return out;
  }
  case TopologyShape::TShape:
    if (n != 5) {
      throw Error(ErrorKind::InvalidDevice, "the t shape has exactly 5 qubits");
    }
    return {{0, 1}, {1, 2}, {1, 3}, {3, 4}};
  case TopologyShape::HShape:
    if (n != 7) {
      throw Error(ErrorKind::InvalidDevice, "the h shape has exactly 7 qubits");
    }
    return {{0, 1}, {1, 2}, {1, 3}, {3, 5}, {4, 5}, {5, 6}};
  }
  throw Error(ErrorKind::InvalidDevice, "unknown topology");
}

Device line_device(int n) {
  Device d;
  d.name = "line" + std::to_string(n);
  d.num_qubits = n;
  d.edges = directed(coupling_pairs(TopologyShape::Line, n));
  d.granularity = kGranularity;
  d.dt = kDt;
  return d;
}

GeneratedDevice gen_device(TopologyShape shape, int n, std::uint64_t seed) {
  GeneratedDevice out;
  auto& dev = out.device;
  dev.name = std::string("synthetic-") + to_string(shape) + std::to_string(n) + "-s" +
             std::to_string(seed);
  dev.num_qubits = n;
  dev.edges = directed(coupling_pairs(shape, n));
  dev.granularity = kGranularity;
  dev.dt = kDt;
  dev.validate();

  Rng rng(seed);
  std::vector<PulseShape> x_pulses;
  for (int q = 0; q < n; ++q) {
    const double amp = rng.uniform_real(0.1, 0.3);
    const double beta = rng.uniform_real(-2.0, 2.0);
    const auto x = PulseShape::drag(kOneQubitDuration, amp, kDragSigma, beta);
    const auto sx = PulseShape::drag(kOneQubitDuration, amp / 2.0, kDragSigma, beta);
    x_pulses.push_back(x);
    out.library.set({Gate::X, {q}, {{Channel::drive(q), 0, x}}, 0});
    out.library.set({Gate::SX, {q}, {{Channel::drive(q), 0, sx}}, 0});
    out.library.set({Gate::I, {q}, {}, kOneQubitDuration});
    out.library.set({Gate::RZ, {q}, {}, 0});
  }
  for (int e = 0; e < static_cast<int>(dev.edges.size()); ++e) {
    const auto [c, t] = dev.edges[static_cast<std::size_t>(e)];
    const int d = kCxStep * static_cast<int>(rng.uniform_int(kCxMin / kCxStep, kCxMax / kCxStep));
    const double control_amp = rng.uniform_real(0.1, 0.5);
    const double target_amp = rng.uniform_real(0.02, 0.1);
    LibraryEntry cx{Gate::CX, {c, t}, {}, 0};
    cx.pulses.push_back({Channel::control(e), 0,
                         PulseShape::gaussian_square(d, control_amp, kCxSigma, d - kCxRiseFall)});
    cx.pulses.push_back({Channel::drive(t), 0,
                         PulseShape::gaussian_square(d, target_amp, kCxSigma, d - kCxRiseFall)});
    cx.pulses.push_back({Channel::drive(c), d / 2 - kOneQubitDuration / 2,
                         x_pulses[static_cast<std::size_t>(c)]});
    out.library.set(std::move(cx));
  }
  return out;
}

Circuit gen_random_circuit(const Device& device, int n_gates, std::uint64_t seed,
                           double rz_fraction, int active_qubits) {
  if (n_gates < 1) {
    throw Error(ErrorKind::Format, "n_gates must be at least 1");
  }
  if (!(rz_fraction >= 0.0 && rz_fraction <= 1.0)) {
    throw Error(ErrorKind::Format, "rz_fraction must be in [0, 1]");
  }
  if (active_qubits > device.num_qubits) {
    throw Error(ErrorKind::Capacity, "more active qubits than the device has");
  }
  Rng rng(seed);

  std::vector<int> active;
  if (active_qubits <= 0) {
    for (int q = 0; q < device.num_qubits; ++q) {
      active.push_back(q);
    }
  } else {
    // Grow a connected set from a random seed qubit.
    std::set<int> chosen{static_cast<int>(rng.uniform_int(0, device.num_qubits - 1))};
    while (static_cast<int>(chosen.size()) < active_qubits) {
      std::vector<int> frontier;
      for (const auto& e : device.edges) {
        if (chosen.contains(e.control) && !chosen.contains(e.target) &&
            std::find(frontier.begin(), frontier.end(), e.target) == frontier.end()) {
          frontier.push_back(e.target);
        }
      }
      if (frontier.empty()) {
        throw Error(ErrorKind::Connectivity, "device has no connected set of " +
                                                 std::to_string(active_qubits) + " qubits");
      }
      std::sort(frontier.begin(), frontier.end());
      chosen.insert(frontier[static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(frontier.size()) - 1))]);
    }
    active.assign(chosen.begin(), chosen.end());
  }
  std::vector<Edge> edges;
  for (const auto& e : device.edges) {
    if (std::binary_search(active.begin(), active.end(), e.control) &&
        std::binary_search(active.begin(), active.end(), e.target)) {
      edges.push_back(e);
    }
  }

  Circuit c;
  c.num_qubits = device.num_qubits;
  const auto pick_qubit = [&] {
    return active[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(active.size()) - 1))];
  };
  for (int i = 0; i < n_gates; ++i) {
    if (rz_fraction > 0.0 && rng.bernoulli(rz_fraction)) {
      const double angle = rng.uniform_real(-std::numbers::pi, std::numbers::pi);
      c.add(GateApp::rz(angle, pick_qubit()));
      continue;
    }
    const int kinds = edges.empty() ? 2 : 3;
    switch (rng.uniform_int(0, kinds - 1)) {
    case 0:
      c.add(GateApp::x(pick_qubit()));
      break;
    case 1:
      c.add(GateApp::sx(pick_qubit()));
      break;
    default: {
      const auto& e = edges[static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(edges.size()) - 1))];
      c.add(GateApp::cx(e.control, e.target));
      break;
    }
    }
  }
  return c;
}

} // namespace qsca
