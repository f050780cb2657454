#include "qsca/circuit.hpp"

#include "qsca/error.hpp"
#include "qsca/rng.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace qsca {

std::uint64_t layout_count(int n_logical, int n_physical) {
  if (n_logical < 0 || n_logical > n_physical) {
    return 0;
  }
  std::uint64_t total = 1;
  for (int i = 0; i < n_logical; ++i) {
    const auto factor = static_cast<std::uint64_t>(n_physical - i);
    if (total > UINT64_MAX / factor) {
      return UINT64_MAX;
    }
    total *= factor;
  }
  return total;
}

namespace {

void check_layout(const Layout& layout, int n_logical, const Device& device) {
  if (static_cast<int>(layout.size()) != n_logical) {
    throw Error(ErrorKind::Layout, "layout maps " + std::to_string(layout.size()) +
                                       " qubits, circuit has " +
                                       std::to_string(n_logical));
  }
  std::set<int> image;
  for (int p : layout) {
    if (p < 0 || p >= device.num_qubits) {
      throw Error(ErrorKind::Layout, "layout target " + std::to_string(p) +
                                         " is not a device qubit");
    }
    if (!image.insert(p).second) {
      throw Error(ErrorKind::Layout,
                  "layout is not injective (physical qubit " + std::to_string(p) + ")");
    }
  }
}

// Calls visit(layout) for every injective map in lexicographic order until it
// returns false.
template <typename Visit>
void for_each_injection(int n, int k, Visit&& visit) {
  Layout current(static_cast<std::size_t>(n));
  std::vector<bool> used(static_cast<std::size_t>(k), false);
  bool go = true;
  const auto rec = [&](auto&& self, int depth) -> void {
    if (!go) {
      return;
    }
    if (depth == n) {
      go = visit(current);
      return;
    }
    for (int p = 0; p < k && go; ++p) {
      if (used[static_cast<std::size_t>(p)]) {
        continue;
      }
      used[static_cast<std::size_t>(p)] = true;
      current[static_cast<std::size_t>(depth)] = p;
      self(self, depth + 1);
      used[static_cast<std::size_t>(p)] = false;
    }
  };
  rec(rec, 0);
}

constexpr std::uint64_t kEnumerateCap = 1u << 20;

} // namespace

Circuit apply_layout(const Circuit& circuit, const Layout& layout, const Device& device) {
  check_layout(layout, circuit.num_qubits, device);
  Circuit out;
  out.num_qubits = device.num_qubits;
  out.name = circuit.name;
  out.layout = layout;
  out.ops.reserve(circuit.ops.size());
  for (const auto& op : circuit.ops) {
    GateApp mapped = op;
    for (auto& q : mapped.qubits) {
      if (q < 0 || q >= circuit.num_qubits) {
        throw Error(ErrorKind::Layout, "op references unmapped qubit " + std::to_string(q));
      }
      q = layout[static_cast<std::size_t>(q)];
    }
    if (mapped.gate == Gate::CX && !device.edge_index(mapped.qubits[0], mapped.qubits[1])) {
      throw Error(ErrorKind::Connectivity,
                  "cx q" + std::to_string(mapped.qubits[0]) + " q" +
                      std::to_string(mapped.qubits[1]) + " is not a coupling of device '" +
                      device.name + "' (routing is not performed)");
    }
    out.ops.push_back(std::move(mapped));
  }
  return out;
}

bool is_connectivity_legal(const Circuit& circuit, const Device& device) {
  if (circuit.num_qubits > device.num_qubits) {
    return false;
  }
  for (const auto& op : circuit.ops) {
    if (op.gate == Gate::CX && !device.edge_index(op.qubits[0], op.qubits[1])) {
      return false;
    }
  }
  return true;
}

std::vector<Layout> enumerate_layouts(int n_logical, const Device& device,
                                      std::size_t limit, std::uint64_t seed) {
  if (n_logical > device.num_qubits) {
    throw Error(ErrorKind::Capacity, std::to_string(n_logical) +
                                         " logical qubits do not fit on " +
                                         std::to_string(device.num_qubits));
  }
  if (n_logical < 0 || limit == 0) {
    throw Error(ErrorKind::Layout, "enumerate_layouts needs n_logical >= 0, limit >= 1");
  }
  const std::uint64_t total = layout_count(n_logical, device.num_qubits);
  if (total <= kEnumerateCap) {
    std::vector<Layout> all;
    all.reserve(static_cast<std::size_t>(total));
    for_each_injection(n_logical, device.num_qubits, [&](const Layout& l) {
      all.push_back(l);
      return true;
    });
    if (limit >= all.size()) {
      return all;
    }
    // Partial Fisher-Yates: the first `limit` slots are a uniform sample.
    Rng rng(seed);
    for (std::size_t i = 0; i < limit; ++i) {
      const auto j = static_cast<std::size_t>(
          rng.uniform_int(static_cast<std::int64_t>(i), static_cast<std::int64_t>(all.size() - 1)));
      std::swap(all[i], all[j]);
    }
    all.resize(limit);
    return all;
  }

  // Too many to list: draw random injections, rejecting repeats.
  Rng rng(seed);
  std::set<Layout> seen;
  std::vector<Layout> out;
  std::vector<int> pool(static_cast<std::size_t>(device.num_qubits));
  while (out.size() < limit) {
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < n_logical; ++i) {
      const auto j = static_cast<std::size_t>(rng.uniform_int(i, device.num_qubits - 1));
      std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    }
    Layout l(pool.begin(), pool.begin() + n_logical);
    if (seen.insert(l).second) {
      out.push_back(std::move(l));
    }
  }
  return out;
}

std::vector<Layout> legal_layouts(const Circuit& circuit, const Device& device,
                                  std::size_t limit, std::uint64_t seed) {
  const int n = circuit.num_qubits;
  if (n > device.num_qubits) {
    throw Error(ErrorKind::Capacity, "circuit does not fit on the device");
  }
  std::set<std::pair<int, int>> pairs;
  for (const auto& op : circuit.ops) {
    if (op.gate == Gate::CX) {
      pairs.insert({op.qubits[0], op.qubits[1]});
    }
  }
  std::vector<Layout> legal;
  const auto ok = [&](const Layout& l) {
    return std::all_of(pairs.begin(), pairs.end(), [&](const auto& pr) {
      return device
          .edge_index(l[static_cast<std::size_t>(pr.first)], l[static_cast<std::size_t>(pr.second)])
          .has_value();
    });
  };
  const std::uint64_t total = layout_count(n, device.num_qubits);
  if (total > kEnumerateCap) {
    throw Error(ErrorKind::Capacity, "too many layouts to filter exhaustively");
  }
  for_each_injection(n, device.num_qubits, [&](const Layout& l) {
    if (ok(l)) {
      legal.push_back(l);
    }
    return true;
  });
  Rng rng(seed);
  for (std::size_t i = 0; i + 1 < legal.size(); ++i) {
    const auto j = static_cast<std::size_t>(
        rng.uniform_int(static_cast<std::int64_t>(i), static_cast<std::int64_t>(legal.size() - 1)));
    std::swap(legal[i], legal[j]);
  }
  if (legal.size() > limit) {
    legal.resize(limit);
  }
  return legal;
}

} // namespace qsca
