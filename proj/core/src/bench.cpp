#include "qsca/bench.hpp"

#include "qsca/error.hpp"
#include "qsca/io.hpp"
#include "qsca/parallel.hpp"
#include "qsca/rng.hpp"
#include "qsca/textbook.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <limits>

namespace qsca {

namespace {

Device logical_device(int n) {
  if (n >= 2) {
    return line_device(n);
  }
  Device d;
  d.name = "single";
  d.num_qubits = 1;
  d.granularity = 16;
  d.dt = 2.2222e-10;
  return d;
}

// Turns the first X into SX (or the first SX into X). Pulse durations are
// equal, so the schedule span is unchanged while the power differs.
Circuit swap_first_single(Circuit c) {
  for (auto& op : c.ops) {
    if (op.gate == Gate::X || op.gate == Gate::SX) {
      op.gate = op.gate == Gate::X ? Gate::SX : Gate::X;
      return c;
    }
  }
  c.add(GateApp::sx(0));
  return c;
}

std::string index_name(const char* prefix, int i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%02d", prefix, i);
  return buf;
}

// First simple path of k qubits in DFS order, used as a line layout.
std::optional<Layout> find_line_path(const Device& device, int k) {
  Layout path;
  std::vector<bool> used(static_cast<std::size_t>(device.num_qubits), false);
  const std::function<bool(int)> grow = [&](int q) {
    path.push_back(q);
    used[static_cast<std::size_t>(q)] = true;
    if (static_cast<int>(path.size()) == k) {
      return true;
    }
    for (const auto& e : device.edges) {
      if (e.control == q && !used[static_cast<std::size_t>(e.target)] && grow(e.target)) {
        return true;
      }
    }
    path.pop_back();
    used[static_cast<std::size_t>(q)] = false;
    return false;
  };
  for (int q = 0; q < device.num_qubits; ++q) {
    if (grow(q)) {
      return path;
    }
  }
  return std::nullopt;
}

CandidateList build(const std::vector<std::pair<std::string, Circuit>>& physical,
                    const BasisPulseLibrary& lib, const Device& device) {
  std::vector<Candidate> out(physical.size());
  parallel_for(physical.size(), [&](std::size_t i) {
    out[i] = make_candidate(physical[i].first, physical[i].second, lib, device);
  });
  return CandidateList(std::move(out));
}

} // namespace

std::vector<Circuit> bench_corpus(int size, std::uint64_t seed) {
  if (size < 1) {
    throw Error(ErrorKind::Format, "corpus size must be at least 1");
  }
  Rng rng(seed);
  std::vector<Circuit> out;
  while (static_cast<int>(out.size()) < size) {
    const int i = static_cast<int>(out.size());
    if (i % 3 == 2) {
      Circuit twin = swap_first_single(out.back());
      twin.name = index_name("c", i);
      out.push_back(std::move(twin));
      continue;
    }
    const int n = static_cast<int>(rng.uniform_int(1, 3));
    const int gates = static_cast<int>(rng.uniform_int(3, 10));
    Circuit c = gen_random_circuit(logical_device(n), gates, rng.next(), 0.2);
    c.name = index_name("c", i);
    out.push_back(std::move(c));
  }
  return out;
}

CandidateList expanded_candidates(const std::vector<Circuit>& corpus, int layouts,
                                  const GeneratedDevice& dev, std::uint64_t layout_seed) {
  if (layouts < 1) {
    throw Error(ErrorKind::Format, "layout count must be at least 1");
  }
  std::vector<std::pair<std::string, Circuit>> physical;
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const auto& c = corpus[k];
    const auto ls = legal_layouts(c, dev.device, static_cast<std::size_t>(layouts),
                                  layout_seed + k);
    for (const auto& l : ls) {
      std::string id = c.name.empty() ? index_name("c", static_cast<int>(k)) : c.name;
      id += "@";
      for (std::size_t i = 0; i < l.size(); ++i) {
        id += (i ? "-" : "") + std::to_string(l[i]);
      }
      physical.emplace_back(std::move(id), apply_layout(c, l, dev.device));
    }
  }
  return build(physical, dev.library, dev.device);
}

BenchReport run_bench(const BenchConfig& config) {
  BenchReport report;
  const auto dev = gen_device(config.shape, config.qubits, config.device_seed);
  const auto corpus = bench_corpus(config.corpus_size, config.corpus_seed);

  for (int layouts : config.layout_counts) {
    const auto cl = expanded_candidates(corpus, layouts, dev, config.layout_seed);
    for (auto metric : config.metrics) {
      report.accuracy.push_back({layouts, metric, cl.size(), uc_accuracy(cl, metric)});
    }
  }

  const auto& device = dev.device;
  const auto on_path = [&](const Circuit& logical) -> std::optional<Circuit> {
    const auto path = find_line_path(device, logical.num_qubits);
    if (!path) {
      return std::nullopt;
    }
    return apply_layout(logical, *path, device);
  };
  const auto family_row = [&](const std::string& scenario, const std::string& name, int qubits,
                              const std::vector<Circuit>& logical) {
    std::vector<std::pair<std::string, Circuit>> physical;
    for (std::size_t i = 0; i < logical.size(); ++i) {
      auto p = on_path(logical[i]);
      if (!p) {
        return;
      }
      physical.emplace_back(index_name("m", static_cast<int>(i)), std::move(*p));
    }
    const auto set = build(physical, dev.library, device);
    report.distances.push_back({scenario, name, qubits, set.size(), distinguishability(set)});
  };

  // Oracle families.
  for (auto algo : {TextbookAlgo::BV, TextbookAlgo::DJ, TextbookAlgo::GS}) {
    for (int n = 1; n <= config.co_max_qubits; ++n) {
      std::vector<Circuit> fam;
      for (const auto& s : all_bitstrings(n)) {
        fam.push_back(gen_textbook(algo, n, s));
      }
      family_row("CO", to_string(algo), n, fam);
    }
  }

  // Ansatz families: entangling pattern varies, or only the angles vary.
  const int an = config.ansatz_qubits;
  family_row("CA", "ansatz-patterns", an,
             {gen_ansatz(AnsatzKind::Linear, an, 2, 0), gen_ansatz(AnsatzKind::Reverse, an, 2, 0),
              gen_ansatz(AnsatzKind::Brick, an, 2, 0)});
  family_row("CA", "ansatz-angles", an,
             {gen_ansatz(AnsatzKind::Linear, an, 2, 0), gen_ansatz(AnsatzKind::Linear, an, 2, 1),
              gen_ansatz(AnsatzKind::Linear, an, 2, 2)});

  // One circuit under several layouts.
  std::vector<Circuit> qm = {gen_textbook(TextbookAlgo::BV, 2, "11"),
                             gen_ansatz(AnsatzKind::Linear, 3, 1, 0)};
  {
    Circuit single;
    single.num_qubits = 1;
    single.name = "qrng";
    append_hadamard(single, 0);
    single.add(GateApp::measure(0));
    qm.push_back(std::move(single));
  }
  for (const auto& c : qm) {
    const auto ls = legal_layouts(c, device, static_cast<std::size_t>(config.qm_layouts),
                                  config.layout_seed);
    if (ls.size() < 2) {
      continue;
    }
    const auto set = layout_family(c, ls, dev.library, device);
    report.distances.push_back({"QM", c.name, c.num_qubits, set.size(), distinguishability(set)});
  }

  // One circuit across several devices of the same topology.
  if (config.qp_devices >= 2) {
    for (const auto& c : {gen_textbook(TextbookAlgo::BV, 2, "11"),
                          gen_ansatz(AnsatzKind::Linear, 3, 1, 0)}) {
      const auto p = on_path(c);
      if (!p) {
        continue;
      }
      CandidateList set;
      for (int k = 0; k < config.qp_devices; ++k) {
        const auto other =
            gen_device(config.shape, config.qubits, config.device_seed + static_cast<std::uint64_t>(k));
        set.add(make_candidate(other.device.name, *p, other.library, other.device));
      }
      report.distances.push_back({"QP", c.name, c.num_qubits, set.size(), distinguishability(set)});
    }
  }
  return report;
}

std::string accuracy_csv(const std::vector<AccuracyRow>& rows) {
  std::string out = "layouts,metric,accuracy\n";
  for (const auto& r : rows) {
    out += std::to_string(r.layouts) + "," + to_string(r.metric) + "," +
           io::format_double(r.accuracy) + "\n";
  }
  return out;
}

std::string distances_csv(const std::vector<DistanceRow>& rows) {
  std::string out = "scenario,name,qubits,size,value\n";
  for (const auto& r : rows) {
    out += r.scenario + "," + r.name + "," + std::to_string(r.qubits) + "," +
           std::to_string(r.size) + "," + io::format_double(r.value) + "\n";
  }
  return out;
}

} // namespace qsca
