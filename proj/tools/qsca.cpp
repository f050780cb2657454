// qsca: command line front end. Exit codes: 0 ok, 1 domain error, 2 usage.

#include "CLI11.hpp"

#include "qsca/attacks.hpp"
#include "qsca/bench.hpp"
#include "qsca/circuit.hpp"
#include "qsca/defense.hpp"
#include "qsca/devicegen.hpp"
#include "qsca/error.hpp"
#include "qsca/io.hpp"
#include "qsca/reconstruct.hpp"
#include "qsca/scheduler.hpp"
#include "qsca/textbook.hpp"
#include "qsca/tracegen.hpp"

#include <filesystem>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace qsca;

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fs::path out_dir(const std::string& out) {
  fs::path p(out);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) {
    throw Error(ErrorKind::Io, "cannot create " + out + ": " + ec.message());
  }
  return p;
}

Circuit load_circuit(const std::string& path) {
  const auto text = io::read_file(path);
  if (fs::path(path).extension() == ".json") {
    return io::circuit_from_json(text);
  }
  Circuit c = parse_circuit(text);
  if (c.name.empty()) {
    c.name = fs::path(path).stem().string();
  }
  return c;
}

Layout parse_layout(const std::string& text) {
  Layout l;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      l.push_back(std::stoi(item, &used));
      if (used != item.size()) {
        throw Usage("bad layout entry '" + item + "'");
      }
    } catch (const std::logic_error&) {
      throw Usage("bad layout '" + text + "'");
    }
  }
  return l;
}

struct DeviceFiles {
  std::string device;
  std::string library;

  void add_to(CLI::App* app) {
    app->add_option("--device", device, "device.json")->required();
    app->add_option("--library", library, "library.json")->required();
  }
  [[nodiscard]] GeneratedDevice load() const {
    return {io::device_from_json(io::read_file(device)),
            io::library_from_json(io::read_file(library))};
  }
};

// The physical circuit: explicit layout, identity when the circuit already
// spans the device, otherwise the first legal layout.
Circuit place(const Circuit& c, const Device& device, const std::string& layout_text) {
  if (!layout_text.empty()) {
    return apply_layout(c, parse_layout(layout_text), device);
  }
  if (c.num_qubits == device.num_qubits) {
    if (!is_connectivity_legal(c, device)) {
      throw Error(ErrorKind::Connectivity, "circuit is not legal on device '" + device.name + "'");
    }
    return c;
  }
  Layout identity(static_cast<std::size_t>(c.num_qubits));
  for (int i = 0; i < c.num_qubits; ++i) {
    identity[static_cast<std::size_t>(i)] = i;
  }
  return apply_layout(c, identity, device);
}

std::map<Channel, PowerTrace> load_traces(const std::string& path) {
  fs::path p(path);
  if (fs::is_directory(p)) {
    p /= "traces.json";
  }
  return io::traces_from_json(io::read_file(p));
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pulse schedules, power traces and side-channel attacks"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  // gen-device
  auto* gd = app.add_subcommand("gen-device", "synthetic device and basis pulse library");
  std::string shape_name = "h";
  int qubits = 7;
  std::uint64_t seed = 0;
  std::string out;
  gd->add_option("--shape", shape_name, "line | t | h")->required();
  gd->add_option("--qubits", qubits, "qubit count")->required();
  gd->add_option("--seed", seed)->required();
  gd->add_option("--out", out, "output directory")->required();

  // gen-circuit
  auto* gc = app.add_subcommand("gen-circuit", "random or textbook circuit (.qc)");
  std::string kind = "random";
  std::string param;
  int n_gates = 20;
  int n = 2;
  int active = 0;
  double rz_fraction = 0.0;
  DeviceFiles gc_dev;
  std::string gc_device;
  gc->add_option("--kind", kind, "random | bv | dj | gs | ansatz-linear | ansatz-reverse | ansatz-brick")
      ->capture_default_str();
  gc->add_option("--device", gc_device, "device.json (random circuits)");
  gc->add_option("--gates", n_gates)->capture_default_str();
  gc->add_option("--rz-fraction", rz_fraction)->capture_default_str();
  gc->add_option("--active", active, "restrict to a connected set of this many qubits");
  gc->add_option("--n", n, "data qubits (textbook) or qubits (ansatz)")->capture_default_str();
  gc->add_option("--param", param, "hidden bit string (textbook)");
  gc->add_option("--seed", seed)->required();
  gc->add_option("--out", out)->required();

  // schedule
  auto* sc = app.add_subcommand("schedule", "lower a circuit to a pulse schedule");
  std::string circuit_path;
  std::string layout_text;
  DeviceFiles sc_dev;
  sc->add_option("--circuit", circuit_path)->required();
  sc_dev.add_to(sc);
  sc->add_option("--layout", layout_text, "logical->physical map, e.g. 3,5");
  sc->add_option("--out", out)->required();

  // trace
  auto* tr = app.add_subcommand("trace", "per-channel and total power traces");
  std::string sched_path;
  double noise = 0.0;
  std::uint64_t noise_seed = 0;
  DeviceFiles tr_dev;
  auto* tr_group = tr->add_option_group("input");
  tr_group->add_option("--circuit", circuit_path);
  tr_group->add_option("--schedule", sched_path);
  tr_group->require_option(1);
  tr_dev.add_to(tr);
  tr->add_option("--layout", layout_text);
  tr->add_option("--noise", noise, "Gaussian sigma added to every sample");
  tr->add_option("--noise-seed", noise_seed);
  tr->add_option("--out", out)->required();

  // attack-uc
  auto* uc = app.add_subcommand("attack-uc", "identify circuits from candidate traces");
  std::vector<std::string> circuits;
  std::vector<std::string> metric_names;
  std::string measured;
  DeviceFiles uc_dev;
  uc->add_option("--circuits", circuits, "candidate circuit files")->required();
  uc_dev.add_to(uc);
  uc->add_option("--metric", metric_names, "trace | energy | mean_power | duration");
  uc->add_option("--measured", measured, "trace.csv to identify");
  uc->add_option("--out", out)->required();

  // distinguish
  auto* ds = app.add_subcommand("distinguish", "minimum normalized distance of a family");
  DeviceFiles ds_dev;
  int ds_layouts = 0;
  std::uint64_t layout_seed = 0;
  ds->add_option("--circuits", circuits, "family members")->required();
  ds_dev.add_to(ds);
  ds->add_option("--layouts", ds_layouts, "expand a single circuit over this many layouts");
  ds->add_option("--layout-seed", layout_seed);
  ds->add_option("--out", out)->required();

  // attack-rp
  auto* rp = app.add_subcommand("attack-rp", "reconstruct gates from per-channel traces");
  DeviceFiles rp_dev;
  std::string traces_path;
  double boundary = 0.0;
  double boundary_low = 0.0;
  int tolerance = 0;
  int smoothing = 0;
  int merge_gap = 0;
  double auto_sigma = -1.0;
  rp_dev.add_to(rp);
  rp->add_option("--traces", traces_path, "traces.json or a directory holding it")->required();
  auto* rp_auto = rp->add_option("--auto", auto_sigma,
                                 "derive every setting from the library for this noise sigma");
  auto* rp_manual =
      rp->add_option("--boundary", boundary, "binarization boundary (b_hi when staged)");
  rp->add_option("--boundary-low", boundary_low, "b_lo; enables staged search")
      ->excludes(rp_auto);
  auto* rp_tol = rp->add_option("--tolerance", tolerance);
  rp->add_option("--smoothing", smoothing, "moving-average window")->excludes(rp_auto);
  rp->add_option("--merge-gap", merge_gap)->excludes(rp_auto);
  rp_auto->excludes(rp_manual)->excludes(rp_tol);
  rp->add_option("--out", out)->required();

  // defend
  auto* df = app.add_subcommand("defend", "virtual-RZ substitution");
  double prob = 0.5;
  df->add_option("--circuit", circuit_path)->required();
  df->add_option("--prob", prob)->required();
  df->add_option("--seed", seed)->required();
  df->add_option("--out", out)->required();

  // bench
  auto* bn = app.add_subcommand("bench", "accuracy and distinguishability tables");
  bn->set_config("--config", "", "TOML/INI file with the flags below");
  BenchConfig cfg;
  std::string bench_shape = "h";
  std::vector<int> layout_counts = cfg.layout_counts;
  std::vector<std::string> bench_metrics;
  bn->add_option("--shape", bench_shape)->capture_default_str();
  bn->add_option("--qubits", cfg.qubits)->capture_default_str();
  bn->add_option("--seed", seed, "base seed for device, corpus and layouts")->required();
  bn->add_option("--corpus", cfg.corpus_size)->capture_default_str();
  bn->add_option("--layouts", layout_counts)->delimiter(',');
  bn->add_option("--metrics", bench_metrics)->delimiter(',');
  bn->add_option("--qm-layouts", cfg.qm_layouts)->capture_default_str();
  bn->add_option("--qp-devices", cfg.qp_devices)->capture_default_str();
  bn->add_option("--out", out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "qsca: " << e.what() << "\n";
    return 2;
  }

  try {
    if (gd->parsed()) {
      const auto shape = parse_shape(shape_name);
      if (!shape) {
        throw Usage("unknown shape '" + shape_name + "'");
      }
      const auto dev = gen_device(*shape, qubits, seed);
      const auto dir = out_dir(out);
      io::write_file(dir / "device.json", io::device_to_json(dev.device));
      io::write_file(dir / "library.json", io::library_to_json(dev.library));
    } else if (gc->parsed()) {
      Circuit c;
      if (kind == "random") {
        if (gc_device.empty()) {
          throw Usage("--device is required for random circuits");
        }
        c = gen_random_circuit(io::device_from_json(io::read_file(gc_device)), n_gates, seed,
                               rz_fraction, active);
      } else if (const auto algo = parse_algo(kind)) {
        c = gen_textbook(*algo, n, param);
      } else if (kind.rfind("ansatz-", 0) == 0) {
        const auto pat = kind.substr(7);
        const AnsatzKind ak = pat == "linear"    ? AnsatzKind::Linear
                              : pat == "reverse" ? AnsatzKind::Reverse
                              : pat == "brick"   ? AnsatzKind::Brick
                                                 : throw Usage("unknown ansatz '" + pat + "'");
        c = gen_ansatz(ak, n, 2, seed);
      } else {
        throw Usage("unknown circuit kind '" + kind + "'");
      }
      io::write_file(out_dir(out) / "circuit.qc", print_circuit(c));
    } else if (sc->parsed()) {
      const auto dev = sc_dev.load();
      const auto c = place(load_circuit(circuit_path), dev.device, layout_text);
      io::write_file(out_dir(out) / "sched.json",
                     io::schedule_to_json(schedule(c, dev.library, dev.device)));
    } else if (tr->parsed()) {
      const auto dev = tr_dev.load();
      const Schedule s =
          sched_path.empty()
              ? schedule(place(load_circuit(circuit_path), dev.device, layout_text), dev.library,
                         dev.device)
              : io::schedule_from_json(io::read_file(sched_path));
      auto per = per_channel_power(s, dev.device);
      if (noise != 0.0) {
        std::uint64_t k = 0;
        for (auto& [ch, t] : per) {
          t = add_noise(t, noise, noise_seed + k++);
        }
      }
      const auto dir = out_dir(out);
      io::write_file(dir / "traces.json", io::traces_to_json(per));
      io::write_file(dir / "trace.csv", io::trace_to_csv(across_channel_sum(per)));
    } else if (uc->parsed()) {
      const auto dev = uc_dev.load();
      CandidateList list;
      for (const auto& path : circuits) {
        // Ids are the paths as given: file names alone often collide.
        list.add(make_candidate(path, place(load_circuit(path), dev.device, ""), dev.library,
                                dev.device));
      }
      std::vector<MetricKind> metrics;
      for (const auto& m : metric_names) {
        const auto k = parse_metric(m);
        if (!k) {
          throw Usage("unknown metric '" + m + "'");
        }
        metrics.push_back(*k);
      }
      if (metrics.empty()) {
        metrics.assign(std::begin(kAllMetrics), std::end(kAllMetrics));
      }
      const auto dir = out_dir(out);
      std::string report = "id,metric,identified,distance,correct\n";
      std::string summary = "metric,accuracy\n";
      for (auto metric : metrics) {
        std::size_t hits = 0;
        for (std::size_t i = 0; i < list.size(); ++i) {
          const auto r = identify_uc(quantity_of(list[i], metric), list, metric);
          hits += r.index == i;
          report += list[i].id + "," + to_string(metric) + "," + r.id + "," +
                    io::format_double(r.distance) + "," + (r.index == i ? "1" : "0") + "\n";
        }
        summary += std::string(to_string(metric)) + "," +
                   io::format_double(static_cast<double>(hits) / static_cast<double>(list.size())) +
                   "\n";
      }
      io::write_file(dir / "uc.csv", report);
      io::write_file(dir / "accuracy.csv", summary);
      if (!measured.empty()) {
        const auto t = io::trace_from_csv(io::read_file(measured));
        std::string ident = "metric,identified,distance\n";
        for (auto metric : metrics) {
          Quantity q;
          if (metric == MetricKind::Trace) {
            q = t;
          } else {
            if (t.samples.empty()) {
              throw Error(ErrorKind::DegenerateTrace, "measured trace is empty");
            }
            const auto st = scalar_stats(t);
            q = metric == MetricKind::Energy      ? st.energy
                : metric == MetricKind::MeanPower ? st.mean_power
                                                  : static_cast<double>(st.duration);
          }
          const auto r = identify_uc(q, list, metric);
          ident += std::string(to_string(metric)) + "," + r.id + "," + io::format_double(r.distance) +
                   "\n";
        }
        io::write_file(dir / "identify.csv", ident);
      }
    } else if (ds->parsed()) {
      const auto dev = ds_dev.load();
      CandidateList set;
      if (ds_layouts > 0) {
        if (circuits.size() != 1) {
          throw Usage("--layouts expands exactly one circuit");
        }
        const auto c = load_circuit(circuits.front());
        set = layout_family(c, legal_layouts(c, dev.device, static_cast<std::size_t>(ds_layouts),
                                             layout_seed),
                            dev.library, dev.device);
      } else {
        for (const auto& path : circuits) {
          set.add(make_candidate(path, place(load_circuit(path), dev.device, ""), dev.library,
                                 dev.device));
        }
      }
      io::write_file(out_dir(out) / "distance.csv",
                     "size,min_norm_dist\n" + std::to_string(set.size()) + "," +
                         io::format_double(distinguishability(set)) + "\n");
    } else if (rp->parsed()) {
      const auto dev = rp_dev.load();
      ReconstructionParams params;
      if (*rp_auto) {
        params = suggest_params(dev.library, dev.device, auto_sigma);
      } else {
        if (!*rp_manual || !*rp_tol) {
          throw Usage("attack-rp needs --boundary and --tolerance, or --auto");
        }
        params.boundary = boundary_low > 0.0 ? Boundary::staged(boundary, boundary_low)
                                             : Boundary::uniform(boundary);
        params.tolerance = tolerance;
        params.smoothing = smoothing;
        params.merge_gap = merge_gap;
      }
      for (const auto& v : validate_params(dev.library, dev.device, params)) {
        std::cerr << "qsca: warning: " << v << "\n";
      }
      const auto recon = reconstruct(load_traces(traces_path), dev.library, dev.device, params);
      io::write_file(out_dir(out) / "recon.json", io::recon_to_json(recon));
    } else if (df->parsed()) {
      const auto c = load_circuit(circuit_path);
      io::write_file(out_dir(out) / "defended.qc", print_circuit(substitute(c, prob, seed)));
    } else if (bn->parsed()) {
      const auto shape = parse_shape(bench_shape);
      if (!shape) {
        throw Usage("unknown shape '" + bench_shape + "'");
      }
      cfg.shape = *shape;
      cfg.device_seed = cfg.corpus_seed = cfg.layout_seed = seed;
      cfg.layout_counts = layout_counts;
      if (!bench_metrics.empty()) {
        cfg.metrics.clear();
        for (const auto& m : bench_metrics) {
          const auto k = parse_metric(m);
          if (!k) {
            throw Usage("unknown metric '" + m + "'");
          }
          cfg.metrics.push_back(*k);
        }
      }
      const auto report = run_bench(cfg);
      const auto dir = out_dir(out);
      io::write_file(dir / "accuracy.csv", accuracy_csv(report.accuracy));
      io::write_file(dir / "distances.csv", distances_csv(report.distances));
    }
  } catch (const Usage& e) {
    std::cerr << "qsca: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "qsca: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "qsca: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
