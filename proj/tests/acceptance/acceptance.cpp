// Acceptance harness: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria (0 = all pass).

#include "qsca/attacks.hpp"
#include "qsca/bench.hpp"
#include "qsca/defense.hpp"
#include "qsca/devicegen.hpp"
#include "qsca/error.hpp"
#include "qsca/metrics.hpp"
#include "qsca/reconstruct.hpp"
#include "qsca/rng.hpp"
#include "qsca/scheduler.hpp"
#include "qsca/textbook.hpp"
#include "qsca/tracegen.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

using namespace qsca;

namespace {

int failures = 0;

void report(bool pass, const char* name, const std::string& detail) {
  std::printf("%s  %-28s %s\n", pass ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  failures += pass ? 0 : 1;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

using Multiset = std::vector<FoundGate>;

Multiset expected_gates(const Schedule& s) {
  Multiset out;
  for (const auto& g : s.gates) {
    if (has_pulses(g.gate)) {
      out.push_back({g.gate, g.qubits, g.start});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t common_count(Multiset a, Multiset b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<FoundGate> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  return both.size();
}

// ---------------------------------------------------------------- RP corpus

struct RpCase {
  Schedule schedule;
  std::map<Channel, PowerTrace> traces;
  Multiset truth;
};

std::vector<RpCase> rp_corpus(const GeneratedDevice& dev) {
  std::vector<RpCase> out;
  Rng rng(2024);
  for (int i = 0; i < 200; ++i) {
    const int active = static_cast<int>(rng.uniform_int(2, 7));
    const int gates = static_cast<int>(rng.uniform_int(5, 50));
    const auto c = gen_random_circuit(dev.device, gates, rng.next(), 0.0, active);
    RpCase rc;
    rc.schedule = schedule(c, dev.library, dev.device);
    rc.traces = per_channel_power(rc.schedule, dev.device);
    rc.truth = expected_gates(rc.schedule);
    out.push_back(std::move(rc));
  }
  return out;
}

double peak_power(const PulseShape& s) {
  const auto p = sample_power(s);
  return *std::max_element(p.begin(), p.end());
}

double max_sample_power(const GeneratedDevice& dev) {
  double m = 0.0;
  for (const auto& [key, e] : dev.library.entries()) {
    for (const auto& p : e.pulses) {
      m = std::max(m, peak_power(p.shape));
    }
  }
  return m;
}

// Fraction of true gates recovered under per-channel Gaussian noise.
double noisy_recall(const std::vector<RpCase>& corpus, const GeneratedDevice& dev,
                    const ReconstructionParams& params, double sigma, std::uint64_t seed) {
  std::size_t hit = 0;
  std::size_t total = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    std::map<Channel, PowerTrace> noisy;
    std::uint64_t k = 0;
    for (const auto& [ch, t] : corpus[i].traces) {
      noisy[ch] = add_noise(t, sigma, seed * 1000003 + i * 101 + k++);
    }
    const auto rep = reconstruct_report(noisy, dev.library, dev.device, params);
    hit += common_count(rep.circuit.gates, corpus[i].truth);
    total += corpus[i].truth.size();
  }
  return static_cast<double>(hit) / static_cast<double>(total);
}

void rp_criteria() {
  const auto dev = gen_device(TopologyShape::HShape, 7, 0);
  const auto corpus = rp_corpus(dev);

  {
    const auto params = suggest_params(dev.library, dev.device);
    const auto issues = validate_params(dev.library, dev.device, params);
    const auto t0 = std::chrono::steady_clock::now();
    int exact = 0;
    std::size_t gates = 0;
    for (const auto& rc : corpus) {
      gates += rc.truth.size();
      try {
        auto got = reconstruct(rc.traces, dev.library, dev.device, params).gates;
        std::sort(got.begin(), got.end());
        exact += got == rc.truth ? 1 : 0;
      } catch (const Error&) {
        // counted as a miss
      }
    }
    const double secs = seconds_since(t0);
    report(issues.empty() && exact == 200 && secs < 30.0, "rp-round-trip",
           fmt("%d/200 exact, %zu gates, %.2f s, boundary %.3g tol %d", exact, gates, secs,
               params.boundary.high, params.tolerance));
  }

  {
    const double max_power = max_sample_power(dev);
    const double sigma = 0.01 * max_power;
    const auto params = suggest_params(dev.library, dev.device, sigma);
    const double recall = noisy_recall(corpus, dev, params, sigma, 1);
    // Locate the largest sigma (in percent of max power) that still meets 95%.
    double sigma_star = 0.0;
    for (double pct = 0.25; pct <= 4.0 + 1e-9; pct += 0.25) {
      const double s = pct / 100.0 * max_power;
      if (noisy_recall(corpus, dev, suggest_params(dev.library, dev.device, s), s, 7) >= 0.95) {
        sigma_star = pct;
      } else {
        break;
      }
    }
    report(recall >= 0.95, "rp-noise",
           fmt("recall %.4f at sigma %.3g (1%% of max power %.4g); sigma* ~ %.2f%%", recall, sigma,
               max_power, sigma_star));
  }
}

// ------------------------------------------------------- oracle structure

GeneratedDevice line_for(int qubits) { return gen_device(TopologyShape::Line, std::max(2, qubits), 0); }

CandidateList family(TextbookAlgo algo, int n, const GeneratedDevice& dev) {
  CandidateList set;
  Layout ident(static_cast<std::size_t>(textbook_qubits(algo, n)));
  for (std::size_t i = 0; i < ident.size(); ++i) {
    ident[i] = static_cast<int>(i);
  }
  for (const auto& s : all_bitstrings(n)) {
    const auto c = gen_textbook(algo, n, s);
    set.add(make_candidate(s, apply_layout(c, ident, dev.device), dev.library, dev.device));
  }
  return set;
}

void oracle_criterion() {
  bool ok = true;
  std::string detail;
  for (int n = 1; n <= 6; ++n) {
    const double dj = distinguishability(family(TextbookAlgo::DJ, n, line_for(n + 1)));
    const double gs = distinguishability(family(TextbookAlgo::GS, n, line_for(n)));
    const double bv = distinguishability(family(TextbookAlgo::BV, n, line_for(n + 1)));
    ok = ok && dj == 0.0 && gs == 0.0 && bv > 0.0;
    detail += fmt("n=%d dj=%g gs=%g bv=%.3g; ", n, dj, gs, bv);
  }
  report(ok, "oracle-structure", detail);
}

// ------------------------------------------------------- RZ invisibility

void rz_criterion() {
  const auto dev = gen_device(TopologyShape::HShape, 7, 0);
  Rng rng(77);
  int identical = 0;
  for (int i = 0; i < 100; ++i) {
    const auto c = gen_random_circuit(dev.device, static_cast<int>(rng.uniform_int(1, 40)),
                                      rng.next(), 0.0);
    Circuit with_rz = c;
    const int inserts = static_cast<int>(rng.uniform_int(1, 20));
    for (int k = 0; k < inserts; ++k) {
      const auto pos = static_cast<std::ptrdiff_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(with_rz.ops.size())));
      const double angle = rng.uniform_real(-50.0, 50.0);
      const int q = static_cast<int>(rng.uniform_int(0, dev.device.num_qubits - 1));
      with_rz.ops.insert(with_rz.ops.begin() + pos, GateApp::rz(angle, q));
    }
    const auto a = total_power(schedule(c, dev.library, dev.device), dev.device);
    const auto b = total_power(schedule(with_rz, dev.library, dev.device), dev.device);
    identical += a.samples == b.samples ? 1 : 0;
  }
  report(identical == 100, "rz-invisibility", fmt("%d/100 bit-identical", identical));
}

// ------------------------------------------------------- defense

Circuit strip_sites(const SubstitutionSite& site) {
  Circuit c;
  c.num_qubits = site.original.qubits[0] + 1;
  c.ops = site.replacement;
  return strip_rz(c);
}

void defense_criterion() {
  Rng rng(5);
  int equivalent = 0;
  int runs = 0;
  int fired = 0;
  int stripped_differs = 0;
  for (int i = 0; i < 50; ++i) {
    const int nq = static_cast<int>(rng.uniform_int(1, 3));
    Device d;
    if (nq >= 2) {
      d = line_device(nq);
    } else {
      d.num_qubits = 1;
      d.granularity = 16;
      d.dt = 1e-9;
    }
    const auto c = gen_random_circuit(d, static_cast<int>(rng.uniform_int(1, 20)), rng.next(), 0.2);
    for (double prob : {0.25, 0.5, 1.0}) {
      const auto r = substitute_with_sites(c, prob, rng.next());
      ++runs;
      equivalent += equivalent_up_to_phase(c, r.circuit) ? 1 : 0;
      for (const auto& site : r.sites) {
        ++fired;
        Circuit orig;
        orig.num_qubits = site.original.qubits[0] + 1;
        orig.ops = {site.original};
        stripped_differs += equivalent_up_to_phase(orig, strip_sites(site)) ? 0 : 1;
      }
    }
  }
  report(equivalent == runs && stripped_differs == fired && fired > 0, "defense-soundness",
         fmt("%d/%d equivalent; %d/%d fired sites not equivalent once stripped", equivalent, runs,
             stripped_differs, fired));
}

// ------------------------------------------------------- metric axioms

void metric_criterion() {
  Rng rng(11);
  const auto random_trace = [&] {
    PowerTrace t;
    t.samples.resize(static_cast<std::size_t>(rng.uniform_int(1, 300)));
    for (auto& v : t.samples) {
      v = rng.uniform_real(0.0, 1.0);
    }
    return t;
  };
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto a = random_trace();
    const auto b = random_trace();
    const auto c = random_trace();
    const double ab = circuit_dist(a, b);
    const double ba = circuit_dist(b, a);
    worst = std::max(worst, circuit_dist(a, a));
    worst = std::max(worst, std::abs(ab - ba));
    worst = std::max(worst, ab - (circuit_dist(a, c) + circuit_dist(c, b)));
    worst = std::max(worst, std::abs(norm_dist(a, b) * circuit_norm(a) -
                                     norm_dist(b, a) * circuit_norm(b)));
  }
  report(worst <= 1e-9, "metric-axioms", fmt("worst violation %.3g over 100 triples", worst));
}

// ------------------------------------------------------- UC accuracy law

// Corpus with deliberate collisions: RZ-only variants (identical traces) and
// X/SX swaps (identical durations).
std::vector<Circuit> uc_corpus(const Device& device, int size, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Circuit> out;
  while (static_cast<int>(out.size()) < size) {
    auto c = gen_random_circuit(device, static_cast<int>(rng.uniform_int(1, 12)), rng.next(), 0.3,
                                static_cast<int>(rng.uniform_int(1, 3)));
    const auto roll = rng.uniform_int(0, 3);
    if (roll == 0 && !out.empty()) {
      c = out[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(out.size()) - 1))];
      c.ops.push_back(GateApp::rz(rng.uniform_real(0, 6), 0));
    } else if (roll == 1 && !out.empty()) {
      c = out.back();
      for (auto& op : c.ops) {
        if (op.gate == Gate::X || op.gate == Gate::SX) {
          op.gate = op.gate == Gate::X ? Gate::SX : Gate::X;
          break;
        }
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

void uc_criterion() {
  const auto dev = gen_device(TopologyShape::HShape, 7, 0);
  bool ok = true;
  std::string detail;
  int checks = 0;
  for (int size : {8, 24, 40, 64}) {
    for (std::uint64_t seed : {1u, 2u}) {
      const auto corpus = uc_corpus(dev.device, size, seed * 31 + static_cast<std::uint64_t>(size));
      CandidateList list;
      for (std::size_t i = 0; i < corpus.size(); ++i) {
        list.add(make_candidate("k" + std::to_string(i), corpus[i], dev.library, dev.device));
      }
      for (auto metric : kAllMetrics) {
        const std::size_t n = list.size();
        // Brute force: full distance matrix, strict-less argmin.
        std::size_t bf_hits = 0;
        std::size_t classes = 0;
        for (std::size_t i = 0; i < n; ++i) {
          const auto qi = quantity_of(list[i], metric);
          std::size_t arg = 0;
          double best = INFINITY;
          bool first_of_class = true;
          for (std::size_t j = 0; j < n; ++j) {
            const double d = quantity_distance(qi, quantity_of(list[j], metric));
            if (d < best) {
              best = d;
              arg = j;
            }
            if (j < i && d == 0.0) {
              first_of_class = false;
            }
          }
          bf_hits += arg == i ? 1 : 0;
          classes += first_of_class ? 1 : 0;
        }
        const double measured = uc_accuracy(list, metric);
        const double brute = static_cast<double>(bf_hits) / static_cast<double>(n);
        // 1 - (N - classes)/N evaluated exactly, as the integer count classes/N.
        const double law = static_cast<double>(classes) / static_cast<double>(n);
        ++checks;
        if (!(measured == brute && bf_hits == classes)) {
          ok = false;
          detail += fmt("[N=%zu %s: %.6g vs %.6g vs %.6g] ", n, to_string(metric), measured, brute,
                        law);
        }
      }
    }
  }
  report(ok, "uc-accuracy-law", fmt("%d corpus/metric checks exact", checks) + detail);
}

// ------------------------------------------------------- accuracy trend over layouts

void trend_criterion() {
  BenchConfig cfg;
  const auto dev = gen_device(cfg.shape, cfg.qubits, cfg.device_seed);
  const auto corpus = bench_corpus(cfg.corpus_size, cfg.corpus_seed);
  bool all_le = true;
  bool some_lt = false;
  std::string detail;
  for (int layouts : cfg.layout_counts) {
    const auto cl = expanded_candidates(corpus, layouts, dev, cfg.layout_seed);
    const double tr = uc_accuracy(cl, MetricKind::Trace);
    const double du = uc_accuracy(cl, MetricKind::Duration);
    all_le = all_le && du <= tr;
    some_lt = some_lt || du < tr;
    detail += fmt("L=%d(N=%zu) trace %.3f dur %.3f; ", layouts, cl.size(), tr, du);
  }
  report(all_le && some_lt, "uc-layout-trend", detail);
}

// ------------------------------------------------------- power composition

void composition_criterion() {
  const auto dev = gen_device(TopologyShape::HShape, 7, 0);
  Rng rng(99);
  int exact = 0;
  int stats_ok = 0;
  for (int i = 0; i < 100; ++i) {
    const auto c = gen_random_circuit(dev.device, static_cast<int>(rng.uniform_int(1, 30)),
                                      rng.next(), 0.1);
    const auto s = schedule(c, dev.library, dev.device);
    const auto total = total_power(s, dev.device);
    // Independent path: amplitude per channel, |a|^2, summed in channel order.
    std::vector<double> sum(static_cast<std::size_t>(schedule_span(s)), 0.0);
    for (const auto ch : dev.device.channels()) {
      const auto amp = channel_amplitude(s, dev.device, ch);
      for (std::size_t k = 0; k < amp.size(); ++k) {
        sum[k] += amp[k].real() * amp[k].real() + amp[k].imag() * amp[k].imag();
      }
    }
    exact += sum == total.samples ? 1 : 0;
    if (total.samples.empty()) {
      ++stats_ok;
      continue;
    }
    double energy = 0.0;
    for (double v : total.samples) {
      energy += v;
    }
    const auto st = scalar_stats(total);
    const int duration = static_cast<int>(total.samples.size());
    stats_ok += st.energy == energy && st.duration == duration &&
                        st.duration == schedule_span(s) && st.mean_power == energy / duration
                    ? 1
                    : 0;
  }
  report(exact == 100 && stats_ok == 100, "power-composition",
         fmt("%d/100 sums exact, %d/100 stats exact", exact, stats_ok));
}

} // namespace

int main(int argc, char** argv) {
  const std::map<std::string, std::function<void()>> criteria = {
      {"rp", rp_criteria},           {"oracle", oracle_criterion}, {"rz", rz_criterion},
      {"defense", defense_criterion}, {"metric", metric_criterion}, {"uc", uc_criterion},
      {"trend", trend_criterion},     {"power", composition_criterion}};
  const std::vector<std::string> order = {"rp", "oracle", "rz", "defense", "metric", "uc", "trend", "power"};
  for (const auto& name : order) {
    bool selected = argc < 2;
    for (int i = 1; i < argc; ++i) {
      selected = selected || name == argv[i];
    }
    if (selected) {
      criteria.at(name)();
    }
  }
  return failures;
}
