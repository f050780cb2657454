#include "qsca/devicegen.hpp"
#include "qsca/error.hpp"
#include "qsca/reconstruct.hpp"
#include "qsca/scheduler.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace qsca;

namespace {

const GeneratedDevice& hdev() {
  static const auto g = gen_device(TopologyShape::HShape, 7, 0);
  return g;
}

double peak(Gate gate, int q) {
  const int qs[] = {q};
  const auto p = sample_power(lookup_basis_pulses(hdev().library, gate, qs).pulses[0].shape);
  return *std::max_element(p.begin(), p.end());
}

double min_peak(Gate gate) {
  double m = 1e300;
  for (int q = 0; q < 7; ++q) {
    m = std::min(m, peak(gate, q));
  }
  return m;
}

ReconstructionParams params() { return suggest_params(hdev().library, hdev().device); }

// Per-drive staged pairs: b_hi between that qubit's SX and X peaks, b_lo
// under its SX peak. Peaks overlap across qubits, so one global pair can't work.
ReconstructionParams staged_params() {
  auto p = params();
  for (int q = 0; q < 7; ++q) {
    const double sx = peak(Gate::SX, q);
    const double x = peak(Gate::X, q);
    p.overrides[Channel::drive(q)].boundary = Boundary::staged((sx + x) / 2, 0.5 * sx);
  }
  return p;
}

std::map<Channel, PowerTrace> traces_of(const Circuit& c) {
  return per_channel_power(schedule(c, hdev().library, hdev().device), hdev().device);
}

std::vector<FoundGate> expected(const Circuit& c) {
  std::vector<FoundGate> out;
  for (const auto& g : schedule(c, hdev().library, hdev().device).gates) {
    if (has_pulses(g.gate)) {
      out.push_back({g.gate, g.qubits, g.start});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FoundGate> sorted(std::vector<FoundGate> v) {
  std::sort(v.begin(), v.end());
  return v;
}

} // namespace

TEST(Binarize, Examples) {
  EXPECT_EQ(binarize(std::vector<double>(8, 0.0), 0.01), BitSeries(8, 0));
  const auto drag = sample_power(PulseShape::drag(160, 0.2, 40, 0.0));
  const auto segs = find_segments(binarize(drag, 0.01));
  EXPECT_EQ(segs.size(), 1u);
  EXPECT_EQ(binarize(drag, 0.05), BitSeries(160, 0));
}

TEST(Segments, Examples) {
  EXPECT_EQ(find_segments(BitSeries{0, 0, 1, 1, 1, 0, 0}), (std::vector<Segment>{{2, 3}}));
  EXPECT_EQ(find_segments(BitSeries{1, 0, 1}), (std::vector<Segment>{{0, 1}, {2, 1}}));
  EXPECT_TRUE(find_segments(BitSeries(5, 0)).empty());
  EXPECT_EQ(find_segments(BitSeries{1, 1}), (std::vector<Segment>{{0, 2}}));
}

TEST(Smooth, CentredWindowWithZeroPadding) {
  const std::vector<double> v{0, 0, 4, 0, 0};
  const auto s = smooth(v, 2);
  EXPECT_EQ(smooth(v, 1), v);
  ASSERT_EQ(s.size(), 5u);
  double sum = 0;
  for (double x : s) {
    sum += x;
  }
  EXPECT_DOUBLE_EQ(sum, 4.0);
  EXPECT_DOUBLE_EQ(*std::max_element(s.begin(), s.end()), 2.0);
}

TEST(MatchGate, SelfMatchAndMiss) {
  const auto p = params();
  const TemplateBank bank(hdev().library, hdev().device, p);
  const auto ch = Channel::drive(0);
  for (const auto& t : bank.candidates(ch, SearchStage::Uniform)) {
    const Segment seg{t.run_start + 320, t.run_length};
    const auto m = match_gate(seg, ch, hdev().library, hdev().device, p);
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ(m->gate, t.gate);
    EXPECT_EQ(m->qubits, std::vector<int>{0});
  }
  int longest = 0;
  for (const auto& t : bank.candidates(ch, SearchStage::Uniform)) {
    longest = std::max(longest, t.run_length);
  }
  const Segment miss{0, longest + p.tolerance + 1};
  EXPECT_FALSE(match_gate(miss, ch, hdev().library, hdev().device, p).has_value());
}

TEST(MatchGate, XAndSxDistinguishedByRunLength) {
  const auto p = params();
  ASSERT_FALSE(p.boundary.is_staged());
  for (int q = 0; q < 7; ++q) {
    EXPECT_LT(p.boundary.high, peak(Gate::SX, q));
    const TemplateBank bank(hdev().library, hdev().device, p);
    const auto& cs = bank.candidates(Channel::drive(q), SearchStage::Uniform);
    ASSERT_EQ(cs.size(), 2u);
    EXPECT_NE(cs[0].run_length, cs[1].run_length);
  }
}

TEST(MatchGate, OverlappingTemplatesAreAmbiguous) {
  auto p = params();
  p.tolerance = 200;
  const TemplateBank bank(hdev().library, hdev().device, p);
  const auto& t = bank.candidates(Channel::drive(0), SearchStage::Uniform).front();
  try {
    (void)bank.match(Segment{t.run_start, t.run_length}, Channel::drive(0), SearchStage::Uniform);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Ambiguity);
  }
}

TEST(ValidateParams, QuarterOfWeakestXPeakWithToleranceTwo) {
  // A fifth of the weakest X peak sits below every SX peak on this device.
  ReconstructionParams p;
  p.boundary = Boundary::uniform(0.2 * min_peak(Gate::X));
  p.tolerance = 2;
  EXPECT_TRUE(validate_params(hdev().library, hdev().device, p).empty());
}

TEST(ValidateParams, SuggestedParamsAreValid) {
  EXPECT_TRUE(validate_params(hdev().library, hdev().device, params()).empty());
  for (double sigma : {0.002, 0.01}) {
    const auto p = suggest_params(hdev().library, hdev().device, sigma);
    EXPECT_TRUE(validate_params(hdev().library, hdev().device, p).empty()) << sigma;
  }
}

TEST(ValidateParams, ToleranceOfHalfTheGapIsRejected) {
  auto p = params();
  const TemplateBank bank(hdev().library, hdev().device, p);
  int gap = 1 << 30;
  for (int q = 0; q < 7; ++q) {
    const auto& cs = bank.candidates(Channel::drive(q), SearchStage::Uniform);
    gap = std::min(gap, std::abs(cs[0].run_length - cs[1].run_length));
  }
  p.tolerance = (gap + 1) / 2;
  EXPECT_FALSE(validate_params(hdev().library, hdev().device, p).empty());
  p.tolerance = (gap - 1) / 2;
  EXPECT_TRUE(validate_params(hdev().library, hdev().device, p).empty());
}

TEST(ValidateParams, StagedOrdering) {
  EXPECT_TRUE(validate_params(hdev().library, hdev().device, staged_params()).empty());
  auto bad = staged_params();
  const double sx = peak(Gate::SX, 3);
  bad.overrides[Channel::drive(3)].boundary = Boundary::staged(0.5 * sx, 0.25 * sx);
  const auto v = validate_params(hdev().library, hdev().device, bad);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].find("drive/3"), std::string::npos);
}

TEST(ValidateParams, MalformedParams) {
  ReconstructionParams p;
  p.boundary = Boundary::uniform(-1.0);
  EXPECT_FALSE(validate_params(hdev().library, hdev().device, p).empty());
  p.boundary = Boundary::staged(0.001, 0.01);
  EXPECT_FALSE(validate_params(hdev().library, hdev().device, p).empty());
}

TEST(Reconstruct, SingleX) {
  const Circuit c{7, {GateApp::x(0)}};
  const auto r = reconstruct(traces_of(c), hdev().library, hdev().device, params());
  EXPECT_EQ(r.gates, (std::vector<FoundGate>{{Gate::X, {0}, 0}}));
}

TEST(Reconstruct, SxThenX) {
  const Circuit c{7, {GateApp::sx(0), GateApp::x(0)}};
  const auto r = reconstruct(traces_of(c), hdev().library, hdev().device, params());
  const int g = hdev().device.granularity;
  EXPECT_EQ(r.gates, (std::vector<FoundGate>{{Gate::SX, {0}, 0}, {Gate::X, {0}, align_up(160, g)}}));
}

TEST(Reconstruct, CxDirectionFromControlChannel) {
  for (const auto& c : {Circuit{7, {GateApp::cx(0, 1)}}, Circuit{7, {GateApp::cx(1, 0)}}}) {
    const auto r = reconstruct(traces_of(c), hdev().library, hdev().device, params());
    ASSERT_EQ(r.gates.size(), 1u);
    EXPECT_EQ(r.gates[0].qubits, c.ops[0].qubits);
    EXPECT_EQ(r.gates[0].gate, Gate::CX);
  }
}

TEST(Reconstruct, RzAndIdentityDropped) {
  const Circuit c{7,
                  {GateApp::rz(0.3, 0), GateApp::x(0), GateApp::id(1), GateApp::sx(1),
                   GateApp::rz(1.1, 1), GateApp::cx(1, 2), GateApp::id(0), GateApp::x(0)}};
  const auto r = reconstruct(traces_of(c), hdev().library, hdev().device, params());
  EXPECT_EQ(sorted(r.gates), expected(c));
}

TEST(Reconstruct, StagedModeRoundTrip) {
  const auto p = staged_params();
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto c = gen_random_circuit(hdev().device, 25, s, 0.0, 4);
    const auto r = reconstruct(traces_of(c), hdev().library, hdev().device, p);
    EXPECT_EQ(sorted(r.gates), expected(c)) << s;
  }
}

TEST(Reconstruct, RandomRoundTrips) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto c = gen_random_circuit(hdev().device, 30, 100 + s, 0.0);
    const auto r = reconstruct(traces_of(c), hdev().library, hdev().device, params());
    EXPECT_EQ(sorted(r.gates), expected(c)) << s;
  }
}

TEST(Reconstruct, UnexplainedPowerIsReported) {
  auto t = traces_of(Circuit{7, {GateApp::x(0)}});
  auto& d = t.at(Channel::drive(0)).samples;
  d.resize(d.size() + 40, 0.0);
  std::fill(d.end() - 20, d.end(), 0.5);
  const auto rep = reconstruct_report(t, hdev().library, hdev().device, params());
  EXPECT_EQ(rep.circuit.gates.size(), 1u);
  ASSERT_EQ(rep.leftovers.size(), 1u);
  EXPECT_EQ(rep.leftovers[0].channel, Channel::drive(0));
  try {
    reconstruct(t, hdev().library, hdev().device, params());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IncompleteReconstruction);
  }
}

TEST(Reconstruct, NoisyTraceWithSuggestedParams) {
  const double sigma = 0.002;
  const auto p = suggest_params(hdev().library, hdev().device, sigma);
  int hit = 0;
  int total = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto c = gen_random_circuit(hdev().device, 20, 500 + s, 0.0, 3);
    auto t = traces_of(c);
    std::uint64_t k = 0;
    for (auto& [ch, tr] : t) {
      tr = add_noise(tr, sigma, s * 100 + k++);
    }
    const auto want = expected(c);
    const auto got = sorted(reconstruct_report(t, hdev().library, hdev().device, p).circuit.gates);
    std::vector<FoundGate> common;
    std::set_intersection(want.begin(), want.end(), got.begin(), got.end(),
                          std::back_inserter(common));
    hit += static_cast<int>(common.size());
    total += static_cast<int>(want.size());
  }
  EXPECT_GT(static_cast<double>(hit) / total, 0.95);
}

TEST(Overrides, ForChannelAppliesOnlyToThatChannel) {
  ReconstructionParams p;
  p.boundary = Boundary::uniform(0.01);
  p.tolerance = 3;
  p.overrides[Channel::drive(2)] = ChannelOverride{Boundary::uniform(0.02), 5, std::nullopt, 4};
  const auto a = p.for_channel(Channel::drive(2));
  EXPECT_EQ(a.boundary.high, 0.02);
  EXPECT_EQ(a.tolerance, 5);
  EXPECT_EQ(a.merge_gap, 4);
  EXPECT_EQ(a.smoothing, 0);
  EXPECT_TRUE(a.overrides.empty());
  const auto b = p.for_channel(Channel::drive(1));
  EXPECT_EQ(b.boundary.high, 0.01);
  EXPECT_EQ(b.tolerance, 3);
}
