#include "qsca/attacks.hpp"
#include "qsca/devicegen.hpp"
#include "qsca/error.hpp"
#include "qsca/textbook.hpp"

#include <gtest/gtest.h>

using namespace qsca;

namespace {

const GeneratedDevice& hdev() {
  static const auto g = gen_device(TopologyShape::HShape, 7, 0);
  return g;
}

Candidate cand(const std::string& id, std::vector<GateApp> ops) {
  return make_candidate(id, Circuit{7, std::move(ops)}, hdev().library, hdev().device);
}

CandidateList four() {
  CandidateList l;
  l.add(cand("x0", {GateApp::x(0)}));
  l.add(cand("x1", {GateApp::x(1)}));
  l.add(cand("xx0", {GateApp::x(0), GateApp::x(0)}));
  l.add(cand("cx01", {GateApp::cx(0, 1)}));
  return l;
}

} // namespace

TEST(Candidate, PulseFreeHasZeroStats) {
  const auto c = cand("rz", {GateApp::rz(1.0, 2)});
  EXPECT_TRUE(c.trace.samples.empty());
  EXPECT_EQ(c.stats.energy, 0.0);
  EXPECT_EQ(c.stats.duration, 0);
  EXPECT_EQ(c.stats.mean_power, 0.0);
}

TEST(Candidate, DuplicateIdRejected) {
  CandidateList l;
  l.add(cand("a", {GateApp::x(0)}));
  EXPECT_THROW(l.add(cand("a", {GateApp::x(1)})), Error);
}

TEST(Identify, SelfMatch) {
  const auto l = four();
  for (auto m : kAllMetrics) {
    if (m == MetricKind::Duration) {
      continue;
    }
    const auto r = identify_uc(quantity_of(l[2], m), l, m);
    EXPECT_EQ(r.id, "xx0") << to_string(m);
    EXPECT_EQ(r.index, 2u);
    EXPECT_EQ(r.distance, 0.0);
  }
}

TEST(Identify, TieGoesToFirst) {
  const auto l = four();
  const auto r = identify_uc(quantity_of(l[1], MetricKind::Duration), l, MetricKind::Duration);
  EXPECT_EQ(r.id, "x0");
}

TEST(Identify, SmallNoiseStillIdentifies) {
  const auto l = four();
  for (std::size_t i = 0; i < l.size(); ++i) {
    const auto noisy = add_noise(l[i].trace, 1e-3, 40 + i);
    EXPECT_EQ(identify_uc(noisy, l, MetricKind::Trace).index, i);
  }
}

TEST(Identify, InvariantUnderAppendingFartherCandidates) {
  auto l = four();
  const auto measured = add_noise(l[0].trace, 1e-3, 1);
  const auto before = identify_uc(measured, l, MetricKind::Trace);
  l.add(cand("far", {GateApp::cx(3, 5), GateApp::cx(5, 6)}));
  const auto after = identify_uc(measured, l, MetricKind::Trace);
  EXPECT_EQ(before.id, after.id);
  EXPECT_EQ(before.distance, after.distance);
}

TEST(Identify, ScalarDistanceIsAbsoluteDifference) {
  EXPECT_EQ(quantity_distance(Quantity{2.0}, Quantity{5.0}), 3.0);
  EXPECT_EQ(quantity_distance(Quantity{PowerTrace{{3, 4}, {}}}, Quantity{PowerTrace{{}, {}}}), 5.0);
}

TEST(Accuracy, DistinctTracesGiveOne) {
  EXPECT_EQ(uc_accuracy(four(), MetricKind::Trace), 1.0);
}

TEST(Accuracy, SharedDurationAmongFour) {
  EXPECT_EQ(uc_accuracy(four(), MetricKind::Duration), 0.75);
}

TEST(Accuracy, RzVariantsCountAsOneClass) {
  CandidateList l;
  l.add(cand("a", {GateApp::x(0)}));
  l.add(cand("b", {GateApp::rz(0.5, 0), GateApp::x(0)}));
  l.add(cand("c", {GateApp::x(0), GateApp::rz(-2.0, 0)}));
  l.add(cand("d", {GateApp::sx(0)}));
  l.add(cand("e", {GateApp::rz(1.0, 0), GateApp::sx(0)}));
  // Classes {a,b,c} and {d,e}: three non-first members of five.
  EXPECT_DOUBLE_EQ(uc_accuracy(l, MetricKind::Trace), 1.0 - 3.0 / 5.0);
}

TEST(Distinguish, BvOneQubitPositive) {
  const auto a = gen_textbook(TextbookAlgo::BV, 1, "0");
  const auto b = gen_textbook(TextbookAlgo::BV, 1, "1");
  CandidateList l;
  l.add(make_candidate("s0", apply_layout(a, {0, 1}, hdev().device), hdev().library, hdev().device));
  l.add(make_candidate("s1", apply_layout(b, {0, 1}, hdev().device), hdev().library, hdev().device));
  EXPECT_GT(distinguishability(l), 0.0);
}

TEST(Distinguish, DjFamilyIsZero) {
  CandidateList l;
  for (const auto& s : all_bitstrings(2)) {
    const auto c = gen_textbook(TextbookAlgo::DJ, 2, s);
    l.add(make_candidate(s, apply_layout(c, {0, 1, 2}, hdev().device), hdev().library,
                         hdev().device));
  }
  EXPECT_EQ(distinguishability(l), 0.0);
}

TEST(Distinguish, QrngUnderPermutedIdenticalQubitsIsZero) {
  GeneratedDevice g;
  g.device = line_device(3);
  g.device.granularity = 16;
  for (int q = 0; q < 3; ++q) {
    g.library.set({Gate::X, {q}, {{Channel::drive(q), 0, PulseShape::drag(160, 0.2, 40, 0.5)}}, 0});
    g.library.set({Gate::SX, {q}, {{Channel::drive(q), 0, PulseShape::drag(160, 0.1, 40, 0.5)}}, 0});
  }
  Circuit qrng{1, {}};
  qrng.name = "qrng";
  append_hadamard(qrng, 0);
  qrng.add(GateApp::measure(0));
  const auto fam = layout_family(qrng, {{0}, {1}, {2}}, g.library, g.device);
  ASSERT_EQ(fam.size(), 3u);
  EXPECT_EQ(fam[1].id, "qrng@1");
  EXPECT_EQ(distinguishability(fam), 0.0);
}
