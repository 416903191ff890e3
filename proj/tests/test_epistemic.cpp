#include <gtest/gtest.h>

#include "frebels/abstraction.hpp"
#include "frebels/epistemic.hpp"
#include "oracles.hpp"

using namespace frebels;

namespace {

DiGraph star_into(int n, ProcessId center) {
  DiGraph g(n);
  for (ProcessId v = 0; v < n; ++v)
    if (v != center) g.add_edge(v, center);
  return g;
}

}  // namespace

TEST(HopeChains, FromDeliveries) {
  Trace t(TraceHeader{5, 1, Protocol::FR, {}, 0, 10});
  t.add({3, 0, RecordKind::Activate, -1, -1, {}, {}});
  t.add({3, 0, RecordKind::Deliver, 1, 2, "", {start_chain({4})}});
  EXPECT_TRUE(extract_hope_chains(t, 0, 2).empty());
  const auto chains = extract_hope_chains(t, 0, 3);
  ASSERT_EQ(chains.size(), 1u);
  EXPECT_EQ(chains.begin()->agents, (std::vector<ProcessId>{1, 4}));
  EXPECT_EQ(chains.begin()->proposition, kStartEvent);
}

TEST(HopeChains, DirectWitness) {
  Trace t(TraceHeader{4, 1, Protocol::Flood, {}, 0, 10});
  t.add({2, 3, RecordKind::EventStart, -1, -1, kStartEvent, {}});
  t.add({2, 3, RecordKind::EventEnd, -1, -1, kStartEvent, {}});
  EXPECT_EQ(extract_hope_chains(t, 3, 2), (std::set<HopeChain>{{{3}, kStartEvent}}));
  EXPECT_TRUE(extract_hope_chains(t, 3, 1).empty());
  EXPECT_THROW(extract_hope_chains(t, 4, 2), std::invalid_argument);
}

TEST(BeliefGain, Examples) {
  EXPECT_TRUE(belief_gain({{{1, 4}}, {{2}}}, 1));
  EXPECT_FALSE(belief_gain({{{1, 4}}, {{4, 2}}}, 1));
  EXPECT_FALSE(belief_gain({}, 0));
  EXPECT_TRUE(belief_gain({{{3}}}, 0));
  EXPECT_THROW(belief_gain({{{1}, "START"}, {{2}, "READY"}}, 1), std::invalid_argument);
}

TEST(Formula3, Examples) {
  auto k5 = flood_family(DiGraph::complete(5), 1);
  EXPECT_TRUE(eval_formula3(k5, 1, k5.horizon));
  auto c5 = flood_family(DiGraph::cycle(5), 1);
  EXPECT_FALSE(eval_formula3(c5, 1, c5.horizon));
  EXPECT_EQ(is_k_connected(DiGraph::cycle(5), 3), false);
}

TEST(Formula3, ZeroFaultsIsReachability) {
  for (const DiGraph& g : {DiGraph::cycle(4), DiGraph::complete(4)}) {
    auto fam = flood_family(g, 0);
    EXPECT_TRUE(eval_formula3(fam, 0, fam.horizon));
  }
  DiGraph split(4);
  split.add_edge(0, 1);
  split.add_edge(1, 0);
  auto fam = flood_family(split, 0);
  EXPECT_FALSE(eval_formula3(fam, 0, fam.horizon));
}

TEST(Formula6, Examples) {
  auto k5 = flood_family(DiGraph::complete(5), 1);
  EXPECT_TRUE(eval_formula6(k5, 1, k5.horizon));
  auto k4 = flood_family(DiGraph::complete(4), 1);
  EXPECT_FALSE(eval_formula6(k4, 1, k4.horizon));
  auto star = flood_family(star_into(5, 0), 1);
  EXPECT_FALSE(eval_formula6(star, 1, star.horizon));
}

TEST(Formula, ReportsListEveryInstance) {
  auto k5 = flood_family(DiGraph::complete(5), 1);
  FormulaReport r3 = formula3_report(k5);
  EXPECT_TRUE(r3.holds);
  EXPECT_EQ(r3.instances.size(), 10u * 2u);  // each 3-set T, each b outside T
  FormulaReport r6 = formula6_report(k5);
  EXPECT_EQ(r6.instances.size(), 5u);
  EXPECT_NE(r6.to_text().find("B={0}: pass"), std::string::npos);
}

TEST(Formula, TemporalOperators) {
  auto fam = flood_family(DiGraph::complete(3), 1);
  const ProcessSet all = {0, 1, 2};
  HopeFormula a = HopeFormula::atom(all, 0, {{0}, kStartEvent});
  EXPECT_TRUE(holds(HopeFormula::eventually(a), fam));
  auto timeline = evaluate(a, fam);
  ASSERT_EQ(timeline.size(), static_cast<std::size_t>(fam.horizon + 1));
  EXPECT_TRUE(timeline.back());
  HopeFormula never = HopeFormula::atom(all, 0, {{1, 0}, kStartEvent});  // through the holder itself
  EXPECT_FALSE(holds(HopeFormula::eventually(never), fam));
  EXPECT_TRUE(holds(HopeFormula::always(HopeFormula::implies(never, a)), fam));
  EXPECT_FALSE(to_string(HopeFormula::all({a, never})).empty());
}

TEST(Formula, RejectsForeignFamilies) {
  RunFamily fam = flood_family(DiGraph::complete(3), 1);
  fam.traces.erase(fam.traces.begin());
  EXPECT_THROW(eval_formula3(fam, 1, fam.horizon), std::invalid_argument);
  RunFamily k3 = flood_family(DiGraph::complete(3), 1);
  EXPECT_THROW(eval_formula3(k3, 0, k3.horizon), std::invalid_argument);
}

TEST(Formula, AgreesWithSolvabilityOnSmallGraphs) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 6; ++trial) {
    DiGraph g = oracle::random_graph(5, 0.8, rng);
    auto fam = flood_family(g, 1);
    EXPECT_EQ(eval_formula3(fam, 1, fam.horizon) && eval_formula6(fam, 1, fam.horizon), theorem4_holds(g, 1));
  }
}
