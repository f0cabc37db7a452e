#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "qmoat/moatfinder.hpp"

using namespace qmoat;

namespace {

struct Row {
  std::int64_t k2;
  RingElement farthest;
  double distance;
};

void expect_rows(const MoatSearchResult& res, const std::vector<Row>& rows) {
  ASSERT_TRUE(res.complete);
  ASSERT_EQ(res.records.size(), rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(res.records[k].k_squared, rows[k].k2);
    EXPECT_EQ(res.records[k].farthest_prime, rows[k].farthest) << "row " << k;
    EXPECT_NEAR(res.records[k].distance(), rows[k].distance, 1e-3);
    EXPECT_TRUE(res.records[k].validated);
  }
}

}  // namespace

TEST(FindMoats, GaussianFirstRows) {
  expect_rows(find_moats_up_to(QuadField(-1), 4, {64, 1 << 12}),
              {{1, {2, 1}, 2.236}, {2, {11, 4}, 11.705}, {4, {42, 17}, 45.310}});
}

TEST(FindMoats, SqrtMinusTwoThroughSqrt12) {
  expect_rows(find_moats_up_to(QuadField(-2), 12, {64, 1 << 12}),
              {{1, {1, 1}, 1.732}, {4, {3, 2}, 4.123}, {6, {13, 6}, 15.524}, {12, {25, 42}, 64.444}});
}

TEST(FindMoats, EisensteinAndMinusSeven) {
  expect_rows(find_moats_up_to(QuadField(-3), 3, {64, 1 << 12}), {{1, {5, 2}, 4.359}, {3, {52, 7}, 48.877}});
  expect_rows(find_moats_up_to(QuadField(-7), 2, {64, 1 << 12}), {{2, {1, 2}, 2.646}});
}

TEST(FindMoats, EmptyBelowTheFirstMoat) {
  const auto res = find_moats_up_to(QuadField(-7), 1, {64, 1 << 12});
  EXPECT_TRUE(res.records.empty());
  EXPECT_TRUE(res.complete);
}

TEST(FindMoats, RejectsBadOptions) {
  EXPECT_THROW(find_moats_up_to(QuadField(-1), 0), std::invalid_argument);
  EXPECT_THROW(find_moats_up_to(QuadField(-1), 2, {1, 64}), std::invalid_argument);
  EXPECT_THROW(find_moats_up_to(QuadField(-1), 2, {128, 64}), std::invalid_argument);
}

TEST(FindMoats, CeilingLeavesSearchIncomplete) {
  const auto res = find_moats_up_to(QuadField(-1), 10, {16, 64});
  EXPECT_FALSE(res.complete);
  EXPECT_EQ(res.boundary_used, 64);
}

TEST(ReachableFrontier, Examples) {
  const auto g = reachable_frontier(QuadField(-1), 10, 1024);
  EXPECT_EQ(g.farthest_prime, (RingElement{976, 311}));
  EXPECT_NEAR(g.distance(), 1024.352, 1e-3);
  const auto s = reachable_frontier(QuadField(-2), 18, 1024);
  EXPECT_EQ(s.farthest_prime, (RingElement{435, 391}));
  EXPECT_NEAR(s.distance(), 703.553, 1e-3);
  // tau and 1 + tau are one orbit, and no other prime lies within 1
  const auto t = reachable_frontier(QuadField(-7), 1, 64);
  EXPECT_EQ(t.farthest_prime, (RingElement{1, 1}));
  EXPECT_EQ(t.farthest_norm, 2);
  EXPECT_EQ(t.component_size, 1u);
}

TEST(ValidateMoat, Examples) {
  const Sector big(QuadField(-1), 100);
  MoatRecord r;
  r.k_squared = 1;
  r.rightmost_u = 4;  // 2 + i
  r.topmost_v = 2;
  EXPECT_TRUE(validate_moat(r, big));
  EXPECT_TRUE(r.validated);

  MoatRecord touching = r;
  touching.rightmost_u = 200;
  EXPECT_FALSE(validate_moat(touching, big));

  const Sector s7(QuadField(-7), 50);
  MoatRecord seven;
  seven.k_squared = 32;
  seven.rightmost_u = 2 * (50 - 5);
  seven.topmost_v = 1;
  EXPECT_FALSE(validate_moat(seven, s7));
  seven.rightmost_u = 2 * (50 - 6);
  EXPECT_TRUE(validate_moat(seven, s7));
  seven.topmost_v = 36;  // y = 18 sqrt 7 > 44
  EXPECT_FALSE(validate_moat(seven, s7));
}

TEST(StartPrime, MinimalNormThenCoordinates) {
  const auto g1 = build_moat_graph(Sector(QuadField(-1), 10), InertClassifier(QuadField(-1)));
  EXPECT_EQ(g1.nodes[g1.start].element, (RingElement{1, 1}));
  const auto g3 = build_moat_graph(Sector(QuadField(-3), 10), InertClassifier(QuadField(-3)));
  EXPECT_EQ(g3.nodes[g3.start].element, (RingElement{2, 1}));
  EXPECT_THROW(build_moat_graph(Sector(QuadField(-1), 0), InertClassifier(QuadField(-1))), std::invalid_argument);
}

TEST(EnumerateMoats, MatchesCompleteGraphOracle) {
  for (auto d : kUfdValues) {
    for (std::int64_t pad2 : {2, 8}) {
      const std::int64_t c = 30;
      const QuadField f(d);
      const Sector sector(f, c, pad2);
      const auto g = build_moat_graph(sector, InertClassifier(f));
      const auto tri = triangulate(g.primes.points);
      const auto lib = enumerate_moats(g, tri.edges);

      const auto pts = oracle::sector_primes(d, c, std::sqrt(static_cast<long double>(pad2)));
      std::set<RingElement> a(g.primes.elements.begin(), g.primes.elements.end());
      std::set<RingElement> b;
      for (const auto& p : pts) b.insert({p.a, p.b});
      ASSERT_EQ(a, b) << "prime sets differ for d=" << d;

      const auto ref = oracle::complete_graph_records(d, pts);
      ASSERT_EQ(lib.size(), ref.size()) << "d=" << d;
      for (std::size_t k = 0; k < ref.size(); ++k) {
        EXPECT_EQ(lib[k].k_squared, ref[k].k2);
        EXPECT_EQ(lib[k].farthest_prime, (RingElement{ref[k].farthest.a, ref[k].farthest.b}));
        EXPECT_EQ(lib[k].farthest_norm, ref[k].farthest_norm);
        EXPECT_EQ(lib[k].component_size, ref[k].orbits);
      }
    }
  }
}

TEST(EnumerateMoats, MonotoneAndConsistentWithFrontier) {
  for (auto d : {-1LL, -2LL, -3LL, -7LL, -11LL, -19LL}) {
    const QuadField f(d);
    const auto g = build_moat_graph(Sector(f, 200, 9), InertClassifier(f));
    const auto tri = triangulate(g.primes.points);
    const auto recs = enumerate_moats(g, tri.edges);
    for (std::size_t k = 1; k < recs.size(); ++k) {
      EXPECT_LT(recs[k - 1].k_squared, recs[k].k_squared);
      EXPECT_LE(recs[k - 1].farthest_norm, recs[k].farthest_norm);
      EXPECT_LT(recs[k - 1].component_size, recs[k].component_size);
    }
    for (const auto& r : recs) {
      const auto fr = frontier_at(g, tri.edges, r.k_squared);
      EXPECT_EQ(fr.farthest_prime, r.farthest_prime);
      EXPECT_EQ(fr.component_size, r.component_size);
    }
  }
}

TEST(EnumerateMoats, AgreesWithWholePlaneReachability) {
  // d = -1: the farthest norms behind the first four moats are 5, 137, 2053, 8737
  const auto plane = oracle::plane_frontiers(-1, 14000, {1, 2, 4, 8});
  const std::vector<std::int64_t> expect = {5, 137, 2053, 8737};
  for (std::size_t k = 0; k < plane.size(); ++k) {
    ASSERT_TRUE(plane[k].ok);
    EXPECT_EQ(plane[k].farthest_norm, expect[k]);
    const auto fr = reachable_frontier(QuadField(-1), plane[k].k2, 256);
    EXPECT_EQ(fr.farthest_prime, (RingElement{plane[k].farthest.a, plane[k].farthest.b}));
  }
  for (auto d : {-2LL, -3LL, -7LL, -11LL}) {
    const std::vector<std::int64_t> ks = {1, 2, 3, 4, 5};
    const auto res = oracle::plane_frontiers(d, 6000, ks);
    for (const auto& r : res) {
      if (!r.ok) continue;
      const auto fr = reachable_frontier(QuadField(d), r.k2, 128);
      EXPECT_EQ(fr.farthest_norm, r.farthest_norm) << "d=" << d << " k2=" << r.k2;
      EXPECT_EQ(fr.farthest_prime, (RingElement{r.farthest.a, r.farthest.b})) << "d=" << d << " k2=" << r.k2;
    }
  }
}

TEST(FindMoats, ValidatedRecordsSurviveDoubling) {
  for (auto d : {-1LL, -2LL, -3LL, -7LL, -11LL, -43LL}) {
    const QuadField f(d);
    const InertClassifier c(f);
    const auto small = search_moats_at(f, 8, 128, c);
    const auto large = search_moats_at(f, 8, 256, c);
    std::size_t checked = 0;
    for (const auto& r : small.records) {
      if (!r.validated) continue;
      const auto it = std::find_if(large.records.begin(), large.records.end(),
                                   [&](const MoatRecord& x) { return x.k_squared == r.k_squared; });
      ASSERT_NE(it, large.records.end()) << "d=" << d << " k2=" << r.k_squared;
      EXPECT_EQ(it->farthest_prime, r.farthest_prime);
      EXPECT_EQ(it->component_size, r.component_size);
      ++checked;
    }
    EXPECT_GT(checked, 0u) << d;
  }
}
