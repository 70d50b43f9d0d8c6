#include <gtest/gtest.h>

#include <atomic>
#include <vector>

#include "tplab/parallel.hpp"

TEST(Parallel, VisitsEveryTaskOnce) {
  for (unsigned threads : {1u, 2u, 5u}) {
    std::vector<std::atomic<int>> hits(1000);
    tplab::parallel_for(hits.size(), threads, [&](std::size_t i) { ++hits[i]; });
    for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
  tplab::parallel_for(0, 4, [](std::size_t) { FAIL(); });
}

TEST(Parallel, ResolveThreads) {
  EXPECT_EQ(tplab::resolve_threads(3), 3u);
  EXPECT_GE(tplab::resolve_threads(0), 1u);
}

TEST(CompensatedSum, RecoversLostBits) {
  tplab::CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  s.add(-1.0);
  EXPECT_NEAR(s.value(), 1000 * 1e-16, 1e-25);
  tplab::CompensatedSum t;
  t.add(1e100);
  t.add(1.0);
  t.add(-1e100);
  EXPECT_DOUBLE_EQ(t.value(), 1.0);
}
