#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "shankslab/parallel.hpp"
#include "shankslab/summation.hpp"

using namespace shankslab;

TEST(CompensatedSum, RecoversCancelledLowBits) {
  CompensatedSum s;
  double naive = 1.0;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) {
    s.add(1e-16);
    naive += 1e-16;
  }
  s.add(-1.0);
  naive -= 1.0;
  EXPECT_EQ(naive, 0.0);
  EXPECT_NEAR(s.value(), 1e-13, 1e-25);
}

TEST(CompensatedSum, LargeThenSmall) {
  CompensatedSum s;
  s.add(1e100);
  s.add(1.0);
  s.add(-1e100);
  EXPECT_EQ(s.value(), 1.0);
}

TEST(OrderedSum, ThreadCountIndependent) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> terms(50'000);
  for (double& t : terms) t = dist(rng) * std::exp(40 * dist(rng));
  const double one = ordered_sum<double>(terms.size(), 1, [&](std::size_t i) { return terms[i]; });
  for (unsigned threads : {2u, 3u, 7u, 0u}) {
    const double many = ordered_sum<double>(terms.size(), threads, [&](std::size_t i) { return terms[i]; });
    EXPECT_EQ(one, many) << threads;
  }
}

TEST(OrderedSum, ComplexAndEmpty) {
  EXPECT_EQ(ordered_sum<std::complex<double>>(0, 2, [](std::size_t) { return std::complex<double>(1, 1); }),
            std::complex<double>(0, 0));
  const auto s = ordered_sum<std::complex<double>>(3000, 2, [](std::size_t i) {
    return std::complex<double>(static_cast<double>(i), -1.0);
  });
  EXPECT_EQ(s, std::complex<double>(3000.0 * 2999.0 / 2, -3000.0));
}

TEST(PairwiseCombine, FixedShape) {
  const std::vector<double> leaves = {1e16, 1.0, -1e16, 1.0, 3.0};
  // ((1e16 + 1) + (-1e16 + 1)) + 3 with round-to-even at each step.
  const double expected = ((1e16 + 1.0) + (-1e16 + 1.0)) + 3.0;
  EXPECT_EQ(pairwise_combine<double>(leaves), expected);
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(10'000);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i].fetch_add(1); });
  for (const auto& h : hits) ASSERT_EQ(h.load(), 1);
}

TEST(ParallelFor, RethrowsSmallestFailingIndex) {
  for (unsigned threads : {1u, 4u}) {
    try {
      parallel_for(1000, threads, [](std::size_t i) {
        if (i == 17 || i == 500) throw std::runtime_error(std::to_string(i));
      });
      FAIL() << "expected an exception";
    } catch (const std::runtime_error& e) {
      if (threads == 1) EXPECT_STREQ(e.what(), "17");
    }
  }
}

TEST(ParallelFor, ResolveThreads) {
  EXPECT_GE(resolve_threads(0), 1u);
  EXPECT_EQ(resolve_threads(5), 5u);
}
