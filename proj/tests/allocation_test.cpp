// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wfalloc/allocation.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "wfalloc/errors.hpp"
#include "wfalloc/submodularity.hpp"
#include "wfalloc/waterfill.hpp"

namespace wfalloc {
namespace {

const double kLog11 = std::log(11.0);
const double kLog6 = std::log(6.0);

std::vector<BasestationId> owners_of(const Allocation& a) {
  return {a.owners().begin(), a.owners().end()};
}

TEST(WeightMatrix, Validation) {
  EXPECT_THROW(WeightMatrix(1, 0, {}), std::invalid_argument);
  EXPECT_THROW(WeightMatrix(1, 2, {1.0}), std::invalid_argument);
  EXPECT_THROW(WeightMatrix(1, 2, {1.0, -1.0}), std::invalid_argument);
  EXPECT_THROW(WeightMatrix(1, 1, {std::numeric_limits<double>::infinity()}),
               std::invalid_argument);
  EXPECT_THROW(WeightMatrix({{1.0, 2.0}, {1.0}}), std::invalid_argument);
  const WeightMatrix w({{1.0, 2.0}, {3.0, 0.5}});
  EXPECT_EQ(w.users(), 2u);
  EXPECT_EQ(w.basestations(), 2u);
  EXPECT_EQ(w.at(1, 0), 3.0);
  EXPECT_EQ(w.max_entry(), 3.0);
}

TEST(Allocation, PartitionBookkeeping) {
  Allocation a(3);
  EXPECT_TRUE(a.is_partition());
  EXPECT_EQ(a.assign(2), 0u);
  EXPECT_EQ(a.assign(0), 1u);
  EXPECT_EQ(a.assign(2), 2u);
  EXPECT_EQ(a.owner(2), 2u);
  EXPECT_EQ(std::vector<UserId>(a.part(2).begin(), a.part(2).end()),
            (std::vector<UserId>{0, 2}));
  EXPECT_TRUE(a.part(1).empty());
  EXPECT_TRUE(a.is_partition());
  EXPECT_THROW(a.assign(3), std::invalid_argument);
  const std::vector<BasestationId> bad{0, 5};
  EXPECT_THROW(Allocation(2, bad), std::invalid_argument);
}

TEST(OnlineGreedy, SplitsComplementaryUsers) {
  const WeightMatrix w({{10, 1}, {1, 10}});
  const auto a = online_greedy(w);
  EXPECT_EQ(owners_of(a), (std::vector<BasestationId>{0, 1}));
  EXPECT_NEAR(system_utility(a, w), 2 * kLog11, 1e-12);
  EXPECT_NEAR(system_utility(a, w), testing::enumerate_offline_optimum(w), 1e-12);
}

TEST(OnlineGreedy, SharesTheStrongBasestation) {
  const WeightMatrix w({{10, 1}, {10, 1}});
  const auto a = online_greedy(w);
  EXPECT_EQ(owners_of(a), (std::vector<BasestationId>{0, 0}));
  EXPECT_NEAR(system_utility(a, w), 2 * kLog6, 1e-12);
  // Marginal at BS1: 2 log 6 - log 11 beats log 2 at BS2.
  EXPECT_NEAR(2 * kLog6 - kLog11, 1.1856236656577392, 1e-15);
  EXPECT_GT(2 * kLog6 - kLog11, std::log(2.0));
  EXPECT_NEAR(system_utility(a, w), testing::enumerate_offline_optimum(w), 1e-12);
}

TEST(OnlineGreedy, TiesGoToLowestIndex) {
  OnlineGreedy g(3, GreedyMode::kMarginalGain);
  EXPECT_EQ(g.arrive(std::vector<double>{5, 5, 5}), 0u);
  OnlineGreedy abs(3, GreedyMode::kAbsoluteValue);
  EXPECT_EQ(abs.arrive(std::vector<double>{5, 5, 5}), 0u);
  // A zero-SNR user gains nothing anywhere.
  EXPECT_EQ(g.arrive(std::vector<double>{0, 0, 0}), 0u);
}

TEST(OnlineGreedy, RejectsWrongWidth) {
  OnlineGreedy g(2, GreedyMode::kMarginalGain);
  EXPECT_THROW(g.arrive(std::vector<double>{1, 2, 3}), std::invalid_argument);
  EXPECT_THROW(g.arrive(std::vector<double>{-1, 2}), std::invalid_argument);
}

TEST(OnlineGreedy, AbsoluteModeCanDifferFromMarginal) {
  // BS1 already holds a strong user; absolute value keeps piling onto it.
  const WeightMatrix w({{10, 0}, {1, 1}});
  EXPECT_EQ(owners_of(online_greedy(w, GreedyMode::kAbsoluteValue)),
            (std::vector<BasestationId>{0, 0}));
  EXPECT_EQ(owners_of(online_greedy(w, GreedyMode::kMarginalGain)),
            (std::vector<BasestationId>{0, 1}));
}

TEST(OnlineGreedy, PartitionHoldsAfterEveryArrival) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 1 + rng() % 4;
    OnlineGreedy g(m, trial % 2 ? GreedyMode::kAbsoluteValue
                                : GreedyMode::kMarginalGain);
    const auto w = testing::random_weights(rng, 1 + rng() % 10, m);
    for (UserId u = 0; u < w.users(); ++u) {
      g.arrive(w.row(u));
      ASSERT_TRUE(g.allocation().is_partition());
      ASSERT_EQ(g.allocation().users(), u + 1);
    }
  }
}

TEST(OnlineGreedy, UtilityTracksSystemUtility) {
  std::mt19937_64 rng(4);
  const auto w = testing::random_weights(rng, 12, 3);
  OnlineGreedy g(3, GreedyMode::kMarginalGain);
  for (UserId u = 0; u < w.users(); ++u) g.arrive(w.row(u));
  EXPECT_NEAR(g.utility(), system_utility(g.allocation(), w), 1e-12);
}

TEST(MaxWeight, Examples) {
  EXPECT_EQ(owners_of(max_weight(WeightMatrix({{10, 1}, {1, 10}}))),
            (std::vector<BasestationId>{0, 1}));
  EXPECT_EQ(owners_of(max_weight(WeightMatrix({{3, 3}}))),
            (std::vector<BasestationId>{0}));
  EXPECT_EQ(owners_of(max_weight(WeightMatrix({{1, 2}, {1, 2}, {1, 2}}))),
            (std::vector<BasestationId>{1, 1, 1}));
}

TEST(SystemUtility, Examples) {
  const WeightMatrix none(0, 2, {});
  EXPECT_EQ(system_utility(Allocation(2), none), 0.0);
  const WeightMatrix one({{10, 3}});
  EXPECT_NEAR(system_utility(Allocation(2, std::vector<BasestationId>{0}), one),
              kLog11, 1e-12);
  const WeightMatrix two({{10, 0}, {10, 0}});
  EXPECT_NEAR(
      system_utility(Allocation(2, std::vector<BasestationId>{0, 0}), two),
      2 * kLog6, 1e-12);
  EXPECT_NEAR(2 * kLog6, testing::exchange_log_utility({10, 10}), 1e-9);
}

TEST(SystemUtility, RejectsMismatchedAllocation) {
  const WeightMatrix w({{1, 2}, {3, 4}});
  EXPECT_THROW(system_utility(Allocation(2, std::vector<BasestationId>{0}), w),
               std::invalid_argument);
  EXPECT_THROW(
      system_utility(Allocation(3, std::vector<BasestationId>{0, 2}), w),
      std::invalid_argument);
}

TEST(OfflineBruteforce, Examples) {
  const WeightMatrix w({{10, 1}, {1, 10}});
  const auto opt = offline_bruteforce(w);
  EXPECT_NEAR(opt.value, 2 * kLog11, 1e-12);
  EXPECT_EQ(owners_of(opt.allocation), (std::vector<BasestationId>{0, 1}));

  const WeightMatrix single({{2, 7, 7}});
  const auto s = offline_bruteforce(single);
  EXPECT_NEAR(s.value, std::log(8.0), 1e-12);
  EXPECT_EQ(owners_of(s.allocation), (std::vector<BasestationId>{1}));

  const WeightMatrix one_bs(3, 1, {1, 2, 3});
  EXPECT_NEAR(offline_bruteforce(one_bs).value,
              log_utility(std::vector<double>{1, 2, 3}), 1e-12);
}

TEST(OfflineBruteforce, MatchesEnumerationOracle) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const auto w =
        testing::random_weights(rng, 1 + rng() % 6, 1 + rng() % 3);
    const auto opt = offline_bruteforce(w);
    EXPECT_NEAR(opt.value, testing::enumerate_offline_optimum(w), 1e-9);
    EXPECT_NEAR(opt.value, system_utility(opt.allocation, w), 1e-12);
  }
}

TEST(OfflineBruteforce, RejectsLargeInstances) {
  EXPECT_TRUE(bruteforce_feasible(6, 10));    // 10^6
  EXPECT_FALSE(bruteforce_feasible(7, 10));   // 10^7
  EXPECT_TRUE(bruteforce_feasible(1000, 1));
  const WeightMatrix big(7, 10, std::vector<double>(70, 1.0));
  EXPECT_THROW(offline_bruteforce(big), InstanceTooLarge);
}

TEST(OfflineUpperBound, Examples) {
  EXPECT_NEAR(offline_upper_bound(WeightMatrix({{10, 1}, {1, 10}})),
              2 * kLog11, 1e-12);
  EXPECT_NEAR(offline_upper_bound(WeightMatrix({{10, 1}, {1, 2}, {0, 3}})),
              2 * kLog6 + kLog11, 1e-12);
  EXPECT_NEAR(2 * kLog6 + kLog11, 5.981414211254481, 1e-12);
  EXPECT_NEAR(offline_upper_bound(WeightMatrix({{4, 0, 0}, {0, 1, 0}, {0, 0, 2}})),
              3 * std::log(5.0), 1e-12);
  EXPECT_EQ(offline_upper_bound(WeightMatrix({{0, 0}, {0, 0}})), 0.0);
}

TEST(CompetitiveRatio, Examples) {
  const WeightMatrix w({{10, 1}, {1, 10}});
  const auto r = competitive_ratio(w, Strategy::kGreedy,
                                   ReferenceKind::kBruteForceOptimum);
  EXPECT_NEAR(r.ratio, 1.0, 1e-12);
  EXPECT_NEAR(r.online_utility, 2 * kLog11, 1e-12);
  EXPECT_EQ(r.reference_kind, ReferenceKind::kBruteForceOptimum);

  const WeightMatrix zero({{0, 0}, {0, 0}});
  EXPECT_EQ(competitive_ratio(zero, Strategy::kGreedy,
                              ReferenceKind::kAnalyticUpperBound)
                .ratio,
            1.0);
  EXPECT_EQ(ratio_of(0.0, 0.0), 1.0);
  EXPECT_EQ(ratio_of(1.0, 0.0), std::numeric_limits<double>::infinity());
  EXPECT_EQ(ratio_of(3.0, 2.0), 1.5);
}

TEST(CompetitiveRatio, GreedyIsTwoCompetitiveAtDeskScale) {
  std::mt19937_64 rng(2026);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto w =
        testing::random_weights(rng, 1 + rng() % 8, 1 + rng() % 3);
    const double opt = testing::enumerate_offline_optimum(w);
    const double online = system_utility(online_greedy(w), w);
    const double ratio = ratio_of(opt, online);
    EXPECT_LE(ratio, 2.0 + 1e-9);
    EXPECT_GE(ratio, 1.0 - 1e-9);
    worst = std::max(worst, ratio);
  }
  EXPECT_LT(worst, 2.0);
}

TEST(CompetitiveRatio, UpperBoundDominatesOptimum) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto w =
        testing::random_weights(rng, 1 + rng() % 7, 1 + rng() % 3);
    EXPECT_GE(offline_upper_bound(w), offline_bruteforce(w).value - 1e-9);
  }
}

TEST(CompetitiveRatio, StrategiesAreDeterministic) {
  std::mt19937_64 rng(13);
  const auto w = testing::random_weights(rng, 20, 4);
  for (const auto s :
       {Strategy::kGreedy, Strategy::kGreedyAbsolute, Strategy::kMaxWeight}) {
    EXPECT_EQ(owners_of(run_strategy(w, s)), owners_of(run_strategy(w, s)));
  }
}

// Greedy recomputed with every rate scaled by c (c = 1/ln 2 is log base 2).
std::vector<BasestationId> scaled_greedy(const WeightMatrix& w, double c) {
  const std::size_t m = w.basestations();
  std::vector<std::vector<double>> served(m);
  std::vector<BasestationId> owners;
  for (UserId u = 0; u < w.users(); ++u) {
    BasestationId best = 0;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (BasestationId j = 0; j < m; ++j) {
      auto with = served[j];
      with.push_back(w.at(u, j));
      const double gain = c * (log_utility(with) - log_utility(served[j]));
      if (gain > best_gain) {
        best_gain = gain;
        best = j;
      }
    }
    served[best].push_back(w.at(u, best));
    owners.push_back(best);
  }
  return owners;
}

TEST(CompetitiveRatio, ChoicesDoNotDependOnLogBase) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    const auto w = testing::random_weights(rng, 1 + rng() % 12, 1 + rng() % 4);
    const auto natural = owners_of(online_greedy(w));
    EXPECT_EQ(natural, scaled_greedy(w, 1.0));
    EXPECT_EQ(natural, scaled_greedy(w, 1.0 / std::log(2.0)));
    EXPECT_EQ(natural, scaled_greedy(w, 1.0 / std::log(10.0)));
  }
}

TEST(CompetitiveRatio, AdversarialRowOrders) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 6;
    const std::size_t m = 1 + rng() % 3;
    const auto w = testing::random_weights(rng, n, m);
    const double opt = offline_bruteforce(w).value;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (int perm = 0; perm < 5; ++perm) {
      std::shuffle(order.begin(), order.end(), rng);
      std::vector<std::vector<double>> rows;
      for (std::size_t k : order) rows.emplace_back(w.row(k).begin(), w.row(k).end());
      const WeightMatrix permuted(rows);
      EXPECT_NEAR(offline_bruteforce(permuted).value, opt, 1e-9);
      EXPECT_LE(ratio_of(opt, system_utility(online_greedy(permuted), permuted)),
                2.0 + 1e-9);
    }
  }
}

TEST(LogUtility, SatisfiesGreedyHypotheses) {
  // L(M_j) as a set function of the users at one basestation.
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    std::vector<double> snrs(n);
    for (double& s : snrs) s = testing::uniform(rng, 0.0, 10.0);
    const SetFunctionOracle l{n, [snrs](Subset s) {
                                std::vector<double> chosen;
                                for (std::size_t k : s.elements()) {
                                  chosen.push_back(snrs[k]);
                                }
                                return log_utility(chosen);
                              }};
    EXPECT_GE(l.evaluate(Subset{}), 0.0);
    EXPECT_TRUE(check_monotone(l, 1e-9).empty());
    EXPECT_TRUE(check_submodular_pairwise(l, 1e-9).empty());
  }
}

TEST(Names, RoundTrip) {
  for (const auto s :
       {Strategy::kGreedy, Strategy::kGreedyAbsolute, Strategy::kMaxWeight}) {
    EXPECT_EQ(parse_strategy(to_string(s)), s);
  }
  for (const auto r :
       {ReferenceKind::kBruteForceOptimum, ReferenceKind::kAnalyticUpperBound}) {
    EXPECT_EQ(parse_reference(to_string(r)), r);
  }
  EXPECT_EQ(to_string(Strategy::kGreedyAbsolute), "greedy-absolute");
  EXPECT_EQ(to_string(ReferenceKind::kAnalyticUpperBound), "analytic-upper");
  EXPECT_FALSE(parse_strategy("random"));
  EXPECT_FALSE(parse_reference("exact"));
}

}  // namespace
}  // namespace wfalloc
