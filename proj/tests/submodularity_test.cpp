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

#include "wfalloc/submodularity.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "oracles.hpp"
#include "wfalloc/errors.hpp"

namespace wfalloc {
namespace {

SetFunctionOracle cardinality(std::size_t n) {
  return {n, [](Subset s) { return static_cast<double>(s.size()); }};
}

SetFunctionOracle squared_cardinality(std::size_t n) {
  return {n, [](Subset s) {
            const double k = static_cast<double>(s.size());
            return k * k;
          }};
}

SetFunctionOracle negated_cardinality(std::size_t n) {
  return {n, [](Subset s) { return -static_cast<double>(s.size()); }};
}

SetFunctionOracle capped_at_one(std::size_t n) {
  return {n, [](Subset s) { return s.size() == 0 ? 0.0 : 1.0; }};
}

SetFunctionOracle rate_oracle(std::vector<double> noises, double budget) {
  return waterfill_rate_oracle(NoiseProfile(noises, budget));
}

TEST(Subset, BasicOperations) {
  const Subset s = Subset::of({0, 2, 5});
  EXPECT_EQ(s.bits(), 0b100101u);
  EXPECT_EQ(s.size(), 3u);
  EXPECT_TRUE(s.contains(2));
  EXPECT_FALSE(s.contains(1));
  EXPECT_EQ(to_string(s), "{0;2;5}");
  EXPECT_EQ(to_string(Subset{}), "{}");
  EXPECT_TRUE(Subset::of({2}).is_subset_of(s));
  EXPECT_EQ((s & Subset::of({2, 3})), Subset::of({2}));
}

TEST(PairwiseCheck, ModularFunctionHasNoViolations) {
  EXPECT_TRUE(check_submodular_pairwise(cardinality(4), 0.0).empty());
}

TEST(PairwiseCheck, SquaredCardinalityViolatesAtEmptyBase) {
  const auto v = check_submodular_pairwise(squared_cardinality(3), 1e-9);
  ASSERT_FALSE(v.empty());
  const auto& first = v.front();
  EXPECT_EQ(first.base_set, Subset{});
  EXPECT_EQ(first.elem_i, 0u);
  EXPECT_EQ(first.elem_j, 1u);
  EXPECT_EQ(first.lhs, 2.0);
  EXPECT_EQ(first.rhs, 4.0);
  EXPECT_EQ(first.gap, 2.0);
  for (const auto& x : v) {
    EXPECT_GT(x.gap, 1e-9);
    EXPECT_NE(x.elem_i, x.elem_j);
    EXPECT_FALSE(x.base_set.contains(x.elem_i));
    EXPECT_FALSE(x.base_set.contains(x.elem_j));
  }
}

TEST(PairwiseCheck, WaterfillRateIsSubmodular) {
  EXPECT_TRUE(
      check_submodular_pairwise(rate_oracle({1, 2, 4, 8}, 1.0), 1e-9).empty());
}

TEST(PairwiseCheck, EnforcesCap) {
  EXPECT_THROW(check_submodular_pairwise(cardinality(13), 0.0), InstanceTooLarge);
  EXPECT_NO_THROW(check_submodular_pairwise(cardinality(12), 0.0));
  EXPECT_THROW(check_submodular_pairwise(cardinality(3), -1.0),
               std::invalid_argument);
}

TEST(PairwiseCheck, MaxGapIsTightForModular) {
  EXPECT_EQ(max_pairwise_gap(cardinality(4)), 0.0);
  EXPECT_EQ(max_pairwise_gap(squared_cardinality(3)), 2.0);
  EXPECT_LE(max_pairwise_gap(rate_oracle({0.3, 1.0, 2.5}, 2.0)), 1e-12);
}

TEST(SetPairCheck, Examples) {
  EXPECT_TRUE(check_setpair_submodular(cardinality(3), 0.0).empty());
  EXPECT_TRUE(check_setpair_submodular(capped_at_one(3), 0.0).empty());
  EXPECT_TRUE(
      check_setpair_submodular(rate_oracle({0.5, 1, 2}, 2.0), 1e-9).empty());
  EXPECT_FALSE(check_setpair_submodular(squared_cardinality(3), 1e-9).empty());
  EXPECT_THROW(check_setpair_submodular(cardinality(9), 0.0), InstanceTooLarge);
}

TEST(MonotoneCheck, Examples) {
  EXPECT_TRUE(check_monotone(cardinality(4), 0.0).empty());
  const auto v = check_monotone(negated_cardinality(3), 0.0);
  EXPECT_FALSE(v.empty());
  for (const auto& x : v) {
    EXPECT_TRUE(x.smaller.is_subset_of(x.larger));
    EXPECT_NE(x.smaller, x.larger);
    EXPECT_GT(x.gap, 0.0);
  }
  // Every strict inclusion of a 3-set: 3^3 - 2^3 = 19 pairs.
  EXPECT_EQ(v.size(), 19u);
  EXPECT_THROW(check_monotone(cardinality(9), 0.0), InstanceTooLarge);
}

TEST(MonotoneCheck, WaterfillRateIsMonotone) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    EXPECT_TRUE(check_monotone(waterfill_rate_oracle(NoiseProfile(
                                   testing::random_noises(rng, n),
                                   testing::random_budget(rng))),
                               1e-9)
                    .empty());
  }
}

TEST(Definitions, PairwiseAndSetPairFormsAgree) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    SetFunctionOracle f;
    switch (trial % 4) {
      case 0:
        f = waterfill_rate_oracle(NoiseProfile(testing::random_noises(rng, n),
                                               testing::random_budget(rng)));
        break;
      case 1:
        f = squared_cardinality(n);
        break;
      case 2: {
        // Random table: submodular only by accident.
        std::vector<double> table(std::size_t{1} << n);
        for (double& v : table) v = testing::uniform(rng, 0.0, 1.0);
        f = {n, [table](Subset s) { return table[s.bits()]; }};
        break;
      }
      default: {
        // Concave of cardinality: submodular.
        f = {n, [](Subset s) { return std::sqrt(static_cast<double>(s.size())); }};
        break;
      }
    }
    EXPECT_EQ(check_submodular_pairwise(f, 1e-9).empty(),
              check_setpair_submodular(f, 1e-9).empty())
        << "trial " << trial;
  }
}

TEST(ViolationCsv, Format) {
  std::ostringstream out;
  const SubmodularityViolation v{Subset::of({1, 3}), 0, 2, 1.5, 2.25, 0.75};
  write_violations_csv(out, std::vector<SubmodularityViolation>{v});
  EXPECT_EQ(out.str(), "base_set,i,j,lhs,rhs,gap\n{1;3},0,2,1.5,2.25,0.75\n");
}

TEST(IdSets, DisjointUnionRejectsOverlap) {
  const IdSet a{1, 4};
  const IdSet b{2};
  const IdSet c{4, 9};
  EXPECT_EQ(disjoint_union({&a, &b}), (IdSet{1, 2, 4}));
  EXPECT_THROW(disjoint_union({&a, &b, &c}), std::invalid_argument);
  EXPECT_EQ(set_difference(IdSet{1, 2, 3}, IdSet{2}), (IdSet{1, 3}));
  EXPECT_TRUE(includes(IdSet{1, 2, 3}, IdSet{1, 3}));
  EXPECT_FALSE(includes(IdSet{1, 2}, IdSet{4}));
}

// ---- lemma witness --------------------------------------------------------

TEST(LemmaWitness, RejectsBrokenPreconditions) {
  const NoiseProfile p(std::vector<double>{1, 1, 1}, 3.0);
  const std::vector<ChannelId> base{0, 1};
  EXPECT_THROW(lemma_witness(p, base, 2, 2), std::invalid_argument);
  EXPECT_THROW(lemma_witness(p, base, 1, 2), std::invalid_argument);
  EXPECT_THROW(lemma_witness(p, base, 2, 7), std::invalid_argument);
  EXPECT_THROW(lemma_witness(p.with_budget(0.0), std::vector<ChannelId>{0}, 1, 2),
               std::invalid_argument);
  EXPECT_THROW(lemma_witness(p, std::vector<ChannelId>{0, 0}, 1, 2),
               std::invalid_argument);
}

// S = {N=1, N=2}, i: N=0.5, j: N=0.6, P = 1. Levels by hand (and by the
// bisection oracle below): nu = 2, nu_i = 1.25, nu_j = 1.3, nu_ij = 31/30.
TEST(LemmaWitness, MainCaseWithEmptyHatSets) {
  const NoiseProfile p({{0, 1.0}, {1, 2.0}, {2, 0.5}, {3, 0.6}}, 1.0);
  const auto w = lemma_witness(p, std::vector<ChannelId>{0, 1}, 2, 3);

  using testing::bisection_water_level;
  EXPECT_EQ(w.kind, WitnessCase::kMain);
  EXPECT_FALSE(w.labels_swapped);
  EXPECT_NEAR(*w.nu, bisection_water_level({1.0, 2.0}, 1.0), 1e-12);
  EXPECT_NEAR(w.nu_i, bisection_water_level({1.0, 2.0, 0.5}, 1.0), 1e-12);
  EXPECT_NEAR(w.nu_j, bisection_water_level({1.0, 2.0, 0.6}, 1.0), 1e-12);
  EXPECT_NEAR(w.nu_ij, bisection_water_level({1.0, 2.0, 0.5, 0.6}, 1.0), 1e-12);
  EXPECT_NEAR(*w.nu, 2.0, 1e-15);
  EXPECT_NEAR(w.nu_i, 1.25, 1e-15);
  EXPECT_NEAR(w.nu_j, 1.3, 1e-15);
  EXPECT_NEAR(w.nu_ij, 31.0 / 30.0, 1e-15);

  EXPECT_EQ(w.t, (IdSet{0}));
  EXPECT_EQ(w.t_i, (IdSet{0, 2}));
  EXPECT_EQ(w.t_j, (IdSet{0, 3}));
  EXPECT_EQ(w.t_ij, (IdSet{0, 2, 3}));
  EXPECT_TRUE(w.t_hat_i.empty());
  EXPECT_TRUE(w.t_hat.empty());

  // 2 * 1.25 + 2 * 1.3 = 1 * 2 + 3 * 31/30 = 5.1
  EXPECT_NEAR(w.sum_lhs, 5.1, 1e-12);
  EXPECT_NEAR(w.sum_rhs, 5.1, 1e-12);
  // 1.25^2 1.3^2 = 2.640625 >= 2 (31/30)^3
  EXPECT_NEAR(std::exp(w.log_product_lhs), 2.640625, 1e-12);
  EXPECT_NEAR(std::exp(w.log_product_rhs), 2.0 * std::pow(31.0 / 30.0, 3), 1e-12);
  EXPECT_TRUE(w.all_hold());

  const auto mv = build_majorization_vectors(w);
  const double nu_ij = w.nu_ij;
  EXPECT_EQ(mv.a, (std::vector<double>{2.0, nu_ij, nu_ij, nu_ij}));
  EXPECT_EQ(mv.b, (std::vector<double>{w.nu_j, w.nu_j, w.nu_i, w.nu_i}));
  EXPECT_EQ(mv.split, 3u);
  EXPECT_TRUE(mv.interlaced);
  EXPECT_TRUE(majorizes(mv.a, mv.b));
}

TEST(LemmaWitness, SwapsLabelsToOrderLevels) {
  const NoiseProfile p({{0, 1.0}, {1, 2.0}, {2, 0.5}, {3, 0.6}}, 1.0);
  const auto w = lemma_witness(p, std::vector<ChannelId>{0, 1}, 3, 2);
  EXPECT_TRUE(w.labels_swapped);
  EXPECT_EQ(w.i, 2u);
  EXPECT_EQ(w.j, 3u);
  EXPECT_LE(w.nu_i, w.nu_j);
  EXPECT_TRUE(w.all_hold());
}

TEST(LemmaWitness, HugeNoiseChannelIsTheEasyCase) {
  const NoiseProfile p({{0, 1.0}, {1, 1.5}, {2, 1e6}, {3, 0.8}}, 1.0);
  const std::vector<ChannelId> base{0, 1};
  const auto w = lemma_witness(p, base, 2, 3);
  EXPECT_EQ(w.kind, WitnessCase::kIInactive);
  EXPECT_EQ(w.i, 2u);
  EXPECT_EQ(w.rate_ij, w.rate_j);
  EXPECT_EQ(w.rate_ij, rate_of_subset(p, std::vector<ChannelId>{0, 1, 3}));
  EXPECT_TRUE(w.all_hold());
  EXPECT_THROW(build_majorization_vectors(w), std::invalid_argument);

  const auto mirrored = lemma_witness(p, base, 3, 2);
  EXPECT_EQ(mirrored.kind, WitnessCase::kJInactive);
  EXPECT_EQ(mirrored.rate_ij, mirrored.rate_i);
}

TEST(LemmaWitness, EmptyBaseIsSubadditivity) {
  const NoiseProfile p(std::vector<double>{1.0, 1.2}, 2.0);
  const auto w = lemma_witness(p, std::vector<ChannelId>{}, 0, 1);
  EXPECT_EQ(w.kind, WitnessCase::kEmptyBase);
  EXPECT_FALSE(w.nu.has_value());
  EXPECT_EQ(w.rate, 0.0);
  EXPECT_TRUE(w.pairwise_condition);
  EXPECT_TRUE(w.all_hold());
  EXPECT_THROW(build_majorization_vectors(w), std::invalid_argument);
}

TEST(LemmaWitness, RandomMainCasesSatisfyEveryRelation) {
  std::mt19937_64 rng(99);
  int main_cases = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const std::size_t n = 3 + rng() % 6;
    const NoiseProfile p(testing::random_noises(rng, n),
                         testing::random_budget(rng));
    std::vector<ChannelId> ids(n);
    std::iota(ids.begin(), ids.end(), ChannelId{0});
    std::shuffle(ids.begin(), ids.end(), rng);
    const std::size_t base_size = 1 + rng() % (n - 2);
    const std::vector<ChannelId> base(ids.begin(), ids.begin() + base_size);
    const auto w = lemma_witness(p, base, ids[base_size], ids[base_size + 1]);
    EXPECT_TRUE(w.all_hold()) << "trial " << trial;
    if (w.kind != WitnessCase::kMain) continue;
    ++main_cases;
    const auto mv = build_majorization_vectors(w);
    ASSERT_EQ(mv.a.size(), mv.b.size());
    EXPECT_TRUE(mv.interlaced);
    EXPECT_TRUE(majorizes(mv.a, mv.b));
    // -log is convex and decreasing, so Karamata gives the product bound.
    const auto neg_log = [](double x) { return -std::log(x); };
    EXPECT_EQ(karamata_holds(mv.a, mv.b, neg_log), product_dominates(mv.b, mv.a));
    EXPECT_TRUE(product_dominates(mv.b, mv.a));
  }
  EXPECT_GT(main_cases, 100);
}

// ---- majorization and Karamata -------------------------------------------

TEST(Majorization, Examples) {
  EXPECT_TRUE(majorizes(std::vector<double>{3, 1}, std::vector<double>{2, 2}));
  EXPECT_FALSE(majorizes(std::vector<double>{2, 2}, std::vector<double>{3, 1}));
  const std::vector<double> x{0.3, 7.0, 2.5, 2.5};
  EXPECT_TRUE(majorizes(x, x));
  // Unsorted input is sorted internally.
  EXPECT_TRUE(majorizes(std::vector<double>{1, 3}, std::vector<double>{2, 2}));
  // Unequal sums never majorize.
  EXPECT_FALSE(majorizes(std::vector<double>{3, 2}, std::vector<double>{2, 2}));
  EXPECT_THROW(majorizes(std::vector<double>{1}, std::vector<double>{1, 0}),
               std::invalid_argument);
}

TEST(Karamata, Examples) {
  const auto square = [](double x) { return x * x; };
  EXPECT_TRUE(karamata_holds(std::vector<double>{3, 1}, std::vector<double>{2, 2},
                             square));
  EXPECT_FALSE(karamata_holds(std::vector<double>{2, 2},
                              std::vector<double>{3, 1}, square));
  const std::vector<double> x{0.5, 4.0, 1.25};
  const auto neg_log = [](double v) { return -std::log(v); };
  EXPECT_TRUE(karamata_holds(x, x, neg_log));
  EXPECT_TRUE(karamata_holds(x, x, square));
  EXPECT_THROW(karamata_holds(x, std::vector<double>{1.0}, square),
               std::invalid_argument);
}

TEST(Karamata, HoldsOnRandomMajorizedPairs) {
  // b = a pushed toward its mean is majorized by a (a Robin Hood transfer).
  std::mt19937_64 rng(5);
  const auto neg_log = [](double v) { return -std::log(v); };
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(2 + rng() % 6);
    for (double& v : a) v = testing::uniform(rng, 0.1, 10.0);
    const double mean = std::accumulate(a.begin(), a.end(), 0.0) / a.size();
    const double t = testing::uniform(rng, 0.0, 1.0);
    std::vector<double> b(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) b[k] = (1 - t) * a[k] + t * mean;
    ASSERT_TRUE(majorizes(a, b));
    EXPECT_TRUE(karamata_holds(a, b, neg_log));
    EXPECT_TRUE(product_dominates(b, a));
  }
}

}  // namespace
}  // namespace wfalloc
