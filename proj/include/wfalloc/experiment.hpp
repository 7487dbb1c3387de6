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

// Batch competitive-ratio experiments over generated or replayed instances.

#ifndef WFALLOC_EXPERIMENT_HPP_
#define WFALLOC_EXPERIMENT_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wfalloc/allocation.hpp"
#include "wfalloc/snr_profiles.hpp"

namespace wfalloc {

inline constexpr std::string_view kRecordCsvHeader =
    "trial,n,m,profile,strategy,utility,offline_bound,reference_kind,ratio,seed";

struct ExperimentRecord {
  std::size_t trial = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::string profile;
  Strategy strategy = Strategy::kGreedy;
  double utility = 0.0;
  double offline_bound = 0.0;
  ReferenceKind reference_kind = ReferenceKind::kAnalyticUpperBound;
  double ratio = 1.0;
  // Seed of the trial's matrix, i.e. the base seed XOR the trial index.
  std::uint64_t seed = 0;
};

struct ExperimentConfig {
  ProfileKind profile = ProfileKind::kIidTen;
  std::size_t users = 10;
  std::size_t basestations = 10;
  std::size_t trials = 1;
  std::vector<Strategy> strategies = {Strategy::kGreedy};
  ReferenceKind reference = ReferenceKind::kAnalyticUpperBound;
  std::uint64_t seed = 1;
  // When set every trial runs on this matrix and profile is reported as
  // "replay"; users and basestations are taken from it.
  std::optional<WeightMatrix> fixed_instance;
};

// Trial t generates its matrix from seed ^ t and runs every strategy on it.
// Records come out in (trial, strategy) order. Throws InstanceTooLarge up
// front when a brute-force reference cannot be computed.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config);

struct SummaryRow {
  std::string profile;
  Strategy strategy = Strategy::kGreedy;
  std::size_t n = 0;
  std::size_t trials = 0;
  double mean_ratio = 0.0;
  double max_ratio = 0.0;
  double mean_utility = 0.0;
};

// Groups by (profile, strategy, n), sorted on that key. Throws
// std::invalid_argument on empty input.
std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records);

// Header kRecordCsvHeader, reals with 12 significant digits, '\n' endings.
void write_records_csv(std::ostream& out,
                       const std::vector<ExperimentRecord>& records);
void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows);

}  // namespace wfalloc

#endif  // WFALLOC_EXPERIMENT_HPP_
