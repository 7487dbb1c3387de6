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

#include "wfalloc/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "wfalloc/errors.hpp"

namespace wfalloc {
namespace {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config) {
  const bool replay = config.fixed_instance.has_value();
  const std::size_t n = replay ? config.fixed_instance->users() : config.users;
  const std::size_t m =
      replay ? config.fixed_instance->basestations() : config.basestations;
  if (config.strategies.empty()) {
    throw std::invalid_argument("no strategies requested");
  }
  if (config.reference == ReferenceKind::kBruteForceOptimum &&
      !bruteforce_feasible(n, m)) {
    throw InstanceTooLarge("brute-force reference needs m^n <= 1e6, got m=" +
                           std::to_string(m) + " n=" + std::to_string(n));
  }
  const std::string profile_name =
      replay ? "replay" : std::string(to_string(config.profile));

  std::vector<ExperimentRecord> records;
  records.reserve(config.trials * config.strategies.size());
  for (std::size_t t = 0; t < config.trials; ++t) {
    const std::uint64_t seed = config.seed ^ static_cast<std::uint64_t>(t);
    const WeightMatrix w =
        replay ? *config.fixed_instance
               : generate({config.profile, config.users, config.basestations,
                           seed});
    const double reference = offline_reference(w, config.reference);
    for (Strategy s : config.strategies) {
      const double utility = system_utility(run_strategy(w, s), w);
      records.push_back({t, n, m, profile_name, s, utility, reference,
                         config.reference, ratio_of(reference, utility), seed});
    }
  }
  return records;
}

std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records) {
  if (records.empty()) throw std::invalid_argument("no records to summarize");
  using Key = std::tuple<std::string, std::string_view, std::size_t>;
  std::map<Key, SummaryRow> groups;
  for (const ExperimentRecord& r : records) {
    SummaryRow& row = groups[{r.profile, to_string(r.strategy), r.n}];
    if (row.trials == 0) {
      row.profile = r.profile;
      row.strategy = r.strategy;
      row.n = r.n;
      row.max_ratio = r.ratio;
    }
    ++row.trials;
    row.mean_ratio += r.ratio;
    row.mean_utility += r.utility;
    row.max_ratio = std::max(row.max_ratio, r.ratio);
  }
  std::vector<SummaryRow> out;
  for (auto& [key, row] : groups) {
    row.mean_ratio /= static_cast<double>(row.trials);
    row.mean_utility /= static_cast<double>(row.trials);
    out.push_back(std::move(row));
  }
  return out;
}

void write_records_csv(std::ostream& out,
                       const std::vector<ExperimentRecord>& records) {
  out << kRecordCsvHeader << '\n';
  for (const ExperimentRecord& r : records) {
    out << r.trial << ',' << r.n << ',' << r.m << ',' << r.profile << ','
        << to_string(r.strategy) << ',' << format_real(r.utility) << ','
        << format_real(r.offline_bound) << ',' << to_string(r.reference_kind)
        << ',' << format_real(r.ratio) << ',' << r.seed << '\n';
  }
}

void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "profile,strategy,n,trials,mean_ratio,max_ratio,mean_utility\n";
  for (const SummaryRow& r : rows) {
    out << r.profile << ',' << to_string(r.strategy) << ',' << r.n << ','
        << r.trials << ',' << format_real(r.mean_ratio) << ','
        << format_real(r.max_ratio) << ',' << format_real(r.mean_utility)
        << '\n';
  }
}

}  // namespace wfalloc
