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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "wfalloc/errors.hpp"
#include "wfalloc/waterfill.hpp"

namespace wfalloc {
namespace {

void validate_entries(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("SNR entries must be finite and >= 0, got " +
                                  std::to_string(v));
    }
  }
}

// L_j over every subset of users, indexed by bitmask.
std::vector<double> utility_table(const WeightMatrix& w, BasestationId bs) {
  const std::size_t n = w.users();
  std::vector<double> table(std::size_t{1} << n);
  std::vector<double> snrs;
  for (std::uint32_t mask = 0; mask < table.size(); ++mask) {
    snrs.clear();
    for (UserId u = 0; u < n; ++u) {
      if ((mask >> u) & 1u) snrs.push_back(w.at(u, bs));
    }
    table[mask] = log_utility(snrs);
  }
  return table;
}

struct Search {
  const std::vector<std::vector<double>>& tables;
  std::size_t users;
  std::vector<std::uint32_t> masks;
  std::vector<BasestationId> current;
  std::vector<BasestationId> best;
  double best_value = -std::numeric_limits<double>::infinity();

  void run(UserId u) {
    if (u == users) {
      double value = 0.0;
      for (std::size_t j = 0; j < masks.size(); ++j) value += tables[j][masks[j]];
      if (value > best_value) {
        best_value = value;
        best = current;
      }
      return;
    }
    for (BasestationId j = 0; j < masks.size(); ++j) {
      masks[j] |= std::uint32_t{1} << u;
      current[u] = j;
      run(u + 1);
      masks[j] &= ~(std::uint32_t{1} << u);
    }
  }
};

}  // namespace

WeightMatrix::WeightMatrix(std::size_t users, std::size_t basestations,
                           std::vector<double> row_major)
    : users_(users), basestations_(basestations), values_(std::move(row_major)) {
  if (basestations_ == 0) {
    throw std::invalid_argument("need at least one basestation");
  }
  if (values_.size() != users_ * basestations_) {
    throw std::invalid_argument("weight matrix has " +
                                std::to_string(values_.size()) +
                                " entries, expected " +
                                std::to_string(users_ * basestations_));
  }
  validate_entries(values_);
}

WeightMatrix::WeightMatrix(const std::vector<std::vector<double>>& rows)
    : users_(rows.size()), basestations_(rows.empty() ? 0 : rows[0].size()) {
  if (basestations_ == 0) {
    throw std::invalid_argument("need at least one basestation");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != basestations_) {
      throw std::invalid_argument("row " + std::to_string(i) + " has width " +
                                  std::to_string(rows[i].size()) +
                                  ", expected " + std::to_string(basestations_));
    }
    values_.insert(values_.end(), rows[i].begin(), rows[i].end());
  }
  validate_entries(values_);
}

double WeightMatrix::max_entry() const {
  return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

Allocation::Allocation(std::size_t basestations) : parts_(basestations) {
  if (basestations == 0) {
    throw std::invalid_argument("need at least one basestation");
  }
}

Allocation::Allocation(std::size_t basestations,
                       std::span<const BasestationId> owner)
    : Allocation(basestations) {
  for (BasestationId bs : owner) assign(bs);
}

UserId Allocation::assign(BasestationId bs) {
  if (bs >= parts_.size()) {
    throw std::invalid_argument("basestation " + std::to_string(bs) +
                                " out of range");
  }
  const UserId user = owner_.size();
  owner_.push_back(bs);
  parts_[bs].push_back(user);
  return user;
}

bool Allocation::is_partition() const {
  std::vector<int> seen(owner_.size(), 0);
  for (BasestationId bs = 0; bs < parts_.size(); ++bs) {
    for (UserId u : parts_[bs]) {
      if (u >= owner_.size() || owner_[u] != bs || seen[u]++ != 0) return false;
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

OnlineGreedy::OnlineGreedy(std::size_t basestations, GreedyMode mode)
    : mode_(mode),
      allocation_(basestations),
      served_snrs_(basestations),
      part_utility_(basestations, 0.0) {}

BasestationId OnlineGreedy::arrive(std::span<const double> snrs) {
  const std::size_t m = served_snrs_.size();
  if (snrs.size() != m) {
    throw std::invalid_argument("arrival has " + std::to_string(snrs.size()) +
                                " SNRs, expected " + std::to_string(m));
  }
  validate_entries(snrs);

  BasestationId best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  double best_utility = 0.0;
  for (BasestationId j = 0; j < m; ++j) {
    std::vector<double>& served = served_snrs_[j];
    served.push_back(snrs[j]);
    const double extended = log_utility(served);
    served.pop_back();
    const double score = mode_ == GreedyMode::kMarginalGain
                             ? extended - part_utility_[j]
                             : extended;
    if (score > best_score) {
      best = j;
      best_score = score;
      best_utility = extended;
    }
  }
  served_snrs_[best].push_back(snrs[best]);
  part_utility_[best] = best_utility;
  allocation_.assign(best);
  return best;
}

double OnlineGreedy::utility() const {
  double total = 0.0;
  for (double u : part_utility_) total += u;
  return total;
}

Allocation online_greedy(const WeightMatrix& arrivals, GreedyMode mode) {
  OnlineGreedy engine(arrivals.basestations(), mode);
  for (UserId u = 0; u < arrivals.users(); ++u) engine.arrive(arrivals.row(u));
  return engine.allocation();
}

Allocation max_weight(const WeightMatrix& w) {
  Allocation alloc(w.basestations());
  for (UserId u = 0; u < w.users(); ++u) {
    const auto row = w.row(u);
    alloc.assign(static_cast<BasestationId>(
        std::max_element(row.begin(), row.end()) - row.begin()));
  }
  return alloc;
}

double system_utility(const Allocation& alloc, const WeightMatrix& w) {
  if (alloc.basestations() != w.basestations() || alloc.users() != w.users() ||
      !alloc.is_partition()) {
    throw std::invalid_argument(
        "allocation does not partition the users of the weight matrix");
  }
  double total = 0.0;
  std::vector<double> snrs;
  for (BasestationId j = 0; j < alloc.basestations(); ++j) {
    snrs.clear();
    for (UserId u : alloc.part(j)) snrs.push_back(w.at(u, j));
    total += log_utility(snrs);
  }
  return total;
}

bool bruteforce_feasible(std::size_t users, std::size_t basestations) {
  double count = 1.0;
  for (std::size_t u = 0; u < users; ++u) {
    count *= static_cast<double>(basestations);
    if (count > kBruteForceLimit) return false;
  }
  return true;
}

OfflineOptimum offline_bruteforce(const WeightMatrix& w) {
  const std::size_t n = w.users();
  const std::size_t m = w.basestations();
  if (!bruteforce_feasible(n, m)) {
    throw InstanceTooLarge("instance too large for brute force: " +
                           std::to_string(m) + "^" + std::to_string(n) +
                           " assignments exceed 1e6");
  }
  if (m == 1) {
    Allocation all(1, std::vector<BasestationId>(n, 0));
    const double value = system_utility(all, w);
    return {std::move(all), value};
  }

  std::vector<std::vector<double>> tables;
  for (BasestationId j = 0; j < m; ++j) tables.push_back(utility_table(w, j));
  Search search{tables, n, std::vector<std::uint32_t>(m, 0),
                std::vector<BasestationId>(n, 0), {}};
  search.run(0);
  return {Allocation(m, search.best), search.best_value};
}

double offline_upper_bound(const WeightMatrix& w) {
  const double top = w.max_entry();
  if (top == 0.0 || w.users() == 0) return 0.0;
  const std::size_t n = w.users();
  const std::size_t m = w.basestations();
  const std::size_t small = n / m;
  const std::size_t big_groups = n % m;

  const auto group = [top](std::size_t k) {
    return k == 0 ? 0.0 : static_cast<double>(k) *
                              std::log1p(top / static_cast<double>(k));
  };
  return static_cast<double>(big_groups) * group(small + 1) +
         static_cast<double>(m - big_groups) * group(small);
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kGreedy: return "greedy";
    case Strategy::kGreedyAbsolute: return "greedy-absolute";
    case Strategy::kMaxWeight: return "max-weight";
  }
  return "unknown";
}

std::string_view to_string(ReferenceKind r) {
  switch (r) {
    case ReferenceKind::kBruteForceOptimum: return "brute-force";
    case ReferenceKind::kAnalyticUpperBound: return "analytic-upper";
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (Strategy s : {Strategy::kGreedy, Strategy::kGreedyAbsolute,
                     Strategy::kMaxWeight}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::optional<ReferenceKind> parse_reference(std::string_view name) {
  for (ReferenceKind r : {ReferenceKind::kBruteForceOptimum,
                          ReferenceKind::kAnalyticUpperBound}) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

Allocation run_strategy(const WeightMatrix& w, Strategy s) {
  switch (s) {
    case Strategy::kGreedy:
      return online_greedy(w, GreedyMode::kMarginalGain);
    case Strategy::kGreedyAbsolute:
      return online_greedy(w, GreedyMode::kAbsoluteValue);
    case Strategy::kMaxWeight:
      return max_weight(w);
  }
  throw std::invalid_argument("unknown strategy");
}

double offline_reference(const WeightMatrix& w, ReferenceKind kind) {
  return kind == ReferenceKind::kBruteForceOptimum ? offline_bruteforce(w).value
                                                   : offline_upper_bound(w);
}

double ratio_of(double offline, double online) {
  if (online > 0.0) return offline / online;
  return offline > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
}

RatioReport competitive_ratio(const WeightMatrix& w, Strategy s,
                              ReferenceKind kind) {
  RatioReport report;
  report.reference_kind = kind;
  report.online_utility = system_utility(run_strategy(w, s), w);
  report.offline_reference = offline_reference(w, kind);
  report.ratio = ratio_of(report.offline_reference, report.online_utility);
  return report;
}

}  // namespace wfalloc
