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

// Online basestation allocation. Users arrive one at a time with their SNRs
// to each of m basestations and are assigned immediately and irrevocably.
// Each basestation splits unit power among its users to maximize the sum of
// log(1 + alpha_i w_ij); the system utility is the sum over basestations.

#ifndef WFALLOC_ALLOCATION_HPP_
#define WFALLOC_ALLOCATION_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace wfalloc {

using UserId = std::size_t;
using BasestationId = std::size_t;

// n x m nonnegative finite SNRs, row i being user i's arrival.
class WeightMatrix {
 public:
  WeightMatrix(std::size_t users, std::size_t basestations,
               std::vector<double> row_major);
  explicit WeightMatrix(const std::vector<std::vector<double>>& rows);

  std::size_t users() const { return users_; }
  std::size_t basestations() const { return basestations_; }
  double at(UserId user, BasestationId bs) const {
    return values_[user * basestations_ + bs];
  }
  std::span<const double> row(UserId user) const {
    return {values_.data() + user * basestations_, basestations_};
  }
  std::span<const double> values() const { return values_; }
  double max_entry() const;

  friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;

 private:
  std::size_t users_;
  std::size_t basestations_;
  std::vector<double> values_;
};

// Partition of the arrived users among m basestations.
class Allocation {
 public:
  explicit Allocation(std::size_t basestations);
  // Throws std::invalid_argument unless every entry is < basestations.
  Allocation(std::size_t basestations, std::span<const BasestationId> owner);

  // Appends the next user. Returns its id.
  UserId assign(BasestationId bs);

  std::size_t basestations() const { return parts_.size(); }
  std::size_t users() const { return owner_.size(); }
  std::span<const UserId> part(BasestationId bs) const { return parts_.at(bs); }
  BasestationId owner(UserId user) const { return owner_.at(user); }
  std::span<const BasestationId> owners() const { return owner_; }

  // Parts pairwise disjoint and covering exactly users 0..users()-1.
  bool is_partition() const;

 private:
  std::vector<std::vector<UserId>> parts_;
  std::vector<BasestationId> owner_;
};

enum class GreedyMode {
  kMarginalGain,   // argmax_j L(M_j + i) - L(M_j)
  kAbsoluteValue,  // argmax_j L(M_j + i)
};

// Online greedy engine. Holds per-basestation state that mutates on every
// arrival, so one instance serves one arrival stream.
class OnlineGreedy {
 public:
  OnlineGreedy(std::size_t basestations, GreedyMode mode);

  // Assigns the arriving user; ties go to the lowest basestation index.
  // Throws std::invalid_argument if snrs.size() != basestations.
  BasestationId arrive(std::span<const double> snrs);

  const Allocation& allocation() const { return allocation_; }
  // Current system utility.
  double utility() const;

 private:
  GreedyMode mode_;
  Allocation allocation_;
  std::vector<std::vector<double>> served_snrs_;
  std::vector<double> part_utility_;
};

Allocation online_greedy(const WeightMatrix& arrivals,
                         GreedyMode mode = GreedyMode::kMarginalGain);

// Each user to its highest-SNR basestation, ties to the lowest index.
Allocation max_weight(const WeightMatrix& w);

// Sum over basestations of log_utility of the SNRs of its users toward it.
// Throws std::invalid_argument if alloc is not a partition of w's users.
double system_utility(const Allocation& alloc, const WeightMatrix& w);

inline constexpr double kBruteForceLimit = 1e6;

struct OfflineOptimum {
  Allocation allocation;
  double value;
};

// Exhaustive search over all m^n assignments. The first maximizer in
// lexicographic order of (owner of user 0, owner of user 1, ...) wins.
// Throws InstanceTooLarge when m^n exceeds kBruteForceLimit.
OfflineOptimum offline_bruteforce(const WeightMatrix& w);
bool bruteforce_feasible(std::size_t users, std::size_t basestations);

// Upper bound on the offline optimum: every SNR raised to the largest entry
// of w, users spread as evenly as possible, sum of k log(1 + w_max / k).
double offline_upper_bound(const WeightMatrix& w);

enum class Strategy { kGreedy, kGreedyAbsolute, kMaxWeight };
enum class ReferenceKind { kBruteForceOptimum, kAnalyticUpperBound };

std::string_view to_string(Strategy s);
std::string_view to_string(ReferenceKind r);
std::optional<Strategy> parse_strategy(std::string_view name);
std::optional<ReferenceKind> parse_reference(std::string_view name);

Allocation run_strategy(const WeightMatrix& w, Strategy s);
double offline_reference(const WeightMatrix& w, ReferenceKind kind);

struct RatioReport {
  double online_utility = 0.0;
  double offline_reference = 0.0;
  ReferenceKind reference_kind = ReferenceKind::kBruteForceOptimum;
  // offline_reference / online_utility; 1 when both are zero and +infinity
  // when only the online utility is.
  double ratio = 1.0;
};

double ratio_of(double offline, double online);

RatioReport competitive_ratio(const WeightMatrix& w, Strategy s,
                              ReferenceKind kind);

}  // namespace wfalloc

#endif  // WFALLOC_ALLOCATION_HPP_
