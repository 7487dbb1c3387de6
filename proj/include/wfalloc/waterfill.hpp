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

// Waterfilling over parallel Gaussian channels with a sum-power budget.
//
// For a set of channels with noise variances N_i and total power P the
// mutual-information optimum gives channel i the power (nu - N_i)^+, where
// the water level nu is the unique value with sum_i (nu - N_i)^+ = P. The
// optimal rate is sum over active channels of log(nu / N_i), in nats.
//
// Everything here is a pure function of immutable values.

#ifndef WFALLOC_WATERFILL_HPP_
#define WFALLOC_WATERFILL_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace wfalloc {

using ChannelId = std::size_t;

// Relative tolerance used for power conservation and rate identities.
inline constexpr double kWaterfillTolerance = 1e-9;

struct Channel {
  ChannelId id;
  double noise;
};

// Noise variances of a channel set together with the total power budget.
// Channels keep the order they were given in; ids must be distinct and every
// noise strictly positive and finite.
class NoiseProfile {
 public:
  // Channels get ids 0..noises.size()-1.
  NoiseProfile(std::span<const double> noises, double budget);
  NoiseProfile(std::vector<Channel> channels, double budget);

  std::span<const Channel> channels() const { return channels_; }
  std::size_t size() const { return channels_.size(); }
  bool empty() const { return channels_.empty(); }
  double budget() const { return budget_; }

  bool contains(ChannelId id) const;
  double noise_of(ChannelId id) const;

  // Profile restricted to the given ids, in the order given. Throws
  // std::invalid_argument on an unknown or repeated id.
  NoiseProfile restrict_to(std::span<const ChannelId> ids) const;
  NoiseProfile with_budget(double budget) const;

 private:
  std::vector<Channel> channels_;
  double budget_;
};

struct WaterfillSolution {
  // Absent for an empty channel set or a zero budget.
  std::optional<double> water_level;
  // Parallel to NoiseProfile::channels().
  std::vector<double> powers;
  // Channels with strictly positive power, sorted by id.
  std::vector<ChannelId> active_set;
  double rate = 0.0;

  bool is_active(ChannelId id) const;
};

// Water level of a nonempty profile with a positive budget. Throws
// std::invalid_argument("empty set") or ("zero budget") otherwise.
double water_level(const NoiseProfile& profile);

// Full solution. Empty profiles and zero budgets give rate 0 and no level.
WaterfillSolution waterfill(const NoiseProfile& profile);

// Optimal rate over a subset of the profile's channels.
double rate_of_subset(const NoiseProfile& profile,
                      std::span<const ChannelId> subset);

// Basestation log-utility: max sum log(1 + alpha_i w_i) subject to
// sum alpha_i <= budget, solved as waterfilling with N_i = 1 / w_i.
// Users with zero SNR never receive power and are dropped before solving.
double log_utility(std::span<const double> snrs, double budget = 1.0);

}  // namespace wfalloc

#endif  // WFALLOC_WATERFILL_HPP_
