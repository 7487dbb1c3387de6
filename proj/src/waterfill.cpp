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

#include "wfalloc/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace wfalloc {
namespace {

void validate_budget(double budget) {
  if (!std::isfinite(budget) || budget < 0.0) {
    throw std::invalid_argument("budget must be finite and nonnegative, got " +
                                std::to_string(budget));
  }
}

void validate_channels(const std::vector<Channel>& channels) {
  std::unordered_set<ChannelId> seen;
  for (const Channel& c : channels) {
    if (!std::isfinite(c.noise) || c.noise <= 0.0) {
      throw std::invalid_argument("noise of channel " + std::to_string(c.id) +
                                  " must be positive and finite");
    }
    if (!seen.insert(c.id).second) {
      throw std::invalid_argument("duplicate channel id " +
                                  std::to_string(c.id));
    }
  }
}

// Positions into channels ordered by (noise, id). The id tie-break makes the
// order, and therefore every floating-point sum below, canonical.
std::vector<std::size_t> ascending_order(std::span<const Channel> channels) {
  std::vector<std::size_t> order(channels.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (channels[a].noise != channels[b].noise) {
      return channels[a].noise < channels[b].noise;
    }
    return channels[a].id < channels[b].id;
  });
  return order;
}

// Sort-and-scan: the largest k whose candidate level (P + sum of the k
// smallest noises) / k strictly exceeds the k-th smallest noise.
double level_from_order(std::span<const Channel> channels,
                        std::span<const std::size_t> order, double budget) {
  std::vector<double> prefix(order.size() + 1, 0.0);
  for (std::size_t k = 0; k < order.size(); ++k) {
    prefix[k + 1] = prefix[k] + channels[order[k]].noise;
  }
  for (std::size_t k = order.size(); k >= 1; --k) {
    const double level = (budget + prefix[k]) / static_cast<double>(k);
    if (level > channels[order[k - 1]].noise) return level;
  }
  // Unreachable for budget > 0: k = 1 gives N_min + P > N_min.
  throw std::logic_error("waterfill scan found no active channel");
}

}  // namespace

NoiseProfile::NoiseProfile(std::span<const double> noises, double budget)
    : budget_(budget) {
  channels_.reserve(noises.size());
  for (std::size_t i = 0; i < noises.size(); ++i) {
    channels_.push_back({i, noises[i]});
  }
  validate_channels(channels_);
  validate_budget(budget_);
}

NoiseProfile::NoiseProfile(std::vector<Channel> channels, double budget)
    : channels_(std::move(channels)), budget_(budget) {
  validate_channels(channels_);
  validate_budget(budget_);
}

bool NoiseProfile::contains(ChannelId id) const {
  return std::any_of(channels_.begin(), channels_.end(),
                     [id](const Channel& c) { return c.id == id; });
}

double NoiseProfile::noise_of(ChannelId id) const {
  for (const Channel& c : channels_) {
    if (c.id == id) return c.noise;
  }
  throw std::invalid_argument("unknown channel id " + std::to_string(id));
}

NoiseProfile NoiseProfile::restrict_to(std::span<const ChannelId> ids) const {
  std::vector<Channel> picked;
  picked.reserve(ids.size());
  for (ChannelId id : ids) picked.push_back({id, noise_of(id)});
  return NoiseProfile(std::move(picked), budget_);
}

NoiseProfile NoiseProfile::with_budget(double budget) const {
  return NoiseProfile(channels_, budget);
}

bool WaterfillSolution::is_active(ChannelId id) const {
  return std::binary_search(active_set.begin(), active_set.end(), id);
}

double water_level(const NoiseProfile& profile) {
  if (profile.empty()) throw std::invalid_argument("empty set");
  if (profile.budget() == 0.0) throw std::invalid_argument("zero budget");
  const auto order = ascending_order(profile.channels());
  return level_from_order(profile.channels(), order, profile.budget());
}

WaterfillSolution waterfill(const NoiseProfile& profile) {
  WaterfillSolution solution;
  const auto channels = profile.channels();
  solution.powers.assign(channels.size(), 0.0);
  if (profile.empty() || profile.budget() == 0.0) return solution;

  const auto order = ascending_order(channels);
  const double level = level_from_order(channels, order, profile.budget());
  solution.water_level = level;

  // Membership uses the strict rule level > N_i against the final level, so
  // the active set and the reported level can never disagree.
  for (std::size_t pos : order) {
    const Channel& c = channels[pos];
    if (!(level > c.noise)) break;
    solution.powers[pos] = level - c.noise;
    solution.active_set.push_back(c.id);
    solution.rate += std::log(level / c.noise);
  }
  std::sort(solution.active_set.begin(), solution.active_set.end());
  return solution;
}

double rate_of_subset(const NoiseProfile& profile,
                      std::span<const ChannelId> subset) {
  return waterfill(profile.restrict_to(subset)).rate;
}

double log_utility(std::span<const double> snrs, double budget) {
  if (!std::isfinite(budget) || budget <= 0.0) {
    throw std::invalid_argument("log-utility budget must be positive");
  }
  std::vector<Channel> channels;
  channels.reserve(snrs.size());
  for (std::size_t i = 0; i < snrs.size(); ++i) {
    const double w = snrs[i];
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument("SNR must be finite and nonnegative, got " +
                                  std::to_string(w));
    }
    if (w > 0.0) channels.push_back({i, 1.0 / w});
  }
  return waterfill(NoiseProfile(std::move(channels), budget)).rate;
}

}  // namespace wfalloc
