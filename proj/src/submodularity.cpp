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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iterator>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "wfalloc/errors.hpp"

namespace wfalloc {
namespace {

constexpr double kLabTolerance = 1e-9;

double scaled(double tolerance, double magnitude) {
  return tolerance * std::max(1.0, std::abs(magnitude));
}

void check_cap(const SetFunctionOracle& f, std::size_t cap) {
  if (!f.evaluate) throw std::invalid_argument("set function has no evaluator");
  if (f.ground_size > cap || f.ground_size >= Subset::kMaxGroundSize) {
    throw InstanceTooLarge("ground set too large: " +
                           std::to_string(f.ground_size) + " elements, cap " +
                           std::to_string(cap));
  }
}

void check_tolerance(double tolerance) {
  if (!(tolerance >= 0.0)) {
    throw std::invalid_argument("tolerance must be nonnegative");
  }
}

// f evaluated once on every subset, indexed by bitmask.
std::vector<double> tabulate(const SetFunctionOracle& f) {
  const std::uint32_t count = std::uint32_t{1} << f.ground_size;
  std::vector<double> values(count);
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    values[mask] = f.evaluate(Subset(mask));
  }
  return values;
}

bool contains_id(const IdSet& s, ChannelId id) {
  return std::binary_search(s.begin(), s.end(), id);
}

IdSet sorted_ids(std::vector<ChannelId> ids) {
  std::sort(ids.begin(), ids.end());
  return ids;
}

double sum_noise(const NoiseProfile& p, const IdSet& ids) {
  double total = 0.0;
  for (ChannelId id : ids) total += p.noise_of(id);
  return total;
}

double sum_log_noise(const NoiseProfile& p, const IdSet& ids) {
  double total = 0.0;
  for (ChannelId id : ids) total += std::log(p.noise_of(id));
  return total;
}

std::vector<double> noises_descending(const NoiseProfile& p, const IdSet& ids) {
  std::vector<double> out;
  out.reserve(ids.size());
  for (ChannelId id : ids) out.push_back(p.noise_of(id));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

struct Solved {
  std::optional<double> level;
  IdSet active;
  double rate;
};

Solved solve(const NoiseProfile& profile, std::vector<ChannelId> ids) {
  WaterfillSolution s = waterfill(profile.restrict_to(ids));
  return {s.water_level, std::move(s.active_set), s.rate};
}

}  // namespace

Subset Subset::of(std::initializer_list<std::size_t> elements) {
  Subset s;
  for (std::size_t e : elements) {
    if (e >= kMaxGroundSize) throw std::invalid_argument("element out of range");
    s = s.with(e);
  }
  return s;
}

std::size_t Subset::size() const {
  return static_cast<std::size_t>(std::popcount(bits_));
}

std::vector<std::size_t> Subset::elements() const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < kMaxGroundSize; ++e) {
    if (contains(e)) out.push_back(e);
  }
  return out;
}

std::string to_string(Subset s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t e : s.elements()) {
    if (!first) out += ';';
    out += std::to_string(e);
    first = false;
  }
  return out + "}";
}

SetFunctionOracle waterfill_rate_oracle(const NoiseProfile& profile) {
  if (profile.size() >= Subset::kMaxGroundSize) {
    throw InstanceTooLarge("profile has too many channels for a set oracle");
  }
  std::vector<ChannelId> ids;
  for (const Channel& c : profile.channels()) ids.push_back(c.id);
  return {profile.size(), [profile, ids](Subset s) {
            std::vector<ChannelId> picked;
            for (std::size_t e : s.elements()) picked.push_back(ids.at(e));
            return rate_of_subset(profile, picked);
          }};
}

std::vector<SubmodularityViolation> check_submodular_pairwise(
    const SetFunctionOracle& f, double tolerance, std::size_t cap) {
  check_cap(f, cap);
  check_tolerance(tolerance);
  const std::vector<double> value = tabulate(f);
  const std::size_t n = f.ground_size;

  std::vector<SubmodularityViolation> violations;
  for (std::uint32_t base = 0; base < value.size(); ++base) {
    const Subset s(base);
    for (std::size_t i = 0; i < n; ++i) {
      if (s.contains(i)) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (s.contains(j)) continue;
        const double lhs =
            value[s.with(i).bits()] + value[s.with(j).bits()];
        const double rhs = value[base] + value[s.with(i).with(j).bits()];
        if (rhs - lhs > tolerance) {
          violations.push_back({s, i, j, lhs, rhs, rhs - lhs});
        }
      }
    }
  }
  return violations;
}

double max_pairwise_gap(const SetFunctionOracle& f, std::size_t cap) {
  check_cap(f, cap);
  const std::vector<double> value = tabulate(f);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::uint32_t base = 0; base < value.size(); ++base) {
    const Subset s(base);
    for (std::size_t i = 0; i < f.ground_size; ++i) {
      if (s.contains(i)) continue;
      for (std::size_t j = i + 1; j < f.ground_size; ++j) {
        if (s.contains(j)) continue;
        worst = std::max(worst, value[base] + value[s.with(i).with(j).bits()] -
                                    value[s.with(i).bits()] -
                                    value[s.with(j).bits()]);
      }
    }
  }
  return worst;
}

std::vector<SetPairViolation> check_setpair_submodular(
    const SetFunctionOracle& f, double tolerance, std::size_t cap) {
  check_cap(f, cap);
  check_tolerance(tolerance);
  const std::vector<double> value = tabulate(f);

  std::vector<SetPairViolation> violations;
  for (std::uint32_t s = 0; s < value.size(); ++s) {
    for (std::uint32_t t = 0; t < value.size(); ++t) {
      if (s == t) continue;
      const double lhs = value[s] + value[t];
      const double rhs = value[s & t] + value[s | t];
      if (rhs - lhs > tolerance) {
        violations.push_back({Subset(s), Subset(t), lhs, rhs, rhs - lhs});
      }
    }
  }
  return violations;
}

std::vector<MonotonicityViolation> check_monotone(const SetFunctionOracle& f,
                                                  double tolerance,
                                                  std::size_t cap) {
  check_cap(f, cap);
  check_tolerance(tolerance);
  const std::vector<double> value = tabulate(f);

  std::vector<MonotonicityViolation> violations;
  for (std::uint32_t larger = 0; larger < value.size(); ++larger) {
    // Walk the proper subsets of `larger`.
    for (std::uint32_t smaller = (larger - 1) & larger;;
         smaller = (smaller - 1) & larger) {
      if (smaller != larger) {
        const double gap = value[smaller] - value[larger];
        if (gap > tolerance) {
          violations.push_back({Subset(smaller), Subset(larger), gap});
        }
      }
      if (smaller == 0) break;
    }
  }
  return violations;
}

void write_violations_csv(std::ostream& out,
                          std::span<const SubmodularityViolation> violations) {
  out << "base_set,i,j,lhs,rhs,gap\n";
  char buf[128];
  for (const auto& v : violations) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g", v.lhs, v.rhs, v.gap);
    out << to_string(v.base_set) << ',' << v.elem_i << ',' << v.elem_j << ','
        << buf << '\n';
  }
}

IdSet set_difference(const IdSet& a, const IdSet& b) {
  IdSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

bool includes(const IdSet& super, const IdSet& sub) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

IdSet disjoint_union(std::initializer_list<const IdSet*> parts) {
  IdSet out;
  for (const IdSet* part : parts) {
    for (ChannelId id : *part) {
      if (contains_id(out, id)) {
        throw std::invalid_argument("parts are not disjoint: channel " +
                                    std::to_string(id) + " repeats");
      }
      out.insert(std::upper_bound(out.begin(), out.end(), id), id);
    }
  }
  return out;
}

const char* to_string(WitnessCase c) {
  switch (c) {
    case WitnessCase::kMain: return "main";
    case WitnessCase::kIInactive: return "i_inactive";
    case WitnessCase::kJInactive: return "j_inactive";
    case WitnessCase::kEmptyBase: return "empty_base";
  }
  return "unknown";
}

bool LemmaWitness::all_hold() const {
  return level_chain && rate_chain && pairwise_condition &&
         easy_case_equality && decompositions_hold && ordering_chain &&
         sum_equality && count_equality && product_inequality;
}

LemmaWitness lemma_witness(const NoiseProfile& profile,
                           std::span<const ChannelId> base, ChannelId i,
                           ChannelId j) {
  if (i == j) throw std::invalid_argument("i and j must be distinct");
  if (!(profile.budget() > 0.0)) {
    throw std::invalid_argument("lemma witness needs a positive budget");
  }
  const IdSet s = sorted_ids({base.begin(), base.end()});
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
    throw std::invalid_argument("base set has repeated channels");
  }
  if (contains_id(s, i) || contains_id(s, j)) {
    throw std::invalid_argument("i and j must lie outside the base set");
  }
  for (ChannelId id : s) profile.noise_of(id);
  profile.noise_of(i);
  profile.noise_of(j);

  IdSet all = s;
  all.push_back(i);
  all.push_back(j);
  LemmaWitness w(profile.restrict_to(all));
  const NoiseProfile& p = w.profile;
  w.base = s;

  auto with = [&s](std::initializer_list<ChannelId> extra) {
    IdSet out = s;
    out.insert(out.end(), extra);
    return out;
  };
  Solved plain = solve(p, s);
  Solved solved_i = solve(p, with({i}));
  Solved solved_j = solve(p, with({j}));
  Solved solved_ij = solve(p, with({i, j}));

  // The easy cases are read off the caller's labels. Only when both i and j
  // draw power on S+i+j are they relabelled so that nu_j >= nu_i.
  const bool i_idle = !contains_id(solved_ij.active, i);
  const bool j_idle = !contains_id(solved_ij.active, j);
  if (!i_idle && !j_idle && *solved_i.level > *solved_j.level) {
    std::swap(i, j);
    std::swap(solved_i, solved_j);
    w.labels_swapped = true;
  }
  w.i = i;
  w.j = j;
  w.nu = plain.level;
  w.nu_i = *solved_i.level;
  w.nu_j = *solved_j.level;
  w.nu_ij = *solved_ij.level;
  w.rate = plain.rate;
  w.rate_i = solved_i.rate;
  w.rate_j = solved_j.rate;
  w.rate_ij = solved_ij.rate;
  w.t = plain.active;
  w.t_i = solved_i.active;
  w.t_j = solved_j.active;
  w.t_ij = solved_ij.active;

  // nu_ij <= nu_i, nu_j <= nu, in whichever order nu_i and nu_j fall.
  w.level_chain = w.nu_ij <= std::min(w.nu_i, w.nu_j) &&
                  (!w.nu || std::max(w.nu_i, w.nu_j) <= *w.nu);
  const double rate_slack = scaled(kLabTolerance, w.rate_ij);
  w.rate_chain = w.rate_ij + rate_slack >= w.rate_i &&
                 w.rate_i + rate_slack >= w.rate &&
                 w.rate_ij + rate_slack >= w.rate_j &&
                 w.rate_j + rate_slack >= w.rate;
  w.pairwise_condition =
      w.rate_i + w.rate_j + rate_slack >= w.rate + w.rate_ij;

  if (i_idle) {
    w.kind = WitnessCase::kIInactive;
    w.easy_case_equality = w.rate_ij == w.rate_j;
    return w;
  }
  if (j_idle) {
    w.kind = WitnessCase::kJInactive;
    w.easy_case_equality = w.rate_ij == w.rate_i;
    return w;
  }
  if (s.empty()) {
    w.kind = WitnessCase::kEmptyBase;
    return w;
  }
  w.kind = WitnessCase::kMain;

  const IdSet only_i{i};
  const IdSet only_j{j};
  const IdSet pair_ij = sorted_ids({i, j});
  w.t_bar_ij = set_difference(w.t_ij, pair_ij);
  w.t_bar_i = set_difference(w.t_i, only_i);
  w.t_bar_j = set_difference(w.t_j, only_j);
  w.t_hat_i = set_difference(w.t_bar_i, w.t_bar_ij);
  w.t_hat = set_difference(w.t, w.t_bar_j);

  try {
    w.decompositions_hold =
        contains_id(w.t_i, i) && contains_id(w.t_j, j) &&
        includes(w.t_bar_i, w.t_bar_ij) && includes(w.t, w.t_bar_j) &&
        disjoint_union({&only_i, &w.t_bar_ij, &w.t_hat_i}) == w.t_i &&
        disjoint_union({&only_j, &w.t_bar_j}) == w.t_j &&
        disjoint_union({&w.t_bar_j, &w.t_hat}) == w.t &&
        disjoint_union({&pair_ij, &w.t_bar_ij}) == w.t_ij;
  } catch (const std::invalid_argument&) {
    w.decompositions_hold = false;
  }

  const double nu = *w.nu;
  w.ordering_chain = w.nu_i <= w.nu_j;
  for (ChannelId m : w.t_hat_i) {
    const double noise = p.noise_of(m);
    w.ordering_chain = w.ordering_chain && w.nu_ij <= noise && noise <= w.nu_i;
  }
  for (ChannelId l : w.t_hat) {
    const double noise = p.noise_of(l);
    w.ordering_chain = w.ordering_chain && w.nu_j <= noise && noise <= nu;
  }

  const auto count = [](const IdSet& x) { return static_cast<double>(x.size()); };
  w.sum_lhs = count(w.t_i) * w.nu_i + count(w.t_j) * w.nu_j +
              sum_noise(p, w.t_hat);
  w.sum_rhs = count(w.t) * nu + count(w.t_ij) * w.nu_ij +
              sum_noise(p, w.t_hat_i);
  w.sum_equality = std::abs(w.sum_lhs - w.sum_rhs) <=
                   scaled(kLabTolerance, std::max(w.sum_lhs, w.sum_rhs));
  w.count_equality = w.t_i.size() + w.t_j.size() + w.t_hat.size() ==
                     w.t.size() + w.t_ij.size() + w.t_hat_i.size();

  w.log_product_lhs = count(w.t_i) * std::log(w.nu_i) +
                      count(w.t_j) * std::log(w.nu_j) +
                      sum_log_noise(p, w.t_hat);
  w.log_product_rhs = count(w.t) * std::log(nu) +
                      count(w.t_ij) * std::log(w.nu_ij) +
                      sum_log_noise(p, w.t_hat_i);
  w.product_inequality =
      w.log_product_lhs >= w.log_product_rhs + std::log1p(-kLabTolerance);
  return w;
}

bool majorizes(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("majorization needs equal lengths");
  }
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end(), std::greater<>());
  std::sort(y.begin(), y.end(), std::greater<>());

  double magnitude = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    magnitude += std::abs(x[k]) + std::abs(y[k]);
  }
  const double slack = scaled(kLabTolerance, magnitude);
  double prefix_x = 0.0;
  double prefix_y = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    prefix_x += x[k];
    prefix_y += y[k];
    if (prefix_x < prefix_y - slack) return false;
  }
  return std::abs(prefix_x - prefix_y) <= slack;
}

bool karamata_holds(std::span<const double> a, std::span<const double> b,
                    const std::function<double(double)>& g) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("karamata check needs equal lengths");
  }
  double ga = 0.0;
  double gb = 0.0;
  for (double v : a) ga += g(v);
  for (double v : b) gb += g(v);
  return ga >= gb - kLabTolerance;
}

bool product_dominates(std::span<const double> b, std::span<const double> a) {
  double pa = 1.0;
  double pb = 1.0;
  for (double v : a) pa *= v;
  for (double v : b) pb *= v;
  return pb >= pa * (1.0 - kLabTolerance);
}

MajorizationVectors build_majorization_vectors(const LemmaWitness& w) {
  if (w.kind != WitnessCase::kMain) {
    throw std::invalid_argument(
        std::string("majorization vectors need a main-case witness, got ") +
        to_string(w.kind));
  }
  MajorizationVectors out;
  out.a.insert(out.a.end(), w.t.size(), *w.nu);
  const auto noise_m = noises_descending(w.profile, w.t_hat_i);
  out.a.insert(out.a.end(), noise_m.begin(), noise_m.end());
  out.a.insert(out.a.end(), w.t_ij.size(), w.nu_ij);

  const auto noise_l = noises_descending(w.profile, w.t_hat);
  out.b.insert(out.b.end(), noise_l.begin(), noise_l.end());
  out.b.insert(out.b.end(), w.t_j.size(), w.nu_j);
  out.b.insert(out.b.end(), w.t_i.size(), w.nu_i);

  // Ascending, a = [nu_ij..., N_m asc..., nu...]; the block boundary before
  // the nu entries is the interlacing index, also when T_hat_i is empty.
  out.split = w.t_hat_i.size() + w.t_ij.size();
  const std::size_t n = out.a.size();
  if (out.b.size() == n && out.split >= 1 && out.split + 1 <= n) {
    const double below = out.a[n - out.split];     // a_k ascending
    const double above = out.a[n - out.split - 1];  // a_{k+1} ascending
    const auto [lo, hi] = std::minmax_element(out.b.begin(), out.b.end());
    out.interlaced = below <= *lo && *hi <= above;
  }
  return out;
}

}  // namespace wfalloc
