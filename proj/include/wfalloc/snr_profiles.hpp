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

// Seeded SNR matrix generators and the weight-matrix CSV format.
//
// Randomness comes from std::mt19937_64, whose output sequence is fixed by
// the C++ standard. Uniform reals and bounded integers are derived from raw
// engine output here rather than through <random> distributions, whose
// algorithms vary between standard libraries, so a (kind, n, m, seed) tuple
// yields the same matrix on every conforming build.

#ifndef WFALLOC_SNR_PROFILES_HPP_
#define WFALLOC_SNR_PROFILES_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <random>
#include <string_view>

#include "wfalloc/allocation.hpp"

namespace wfalloc {

inline constexpr std::string_view kRngName = "mt19937_64";

enum class ProfileKind {
  kIidUnit,       // every entry U[0,1]
  kIidTen,        // every entry U[0,10]
  kMixedHalf,     // first ceil(n/2) users U[0,10], the rest U[0,5]
  kSparseStrong,  // per user, a random 3-subset U[0,10], others U[0,1]
  kCorrelated,    // per user, v ~ U[0,10] on a random 3-subset, v/2 elsewhere
};

std::string_view to_string(ProfileKind kind);
std::optional<ProfileKind> parse_profile(std::string_view name);

struct ProfileSpec {
  ProfileKind kind = ProfileKind::kIidUnit;
  std::size_t users = 1;
  std::size_t basestations = 1;
  std::uint64_t seed = 0;
};

// Throws std::invalid_argument for zero users or basestations, or fewer
// than 3 basestations for the two 3-subset kinds.
WeightMatrix generate(const ProfileSpec& spec);

// Uniform draws built directly on engine output.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

  // 53-bit resolution on [lo, hi).
  double uniform(double lo, double hi);
  // Unbiased integer in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

// CSV with header user,bs_1,...,bs_m and one row per user. Reals are written
// with 17 significant digits so a write/read cycle is exact.
void write_weight_csv(std::ostream& out, const WeightMatrix& w);
void write_weight_csv(const std::filesystem::path& path, const WeightMatrix& w);

// Throws IoError if the file cannot be read and ParseError (naming the line)
// on a malformed header, cell, or row width, or when there are no users.
WeightMatrix read_weight_csv(std::istream& in);
WeightMatrix replay_from_csv(const std::filesystem::path& path);

}  // namespace wfalloc

#endif  // WFALLOC_SNR_PROFILES_HPP_
