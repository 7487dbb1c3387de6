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

// Exhaustive checks of set-function properties (submodularity in both of its
// standard forms, monotonicity) and the machinery behind the submodularity
// of the waterfilling rate: the four water levels of S, S+i, S+j, S+i+j,
// their active-set decompositions, the ordering and sum identities relating
// them, and the majorization / Karamata argument that closes the product
// inequality.

#ifndef WFALLOC_SUBMODULARITY_HPP_
#define WFALLOC_SUBMODULARITY_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wfalloc/waterfill.hpp"

namespace wfalloc {

// Subset of a ground set {0, ..., size-1}, stored as a bitmask.
class Subset {
 public:
  static constexpr std::size_t kMaxGroundSize = 32;

  constexpr Subset() = default;
  constexpr explicit Subset(std::uint32_t bits) : bits_(bits) {}
  static Subset of(std::initializer_list<std::size_t> elements);

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool contains(std::size_t e) const { return (bits_ >> e) & 1u; }
  constexpr Subset with(std::size_t e) const {
    return Subset(bits_ | (std::uint32_t{1} << e));
  }
  constexpr bool is_subset_of(Subset other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  std::size_t size() const;
  std::vector<std::size_t> elements() const;

  friend constexpr Subset operator&(Subset a, Subset b) {
    return Subset(a.bits_ & b.bits_);
  }
  friend constexpr Subset operator|(Subset a, Subset b) {
    return Subset(a.bits_ | b.bits_);
  }
  friend constexpr bool operator==(Subset, Subset) = default;

 private:
  std::uint32_t bits_ = 0;
};

// "{0;2;5}" style rendering, used in reports and CSV dumps.
std::string to_string(Subset s);

// A set function on {0, ..., ground_size-1}. evaluate must be deterministic
// and safe to call concurrently.
struct SetFunctionOracle {
  std::size_t ground_size = 0;
  std::function<double(Subset)> evaluate;
};

// Waterfilling rate as a set function: element k of the ground set is the
// k-th channel of the profile.
SetFunctionOracle waterfill_rate_oracle(const NoiseProfile& profile);

// f(S+i) + f(S+j) < f(S) + f(S+i+j) by more than the tolerance.
struct SubmodularityViolation {
  Subset base_set;
  std::size_t elem_i = 0;
  std::size_t elem_j = 0;
  double lhs = 0.0;  // f(S+i) + f(S+j)
  double rhs = 0.0;  // f(S) + f(S+i+j)
  double gap = 0.0;  // rhs - lhs
};

// f(S) + f(T) < f(S & T) + f(S | T) by more than the tolerance.
struct SetPairViolation {
  Subset s;
  Subset t;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
};

// smaller is a subset of larger but f(smaller) > f(larger) + tolerance.
struct MonotonicityViolation {
  Subset smaller;
  Subset larger;
  double gap = 0.0;  // f(smaller) - f(larger)
};

inline constexpr std::size_t kPairwiseCap = 12;
inline constexpr std::size_t kSetPairCap = 8;
inline constexpr std::size_t kMonotoneCap = 8;

// Exhaustive over every (S, i, j) with i < j outside S. Throws
// InstanceTooLarge("ground set too large") above the cap.
std::vector<SubmodularityViolation> check_submodular_pairwise(
    const SetFunctionOracle& f, double tolerance,
    std::size_t cap = kPairwiseCap);

// Largest f(S) + f(S+i+j) - f(S+i) - f(S+j) over all triples; -infinity
// when the ground set has fewer than two elements. Same cap as above.
double max_pairwise_gap(const SetFunctionOracle& f,
                        std::size_t cap = kPairwiseCap);

// Exhaustive over every ordered pair (S, T) with S != T.
std::vector<SetPairViolation> check_setpair_submodular(
    const SetFunctionOracle& f, double tolerance, std::size_t cap = kSetPairCap);

// Exhaustive over every strict inclusion S < T.
std::vector<MonotonicityViolation> check_monotone(
    const SetFunctionOracle& f, double tolerance,
    std::size_t cap = kMonotoneCap);

// CSV dump with header base_set,i,j,lhs,rhs,gap.
void write_violations_csv(std::ostream& out,
                          std::span<const SubmodularityViolation> violations);

// Sorted-vector set helpers on channel ids.
using IdSet = std::vector<ChannelId>;
IdSet set_difference(const IdSet& a, const IdSet& b);
bool includes(const IdSet& super, const IdSet& sub);
// Union of pairwise disjoint parts; throws std::invalid_argument if any two
// parts share an element.
IdSet disjoint_union(std::initializer_list<const IdSet*> parts);

enum class WitnessCase {
  kMain,        // i and j both active on S+i+j
  kIInactive,   // i idle on S+i+j, so R_ij == R_j
  kJInactive,   // j idle on S+i+j, so R_ij == R_i
  kEmptyBase,   // S empty: the condition is plain subadditivity
};

const char* to_string(WitnessCase c);

// Everything the submodularity argument says about one (profile, S, i, j).
// When i and j are both active on S+i+j the labels are swapped as needed so
// that nu_j >= nu_i; the easy cases keep the caller's labels.
struct LemmaWitness {
  explicit LemmaWitness(NoiseProfile restricted)
      : profile(std::move(restricted)) {}

  NoiseProfile profile;  // profile restricted to S + i + j
  IdSet base;
  ChannelId i = 0;
  ChannelId j = 0;
  bool labels_swapped = false;
  WitnessCase kind = WitnessCase::kMain;

  // Water levels of S, S+i, S+j, S+i+j. nu is absent when S is empty.
  std::optional<double> nu;
  double nu_i = 0.0;
  double nu_j = 0.0;
  double nu_ij = 0.0;

  double rate = 0.0;
  double rate_i = 0.0;
  double rate_j = 0.0;
  double rate_ij = 0.0;

  IdSet t;     // T(S)
  IdSet t_i;   // T(S+i)
  IdSet t_j;   // T(S+j)
  IdSet t_ij;  // T(S+i+j)

  // Main case only.
  IdSet t_bar_ij;  // T_ij \ {i, j}
  IdSet t_bar_i;   // T_i \ {i}
  IdSet t_bar_j;   // T_j \ {j}
  IdSet t_hat_i;   // T_bar_i \ T_bar_ij
  IdSet t_hat;     // T \ T_bar_j

  // Checked relations. Ones that do not apply to the case stay true.
  bool level_chain = true;      // nu_ij <= nu_i, nu_j <= nu
  bool rate_chain = true;       // R_ij >= R_i >= R and R_ij >= R_j >= R
  bool pairwise_condition = true;  // R_i + R_j >= R + R_ij
  bool easy_case_equality = true;  // R_ij == R_j (or R_i), exactly
  bool decompositions_hold = true;
  bool ordering_chain = true;   // nu_ij <= N_m <= nu_i <= nu_j <= N_l <= nu
  bool sum_equality = true;
  bool count_equality = true;
  bool product_inequality = true;

  // Both sides of the sum identity and of the log of the product inequality.
  double sum_lhs = 0.0;
  double sum_rhs = 0.0;
  double log_product_lhs = 0.0;
  double log_product_rhs = 0.0;

  bool all_hold() const;
};

// Throws std::invalid_argument if i == j, either lies in base, any id is
// missing from the profile, base has repeats, or the budget is zero.
LemmaWitness lemma_witness(const NoiseProfile& profile,
                           std::span<const ChannelId> base, ChannelId i,
                           ChannelId j);

// True iff sum(a) == sum(b) (relative 1e-9) and every descending prefix sum
// of a is at least the matching one of b, less 1e-9. Throws on a length
// mismatch.
bool majorizes(std::span<const double> a, std::span<const double> b);

// sum g(a) >= sum g(b) - 1e-9. Majorization of b by a and convexity of g are
// the caller's responsibility.
bool karamata_holds(std::span<const double> a, std::span<const double> b,
                    const std::function<double(double)>& g);

// Direct form of the product inequality: prod(b) >= prod(a), relative 1e-9.
bool product_dominates(std::span<const double> b, std::span<const double> a);

struct MajorizationVectors {
  // a = [nu x|T|, N_m (m in T_hat_i) desc, nu_ij x|T_ij|]
  // b = [N_l (l in T_hat) desc, nu_j x|T_j|, nu_i x|T_i|]
  std::vector<double> a;
  std::vector<double> b;
  // Number of trailing entries of a below the b block; ascending, the b
  // entries all sit in [a_k, a_{k+1}].
  std::size_t split = 0;
  bool interlaced = false;
};

// Throws std::invalid_argument unless the witness is in the main case.
MajorizationVectors build_majorization_vectors(const LemmaWitness& w);

}  // namespace wfalloc

#endif  // WFALLOC_SUBMODULARITY_HPP_
