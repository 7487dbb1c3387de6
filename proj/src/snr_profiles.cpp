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

#include "wfalloc/snr_profiles.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wfalloc/errors.hpp"

namespace wfalloc {
namespace {

constexpr std::size_t kSubsetSize = 3;

// First three entries of a partial Fisher-Yates shuffle of 0..m-1.
std::vector<bool> pick_three(UniformSource& rng, std::size_t m) {
  std::vector<std::size_t> index(m);
  std::iota(index.begin(), index.end(), std::size_t{0});
  std::vector<bool> chosen(m, false);
  for (std::size_t k = 0; k < kSubsetSize; ++k) {
    const std::size_t r = k + static_cast<std::size_t>(rng.below(m - k));
    std::swap(index[k], index[r]);
    chosen[index[k]] = true;
  }
  return chosen;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) {
    --e;
  }
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(trim(std::string_view(line).substr(
        start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

ParseError parse_error(std::size_t line, const std::string& what) {
  return ParseError("line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::string_view to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::kIidUnit: return "iid-unit";
    case ProfileKind::kIidTen: return "iid-ten";
    case ProfileKind::kMixedHalf: return "mixed-half";
    case ProfileKind::kSparseStrong: return "sparse-strong";
    case ProfileKind::kCorrelated: return "correlated";
  }
  return "unknown";
}

std::optional<ProfileKind> parse_profile(std::string_view name) {
  for (ProfileKind k : {ProfileKind::kIidUnit, ProfileKind::kIidTen,
                        ProfileKind::kMixedHalf, ProfileKind::kSparseStrong,
                        ProfileKind::kCorrelated}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

double UniformSource::uniform(double lo, double hi) {
  const double unit =
      static_cast<double>(engine_() >> 11) * 0x1.0p-53;  // [0, 1)
  return lo + (hi - lo) * unit;
}

std::uint64_t UniformSource::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty integer range");
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

WeightMatrix generate(const ProfileSpec& spec) {
  const std::size_t n = spec.users;
  const std::size_t m = spec.basestations;
  if (n == 0 || m == 0) {
    throw std::invalid_argument("profile needs at least one user and one "
                                "basestation");
  }
  if ((spec.kind == ProfileKind::kSparseStrong ||
       spec.kind == ProfileKind::kCorrelated) &&
      m < kSubsetSize) {
    throw std::invalid_argument(std::string(to_string(spec.kind)) +
                                " profile needs at least 3 basestations");
  }

  UniformSource rng(spec.seed);
  std::vector<double> values;
  values.reserve(n * m);
  const std::size_t strong_users = (n + 1) / 2;
  for (std::size_t u = 0; u < n; ++u) {
    switch (spec.kind) {
      case ProfileKind::kIidUnit:
        for (std::size_t j = 0; j < m; ++j) values.push_back(rng.uniform(0, 1));
        break;
      case ProfileKind::kIidTen:
        for (std::size_t j = 0; j < m; ++j) values.push_back(rng.uniform(0, 10));
        break;
      case ProfileKind::kMixedHalf: {
        const double hi = u < strong_users ? 10.0 : 5.0;
        for (std::size_t j = 0; j < m; ++j) values.push_back(rng.uniform(0, hi));
        break;
      }
      case ProfileKind::kSparseStrong: {
        const auto chosen = pick_three(rng, m);
        for (std::size_t j = 0; j < m; ++j) {
          values.push_back(rng.uniform(0, chosen[j] ? 10.0 : 1.0));
        }
        break;
      }
      case ProfileKind::kCorrelated: {
        const double v = rng.uniform(0, 10);
        const auto chosen = pick_three(rng, m);
        for (std::size_t j = 0; j < m; ++j) {
          values.push_back(chosen[j] ? v : v / 2.0);
        }
        break;
      }
    }
  }
  return WeightMatrix(n, m, std::move(values));
}

void write_weight_csv(std::ostream& out, const WeightMatrix& w) {
  out << "user";
  for (std::size_t j = 0; j < w.basestations(); ++j) out << ",bs_" << j + 1;
  out << '\n';
  char buf[64];
  for (std::size_t u = 0; u < w.users(); ++u) {
    out << u + 1;
    for (double v : w.row(u)) {
      std::snprintf(buf, sizeof buf, ",%.17g", v);
      out << buf;
    }
    out << '\n';
  }
}

void write_weight_csv(const std::filesystem::path& path, const WeightMatrix& w) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_weight_csv(out, w);
  if (!out) throw IoError("failed writing " + path.string());
}

WeightMatrix read_weight_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t m = 0;
  bool have_header = false;
  std::vector<double> values;
  std::size_t users = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_cells(line);
    if (!have_header) {
      if (cells.size() < 2 || cells[0] != "user") {
        throw parse_error(line_no, "expected header user,bs_1,...,bs_m");
      }
      for (std::size_t j = 1; j < cells.size(); ++j) {
        if (cells[j] != "bs_" + std::to_string(j)) {
          throw parse_error(line_no, "header column " + std::to_string(j + 1) +
                                         " should be bs_" + std::to_string(j));
        }
      }
      m = cells.size() - 1;
      have_header = true;
      continue;
    }
    if (cells.size() != m + 1) {
      throw parse_error(line_no, "expected " + std::to_string(m + 1) +
                                     " cells, found " +
                                     std::to_string(cells.size()));
    }
    for (std::size_t c = 1; c < cells.size(); ++c) {
      const std::string& cell = cells[c];
      double v = 0.0;
      const auto [ptr, ec] =
          std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) {
        throw parse_error(line_no, "non-numeric cell '" + cell + "'");
      }
      if (!std::isfinite(v) || v < 0.0) {
        throw parse_error(line_no, "SNR must be finite and >= 0: '" + cell + "'");
      }
      values.push_back(v);
    }
    ++users;
  }
  if (in.bad()) throw IoError("read error");
  if (users == 0) throw ParseError("no users");
  return WeightMatrix(users, m, std::move(values));
}

WeightMatrix replay_from_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_weight_csv(in);
}

}  // namespace wfalloc
